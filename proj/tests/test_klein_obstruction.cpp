#include <doctest.h>

#include "surfemb/klein_obstruction.hpp"
#include "surfemb/rng.hpp"

#include <cmath>

using namespace surfemb;
using namespace surfemb::klein;
using surfemb::flat::DeckElement;
using surfemb::flat::Length;

TEST_CASE("horizontal_extent_bound values") {
    // (1,1) -> 5/8
    QuadExt b11 = horizontal_extent_bound(1, Length::rational(1));
    CHECK(b11.q == 0);
    CHECK(b11.p == Rational(5, 8));

    // (1, sqrt(4/3)) -> 2/3, the exact threshold: 3 * 2/3 = 2
    QuadExt bthr = horizontal_extent_bound(1, Length::radical(Rational(4, 3), 0));
    CHECK(bthr.q == 0);
    CHECK(bthr.p == Rational(2, 3));

    // (2,1) -> 17/16 by the formula a/2 + b^2/(8a)
    QuadExt b21 = horizontal_extent_bound(2, Length::rational(1));
    CHECK(b21.p == Rational(17, 16));

    CHECK_THROWS(horizontal_extent_bound(Rational(0), Length::rational(1)));
}

TEST_CASE("required_displacement mirrors the case analysis") {
    auto k = flat::make_surface(flat::SurfaceKind::klein, 1, Length::rational(1));
    auto ok = required_displacement(DeckElement{2, 0}, 1, k);
    CHECK(ok.ok);
    CHECK(ok.displacement.p == 2);

    auto one_sided = required_displacement(DeckElement{1, 0}, 1, k);
    CHECK_FALSE(one_sided.ok);
    CHECK(one_sided.failed_test == "not-two-sided");

    auto z2bad = required_displacement(DeckElement{0, 1}, 1, k);
    CHECK_FALSE(z2bad.ok);
    CHECK(z2bad.failed_test == "z2-nontrivial");

    auto ztrivial = required_displacement(DeckElement{0, 2}, 1, k);
    CHECK_FALSE(ztrivial.ok);
    CHECK(ztrivial.failed_test == "z-trivial");
}

TEST_CASE("certify_obstruction reproduces the 15/8 contradiction") {
    auto rep = certify_obstruction(3, 1, Length::rational(1));
    CHECK(rep.verdict == ObstructionVerdict::Obstructed);
    CHECK(rep.exact);
    CHECK(rep.total_bound.p == Rational(15, 8));
    CHECK(rep.total_bound.q == 0);
    CHECK(rep.required.p == 2);

    // k=3 on the paper metric: no obstruction (consistent with the catalog entry existing)
    auto good = certify_obstruction(3, 1, Length::radical(Rational(4, 3), Rational(1, 100)));
    CHECK(good.verdict == ObstructionVerdict::NoObstruction);

    // k=4 on the unit square: 4 * 5/8 = 5/2 >= 2
    auto k4 = certify_obstruction(4, 1, Length::rational(1));
    CHECK(k4.verdict == ObstructionVerdict::NoObstruction);
    CHECK(k4.total_bound.p == Rational(5, 2));

    CHECK_THROWS(certify_obstruction(2, 1, Length::rational(1)));
}

TEST_CASE("threshold exactness: verdict flips at b = sqrt(4/3)") {
    double lo = 1.0, hi = 1.3;
    REQUIRE(certify_obstruction_numeric(3, 1.0, lo) == ObstructionVerdict::Obstructed);
    REQUIRE(certify_obstruction_numeric(3, 1.0, hi) == ObstructionVerdict::NoObstruction);
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        if (certify_obstruction_numeric(3, 1.0, mid) == ObstructionVerdict::Obstructed)
            lo = mid;
        else
            hi = mid;
    }
    CHECK(std::abs(lo - std::sqrt(4.0 / 3.0)) < 1e-9);

    // And the exact path decides the boundary case itself: at b = sqrt(4/3)
    // the inequality is not strict, so there is no obstruction.
    auto boundary = certify_obstruction(3, 1, Length::radical(Rational(4, 3), 0));
    CHECK(boundary.verdict == ObstructionVerdict::NoObstruction);
}

TEST_CASE("empirical tightness: sampled unique shortest edges stay under 5/8") {
    auto k = flat::make_surface(flat::SurfaceKind::klein, 1, Length::rational(1));
    Rng rng(101);
    int checked = 0;
    for (int trial = 0; trial < 100000; ++trial) {
        Rational px(rng.range(0, 999), 1000), py(rng.range(0, 999), 1000);
        Rational qx(rng.range(0, 999), 1000), qy(rng.range(0, 999), 1000);
        auto p = flat::surface_point(k, px, 0, qy, 0);
        auto q = flat::surface_point(k, qx, 0, py, 0);
        auto d = flat::distance(p, q, k);
        if (flat::is_unique_shortest_lift(p, d.best, q, k, 1e-9) != flat::LiftVerdict::Unique)
            continue;
        ++checked;
        auto lift = flat::apply_deck(d.best, p.rep, k);
        double hextent = std::abs(lift.x.eval(k) - q.rep.x.eval(k));
        CHECK(hextent < 5.0 / 8.0);
    }
    CHECK(checked > 50000);
}

TEST_CASE("report rendering") {
    auto rep = certify_obstruction(3, 1, Length::rational(1));
    auto text = rep.to_text();
    CHECK(text.find("15/8") != std::string::npos);
    CHECK(text.find("Obstructed") != std::string::npos);
    auto st = rep.to_structured();
    CHECK(st.find("surfemb-report v1") == 0);
    CHECK(st.find("verdict Obstructed") != std::string::npos);
}
