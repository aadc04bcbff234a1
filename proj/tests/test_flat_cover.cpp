#include <doctest.h>

#include "surfemb/flat_cover.hpp"
#include "surfemb/rng.hpp"

#include <cmath>
#include <set>

using namespace surfemb;
using namespace surfemb::flat;

namespace {

FlatSurface unit_torus() { return make_surface(SurfaceKind::torus, 1, Length::rational(1)); }
FlatSurface unit_klein() { return make_surface(SurfaceKind::klein, 1, Length::rational(1)); }
FlatSurface paper_klein() {
    return make_surface(SurfaceKind::klein, 1, Length::radical(Rational(4, 3), Rational(1, 100)));
}

// Brute-force lift enumeration oracle over a fixed integer grid, independent
// of the window logic under test.
std::vector<std::pair<DeckElement, std::pair<double, double>>> grid_orbit(
    const SurfacePoint& p, const FlatSurface& s, long long extent) {
    std::vector<std::pair<DeckElement, std::pair<double, double>>> out;
    for (long long m = -extent; m <= extent; ++m) {
        for (long long n = -extent; n <= extent; ++n) {
            DeckElement g{m, n};
            PlanePoint q = apply_deck(g, p.rep, s);
            out.push_back({g, {q.x.eval(s), q.y.eval(s)}});
        }
    }
    return out;
}

double oracle_distance(const SurfacePoint& p, const SurfacePoint& q, const FlatSurface& s,
                       long long extent = 6) {
    double qx = q.rep.x.eval(s), qy = q.rep.y.eval(s);
    double best = 1e99;
    for (auto& [g, xy] : grid_orbit(p, s, extent))
        best = std::min(best, std::hypot(xy.first - qx, xy.second - qy));
    return best;
}

SurfacePoint random_point(Rng& rng, const FlatSurface& s) {
    Rational xr(rng.range(0, 9999), 10000);
    Rational yr(rng.range(0, 9999), 10000);
    return surface_point(s, xr * s.a, 0, 0, yr);  // y = fraction of b via s-component
}

}  // namespace

TEST_CASE("make_surface validates side lengths") {
    CHECK_THROWS(make_surface(SurfaceKind::torus, 0, Length::rational(1)));
    CHECK_THROWS(make_surface(SurfaceKind::torus, 1, Length::rational(-1)));
    FlatSurface k = paper_klein();
    CHECK(k.b_num == doctest::Approx(std::sqrt(4.0 / 3.0) + 0.01));
}

TEST_CASE("apply_deck: translation, glide, identity") {
    FlatSurface t = unit_torus();
    PlanePoint p = plane_point(Rational(1, 5), 0, Rational(3, 10), 0);
    PlanePoint q = apply_deck({1, 0}, p, t);
    CHECK(q.x.r == Rational(6, 5));
    CHECK(q.y.r == Rational(3, 10));

    FlatSurface k = unit_klein();
    // Glide formula (x+1, b-y): the y coordinate lives in the s-component.
    PlanePoint r = apply_deck({1, 0}, plane_point(0, 0, 0, Rational(1, 4)), k);
    CHECK(r.x.r == 1);
    CHECK(r.y.s == Rational(3, 4));

    CHECK(apply_deck({0, 0}, p, t) == p);
}

TEST_CASE("deck composition and inverse respect the group law") {
    Rng rng(7);
    for (const FlatSurface& s : {unit_torus(), unit_klein()}) {
        for (int trial = 0; trial < 200; ++trial) {
            DeckElement g{rng.range(-3, 3), rng.range(-3, 3)};
            DeckElement h{rng.range(-3, 3), rng.range(-3, 3)};
            PlanePoint p = plane_point(Rational(rng.range(-10, 10), 7), 0, 0,
                                       Rational(rng.range(-10, 10), 7));
            PlanePoint seq = apply_deck(g, apply_deck(h, p, s), s);
            PlanePoint composed = apply_deck(compose_deck(g, h, s), p, s);
            CHECK(seq == composed);
            DeckElement gi = inverse_deck(g, s);
            CHECK(apply_deck(gi, apply_deck(g, p, s), s) == p);
        }
    }
}

TEST_CASE("lifts_in_window matches grid enumeration oracle") {
    FlatSurface t = unit_torus();
    SurfacePoint origin = surface_point(t, 0, 0, 0, 0);

    // radius 1.1 around (0,0): oracle = integer pairs with m^2+n^2 <= 1.21.
    std::set<std::pair<long long, long long>> expect;
    for (auto& [g, xy] : grid_orbit(origin, t, 3))
        if (std::hypot(xy.first, xy.second) <= 1.1) expect.insert({g.m, g.n});
    CHECK(expect.size() == 5);

    LiftSet ls = lifts_in_window(origin, plane_point(0, 0, 0, 0), 1.1, t);
    std::set<std::pair<long long, long long>> got;
    for (auto& l : ls.elements) got.insert({l.g.m, l.g.n});
    CHECK(got == expect);

    // radius 0 with center on the orbit
    LiftSet single = lifts_in_window(origin, plane_point(2, 0, 3, 0), 0.0, t);
    REQUIRE(single.elements.size() == 1);
    CHECK(single.elements[0].g == DeckElement{2, 3});
}

TEST_CASE("lifts_in_window on the Klein bottle finds the glide image") {
    FlatSurface k = unit_klein();
    SurfacePoint p = surface_point(k, 0, 0, 0, Rational(1, 4));
    LiftSet ls = lifts_in_window(p, plane_point(1, 0, 0, Rational(3, 4)), 0.01, k);
    REQUIRE(ls.elements.size() == 1);
    CHECK(ls.elements[0].g == DeckElement{1, 0});
}

TEST_CASE("distance on the unit torus") {
    FlatSurface t = unit_torus();
    auto d1 = distance(surface_point(t, 0, 0, 0, 0), surface_point(t, Rational(1, 4), 0, 0, 0), t);
    CHECK(d1.length == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(d1.minimizing_lifts == 1);

    auto d2 = distance(surface_point(t, 0, 0, 0, 0),
                       surface_point(t, Rational(1, 2), 0, Rational(1, 2), 0), t);
    CHECK(d2.length == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-12));
    CHECK(d2.minimizing_lifts == 4);
}

TEST_CASE("distance on the paper Klein metric: the horizontal path wins") {
    FlatSurface k = paper_klein();
    // p = (0, 3b/4), q = (1/3, b/4)
    SurfacePoint p = surface_point(k, 0, 0, 0, Rational(3, 4));
    SurfacePoint q = surface_point(k, Rational(1, 3), 0, 0, Rational(1, 4));
    auto d = distance(p, q, k);
    CHECK(d.length == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(d.minimizing_lifts == 1);
    CHECK(d.best == DeckElement{1, 0});
    // Realized through the glide lift at (1, b/4).
    PlanePoint lift = apply_deck(d.best, p.rep, k);
    CHECK(lift.x.eval(k) == doctest::Approx(1.0));
    CHECK(lift.y.eval(k) == doctest::Approx(k.b_num / 4));
    CHECK(d.length == doctest::Approx(oracle_distance(p, q, k)));
}

TEST_CASE("is_unique_shortest_lift verdicts") {
    FlatSurface t = unit_torus();
    SurfacePoint o = surface_point(t, 0, 0, 0, 0);
    CHECK(is_unique_shortest_lift(o, {0, 0}, surface_point(t, Rational(1, 4), 0, 0, 0), t, 1e-9) ==
          LiftVerdict::Unique);
    CHECK(is_unique_shortest_lift(o, {0, 0}, surface_point(t, Rational(1, 2), 0, 0, 0), t, 1e-9) ==
          LiftVerdict::Tie);

    FlatSurface k = unit_klein();
    SurfacePoint q = surface_point(k, Rational(5, 8), 0, Rational(1, 4), 0);
    // Oracle: squared distances 29/64 for the identity lift vs 13/64 for the
    // lift landing at (1, 0).
    SurfacePoint p = surface_point(k, 0, 0, 0, 0);
    double id_dist = std::hypot(5.0 / 8, 1.0 / 4);
    CHECK(id_dist * id_dist == doctest::Approx(29.0 / 64));
    CHECK(is_unique_shortest_lift(p, {0, 0}, q, k, 1e-9) == LiftVerdict::NotShortest);
    double glide_dist = oracle_distance(p, q, k);
    CHECK(glide_dist * glide_dist == doctest::Approx(13.0 / 64));
}

TEST_CASE("classify_deck_element on the Klein bottle") {
    FlatSurface k = unit_klein();
    CHECK_FALSE(classify_deck_element({1, 0}, k).two_sided);
    CHECK_FALSE(classify_deck_element({0, 1}, k).z2_trivial);
    CHECK(classify_deck_element({0, 2}, k).z_trivial);
    auto rec = classify_deck_element({2, 0}, k);
    CHECK(rec.two_sided);
    CHECK(rec.z2_trivial);
    CHECK_FALSE(rec.z_trivial);
    CHECK(rec.horizontal_displacement == doctest::Approx(2.0));
}

TEST_CASE("property: metric axioms on sampled triples") {
    Rng rng(11);
    for (const FlatSurface& s : {unit_torus(), paper_klein()}) {
        for (int trial = 0; trial < 60; ++trial) {
            SurfacePoint x = random_point(rng, s);
            SurfacePoint y = random_point(rng, s);
            SurfacePoint z = random_point(rng, s);
            double dxy = distance(x, y, s).length;
            double dyx = distance(y, x, s).length;
            CHECK(dxy == dyx);  // exact symmetry
            double dxz = distance(x, z, s).length;
            double dzy = distance(z, y, s).length;
            CHECK(dxy <= dxz + dzy + 1e-12);
        }
    }
}

TEST_CASE("property: deck invariance of distance") {
    Rng rng(13);
    for (const FlatSurface& s : {unit_torus(), paper_klein()}) {
        for (int trial = 0; trial < 60; ++trial) {
            SurfacePoint p = random_point(rng, s);
            SurfacePoint q = random_point(rng, s);
            DeckElement g{rng.range(-3, 3), rng.range(-3, 3)};
            SurfacePoint p2 = project(apply_deck(g, p.rep, s), s);
            CHECK(distance(p, q, s).length == doctest::Approx(distance(p2, q, s).length).epsilon(1e-12));
        }
    }
}

TEST_CASE("property: window sufficiency (radius r agrees with 2r)") {
    Rng rng(17);
    for (const FlatSurface& s : {unit_torus(), paper_klein()}) {
        for (int trial = 0; trial < 60; ++trial) {
            SurfacePoint p = random_point(rng, s);
            SurfacePoint q = random_point(rng, s);
            double direct = std::hypot(p.rep.x.eval(s) - q.rep.x.eval(s),
                                       p.rep.y.eval(s) - q.rep.y.eval(s));
            double r = direct + s.a_num + s.b_num;
            CHECK(distance_with_radius(p, q, s, r).length ==
                  distance_with_radius(p, q, s, 2 * r).length);
        }
    }
}

TEST_CASE("property: Unique verdict matches distance with count one") {
    Rng rng(19);
    for (const FlatSurface& s : {unit_torus(), paper_klein()}) {
        for (int trial = 0; trial < 80; ++trial) {
            SurfacePoint p = random_point(rng, s);
            SurfacePoint q = random_point(rng, s);
            auto d = distance(p, q, s);
            if (is_unique_shortest_lift(p, d.best, q, s, 1e-9) == LiftVerdict::Unique) {
                PlanePoint lift = apply_deck(d.best, p.rep, s);
                double len = std::hypot(lift.x.eval(s) - q.rep.x.eval(s),
                                        lift.y.eval(s) - q.rep.y.eval(s));
                CHECK(len == doctest::Approx(d.length).epsilon(1e-12));
                CHECK(d.minimizing_lifts == 1);
            }
        }
    }
}

TEST_CASE("property: classification respects composition parity") {
    FlatSurface k = unit_klein();
    Rng rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        DeckElement g{rng.range(-4, 4), rng.range(-4, 4)};
        DeckElement h{rng.range(-4, 4), rng.range(-4, 4)};
        DeckElement gh = compose_deck(g, h, k);
        auto cg = classify_deck_element(g, k);
        auto ch = classify_deck_element(h, k);
        auto cgh = classify_deck_element(gh, k);
        // Sidedness and Z2 class are parity homomorphisms.
        CHECK(cgh.two_sided == (cg.two_sided == ch.two_sided));
        bool gm2 = g.m % 2 != 0, gn2 = g.n % 2 != 0;
        bool hm2 = h.m % 2 != 0, hn2 = h.n % 2 != 0;
        CHECK(cgh.z2_trivial == ((gm2 != hm2) == false && (gn2 != hn2) == false));
    }
}
