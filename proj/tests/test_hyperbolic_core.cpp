#include <doctest.h>

#include "surfemb/hyperbolic_core.hpp"
#include "surfemb/rng.hpp"

#include <cmath>
#include <set>

using namespace surfemb;
using namespace surfemb::hyp;

namespace {

HPoint random_point(Rng& rng, double radius = 1.5) {
    double r = rng.uniform(0, radius);
    double th = rng.uniform(0, 2 * M_PI);
    return normalize_to_sheet({std::cosh(r), std::sinh(r) * std::cos(th),
                               std::sinh(r) * std::sin(th)});
}

HIsometry random_isometry(Rng& rng) {
    auto r1 = HIsometry::rotation(rng.uniform(0, 2 * M_PI));
    auto b = HIsometry::boost_x(rng.uniform(-1.0, 1.0));
    auto r2 = HIsometry::rotation(rng.uniform(0, 2 * M_PI));
    return r1.compose(b.compose(r2));
}

// Random disk triangulation: regular k-gon boundary, one stellation of the
// polygon, then random face stellations to the target vertex count.
maps::DiskMap random_disk_triangulation(int boundary_count, int target_vertices, Rng& rng) {
    std::vector<std::vector<int>> lists(boundary_count);
    for (int i = 0; i < boundary_count; ++i)
        lists[i] = {(i + boundary_count - 1) % boundary_count, (i + 1) % boundary_count};
    auto m = maps::map_from_rotations(lists);
    auto fs = maps::faces(m);
    maps::DiskMap disk{m, fs[0]};
    disk = maps::triangulate_disk(disk);
    while (disk.map.num_vertices() < target_vertices) {
        auto faces_now = maps::faces(disk.map);
        std::set<int> outer(disk.outer.begin(), disk.outer.end());
        std::vector<std::vector<int>> interior;
        for (auto& f : faces_now)
            if (!outer.count(f[0])) interior.push_back(f);
        auto& pick = interior[rng.below(interior.size())];
        maps::stellate_face(disk.map, pick);
    }
    return disk;
}

BoundaryAssignment boundary_on_hexagon(const Hexagon& hex, const maps::DiskMap& disk,
                                       Rng* weight_rng = nullptr, double phase = 0.0) {
    auto boundary = disk.boundary_vertices();
    BoundaryAssignment asg;
    asg.fixed.resize(disk.map.rotation.size());
    int k = static_cast<int>(boundary.size());
    for (int i = 0; i < k; ++i) {
        double u = std::fmod(6.0 * i / k + phase, 6.0);
        int side = static_cast<int>(u);
        asg.fixed[boundary[i]] = hex.side_point(side, u - side);
    }
    asg.weights.assign(disk.map.edge_sign.size(), 1.0);
    if (weight_rng)
        for (auto& w : asg.weights) w = weight_rng->uniform(0.5, 2.0);
    return asg;
}

}  // namespace

TEST_CASE("hyperboloid primitives") {
    HPoint origin{1, 0, 0};
    HPoint p = normalize_to_sheet({std::cosh(1.0), std::sinh(1.0), 0});
    CHECK(h_distance(origin, p) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(h_distance(p, p) == 0.0);

    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        HPoint x = random_point(rng), y = random_point(rng);
        HPoint back = exp_map(x, log_map(x, y));
        CHECK(h_distance(back, y) < 1e-10);
    }
    // exp/log consistency with distances
    for (int i = 0; i < 100; ++i) {
        HPoint x = random_point(rng), y = random_point(rng);
        CHECK(tangent_norm(log_map(x, y)) == doctest::Approx(h_distance(x, y)).epsilon(1e-10));
    }
}

TEST_CASE("segments_intersect basics") {
    HPoint origin{1, 0, 0};
    auto pt = [&](double r, double th) {
        return normalize_to_sheet(
            HPoint{std::cosh(r), std::sinh(r) * std::cos(th), std::sinh(r) * std::sin(th)});
    };
    // Perpendicular diameters cross at the origin.
    HSegment s1{pt(1, 0), pt(1, M_PI)};
    HSegment s2{pt(1, M_PI / 2), pt(1, -M_PI / 2)};
    auto r = segments_intersect(s1, s2);
    REQUIRE(r.kind == IntersectKind::Point);
    CHECK(h_distance(r.point, origin) < 1e-9);

    // Disjoint short segments far apart.
    HSegment s3{pt(2, 0.1), pt(2, 0.2)};
    HSegment s4{pt(2, 2.1), pt(2, 2.2)};
    CHECK(segments_intersect(s3, s4).kind == IntersectKind::None);

    // Collinear overlap.
    HSegment s5{pt(1.0, 0), pt(0.2, 0)};
    HSegment s6{pt(0.6, 0), pt(0.5, M_PI)};
    CHECK(segments_intersect(s5, s6).kind == IntersectKind::Overlap);
}

TEST_CASE("property: geodesic segments cross at most once") {
    Rng rng(17);
    for (int trial = 0; trial < 10000; ++trial) {
        HSegment s1{random_point(rng), random_point(rng)};
        HSegment s2{random_point(rng), random_point(rng)};
        auto r = segments_intersect(s1, s2);
        // Oracle: sample the sign of the plane function of s2 along s1; at
        // most one sign change can occur, and the analytic result must agree.
        auto plane = [&](const HSegment& s, const HPoint& p) {
            const auto& a = s.a.c;
            const auto& b = s.b.c;
            double nx = a[1] * b[2] - a[2] * b[1];
            double ny = a[2] * b[0] - a[0] * b[2];
            double nz = a[0] * b[1] - a[1] * b[0];
            return nx * p.c[0] + ny * p.c[1] + nz * p.c[2];
        };
        int sign_changes = 0;
        double prev = plane(s2, geodesic_point(s1.a, s1.b, 0.0));
        for (int i = 1; i <= 64; ++i) {
            double cur = plane(s2, geodesic_point(s1.a, s1.b, i / 64.0));
            if (prev != 0 && cur != 0 && (prev > 0) != (cur > 0)) ++sign_changes;
            if (cur != 0) prev = cur;
        }
        CHECK(sign_changes <= 1);
        if (r.kind == IntersectKind::Point) {
            // the reported point lies on both chords' planes
            CHECK(std::abs(plane(s1, r.point)) < 1e-9);
            CHECK(std::abs(plane(s2, r.point)) < 1e-9);
        }
    }
}

TEST_CASE("regular right-angled hexagon invariants") {
    auto hex = regular_right_angled_hexagon();

    // Oracle: bisection on the circumradius making the vertex angle pi/2.
    auto vertex_angle = [](double R) {
        double sr = std::sinh(R), cr = std::cosh(R);
        HPoint v0 = normalize_to_sheet({cr, sr, 0});
        HPoint v1 = normalize_to_sheet({cr, sr * std::cos(M_PI / 3), sr * std::sin(M_PI / 3)});
        HPoint v5 = normalize_to_sheet({cr, sr * std::cos(-M_PI / 3), sr * std::sin(-M_PI / 3)});
        return angle_at(v0, v1, v5);
    };
    double lo = 0.5, hi = 2.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (vertex_angle(mid) > M_PI / 2)
            lo = mid;
        else
            hi = mid;
    }
    double oracle_R = 0.5 * (lo + hi);
    CHECK(hex.circumradius == doctest::Approx(oracle_R).epsilon(1e-9));
    double oracle_side = h_distance(
        normalize_to_sheet({std::cosh(oracle_R), std::sinh(oracle_R), 0}),
        normalize_to_sheet({std::cosh(oracle_R), std::sinh(oracle_R) * std::cos(M_PI / 3),
                            std::sinh(oracle_R) * std::sin(M_PI / 3)}));

    // side length: all six equal, matching the closed form and the oracle
    CHECK(hex.side_length == doctest::Approx(1.3169579).epsilon(1e-6));
    CHECK(hex.side_length == doctest::Approx(oracle_side).epsilon(1e-9));
    double smin = 1e300, smax = 0;
    for (int k = 0; k < 6; ++k) {
        double s = h_distance(hex.vertices[k], hex.vertices[(k + 1) % 6]);
        smin = std::min(smin, s);
        smax = std::max(smax, s);
        CHECK(s == doctest::Approx(hex.side_length).epsilon(1e-12));
    }
    CHECK(smax - smin < 1e-9);

    // all angles pi/2
    for (int k = 0; k < 6; ++k) {
        double a = angle_at(hex.vertices[k], hex.vertices[(k + 1) % 6], hex.vertices[(k + 5) % 6]);
        CHECK(std::abs(a - M_PI / 2) < 1e-9);
    }

    // area pi via triangulation from the center and angle defect
    HPoint center{1, 0, 0};
    double area = 0;
    for (int k = 0; k < 6; ++k) {
        const HPoint& u = hex.vertices[k];
        const HPoint& v = hex.vertices[(k + 1) % 6];
        double s = angle_at(center, u, v) + angle_at(u, v, center) + angle_at(v, center, u);
        area += M_PI - s;
    }
    CHECK(std::abs(area - M_PI) < 1e-6);
}

TEST_CASE("check_dividing_edges") {
    std::vector<int> cycle{0, 1, 2, 3, 4, 5};
    CHECK(check_dividing_edges({{0, 1}, {1, 2}}, cycle).empty());
    auto bad = check_dividing_edges({{0, 3}}, cycle);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0] == std::pair<int, int>{0, 3});
    // subdivided chord: interior vertex 6 is not on the boundary
    CHECK(check_dividing_edges({{0, 6}, {6, 3}}, cycle).empty());
}

TEST_CASE("tutte: symmetric 3-star fixes the center") {
    auto hex = regular_right_angled_hexagon();
    // triangle boundary + one interior vertex joined to all three corners
    auto m = maps::map_from_oriented_faces(4, {{0, 1, 3}, {1, 2, 3}, {2, 0, 3}, {0, 2, 1}});
    // outer face = the walk visiting only 0,1,2
    maps::DiskMap disk{m, {}};
    for (auto& f : maps::faces(m)) {
        bool has_center = false;
        for (int d : f) has_center |= m.origin[d] == 3;
        if (!has_center) disk.outer = f;
    }
    REQUIRE(!disk.outer.empty());
    BoundaryAssignment asg;
    asg.fixed.resize(4);
    // three-fold symmetric boundary points
    auto boundary = disk.boundary_vertices();
    for (int i = 0; i < 3; ++i) {
        double th = 2 * M_PI * i / 3;
        double r = 0.9;
        asg.fixed[boundary[i]] =
            normalize_to_sheet({std::cosh(r), std::sinh(r) * std::cos(th),
                                std::sinh(r) * std::sin(th)});
    }
    asg.weights.assign(m.edge_sign.size(), 1.0);
    // fixed points are not on the hexagon boundary here, so bypass that check
    // by using a hexagon through radius 0.9? No: place them on the hexagon.
    for (int i = 0; i < 3; ++i) {
        double u = 2.0 * i;
        asg.fixed[boundary[i]] = hex.side_point(static_cast<int>(u), u - static_cast<int>(u));
    }
    // hexagon side points at parameters 0, 2, 4 are vertices 0, 2, 4: 3-fold symmetric
    auto res = tutte_embed(hex, disk, asg, 1e-12, 100000);
    CHECK(res.diag.converged);
    CHECK(h_distance(res.positions[3], HPoint{1, 0, 0}) < 1e-9);
    CHECK(res.diag.certificate());
    // boundary returned bit-identical
    for (int i = 0; i < 3; ++i) {
        for (int c = 0; c < 3; ++c)
            CHECK(res.positions[boundary[i]].c[c] == asg.fixed[boundary[i]]->c[c]);
    }
}

TEST_CASE("tutte: stellated hexagon converges with monotone energy") {
    auto hex = regular_right_angled_hexagon();
    Rng rng(7);
    auto disk = random_disk_triangulation(6, 7, rng);
    auto asg = boundary_on_hexagon(hex, disk);
    auto res = tutte_embed(hex, disk, asg, 1e-9, 100000);
    CHECK(res.diag.converged);
    CHECK(res.diag.certificate());
    for (size_t i = 1; i < res.diag.energy_history.size(); ++i)
        CHECK(res.diag.energy_history[i] <=
              res.diag.energy_history[i - 1] + 1e-12 * (1 + res.diag.energy_history[i - 1]));
}

TEST_CASE("tutte: random disks, gradient oracle by finite differences") {
    auto hex = regular_right_angled_hexagon();
    Rng rng(23);
    for (int trial = 0; trial < 6; ++trial) {
        auto disk = random_disk_triangulation(6 + static_cast<int>(rng.below(5)),
                                              20 + static_cast<int>(rng.below(30)), rng);
        auto asg = boundary_on_hexagon(hex, disk, &rng);
        auto res = tutte_embed(hex, disk, asg, 1e-8, 200000);
        CHECK(res.diag.converged);
        CHECK(res.diag.certificate());
        CHECK(res.diag.max_gradient < 1e-7);

        // Finite-difference oracle: the energy derivative along random tangent
        // directions at free vertices matches -2 * sum c log.
        auto boundary = disk.boundary_vertices();
        std::set<int> bset(boundary.begin(), boundary.end());
        int checked = 0;
        for (int v : disk.map.alive_vertices()) {
            if (bset.count(v) || checked >= 3) continue;
            ++checked;
            HTangent grad;
            for (int dart : disk.map.rotation[v]) {
                auto l = log_map(res.positions[v], res.positions[disk.map.head(dart)]);
                double c = asg.weights[disk.map.edge_of(dart)];
                for (int i = 0; i < 3; ++i) grad.c[i] += -2 * c * l.c[i];
            }
            double th = rng.uniform(0, 2 * M_PI);
            // random unit tangent via the frame trick: perturb along exp
            HTangent dir;
            {
                HPoint x = res.positions[v];
                // build tangent from angle th in an orthonormal frame
                HTangent e1, e2;
                auto project = [&](std::array<double, 3> w) {
                    double ip = w[0] * x.c[0] - w[1] * x.c[1] - w[2] * x.c[2];
                    HTangent t;
                    for (int i = 0; i < 3; ++i) t.c[i] = w[i] - ip * x.c[i];
                    return t;
                };
                e1 = project({0, 1, 0});
                double n1 = tangent_norm(e1);
                for (auto& c : e1.c) c /= n1;
                e2 = project({x.c[1] * e1.c[2] - x.c[2] * e1.c[1],
                              x.c[2] * e1.c[0] - x.c[0] * e1.c[2],
                              x.c[0] * e1.c[1] - x.c[1] * e1.c[0]});
                double ip12 = e2.c[1] * e1.c[1] + e2.c[2] * e1.c[2] - e2.c[0] * e1.c[0];
                for (int i = 0; i < 3; ++i) e2.c[i] -= ip12 * e1.c[i];
                double n2 = tangent_norm(e2);
                for (auto& c : e2.c) c /= n2;
                for (int i = 0; i < 3; ++i)
                    dir.c[i] = std::cos(th) * e1.c[i] + std::sin(th) * e2.c[i];
            }
            const double h = 1e-5;
            auto energy_at = [&](double t) {
                auto pos = res.positions;
                HTangent step = dir;
                for (auto& c : step.c) c *= t;
                pos[v] = exp_map(res.positions[v], step);
                return spring_energy(disk.map, asg.weights, pos);
            };
            double fd = (energy_at(h) - energy_at(-h)) / (2 * h);
            double an = dir.c[1] * grad.c[1] + dir.c[2] * grad.c[2] - dir.c[0] * grad.c[0];
            CHECK(std::abs(fd - an) <= 1e-5 * (1 + std::abs(an)));
        }
    }
}

TEST_CASE("tutte: model invariance under isometries") {
    auto hex = regular_right_angled_hexagon();
    Rng rng(31);
    auto disk = random_disk_triangulation(6, 15, rng);
    auto asg = boundary_on_hexagon(hex, disk, &rng);
    auto res = tutte_embed(hex, disk, asg, 1e-9, 200000);
    REQUIRE(res.diag.converged);

    // Re-solve on an isometric copy of the hexagon with transformed fixed
    // points; the output must be the conjugated configuration.
    auto iso = random_isometry(rng);
    Hexagon hex2 = hex;
    for (auto& v : hex2.vertices) v = iso.apply(v);
    auto asg2 = asg;
    for (auto& f : asg2.fixed)
        if (f) f = iso.apply(*f);
    auto res2 = tutte_embed(hex2, disk, asg2, 1e-9, 200000);
    REQUIRE(res2.diag.converged);
    for (int v : disk.map.alive_vertices())
        CHECK(h_distance(res2.positions[v], iso.apply(res.positions[v])) < 1e-8);
    CHECK(spring_energy(disk.map, asg.weights, res2.positions) ==
          doctest::Approx(res.diag.final_energy).epsilon(1e-9));
}

TEST_CASE("tutte precondition errors") {
    auto hex = regular_right_angled_hexagon();
    Rng rng(37);
    auto disk = random_disk_triangulation(6, 8, rng);
    auto asg = boundary_on_hexagon(hex, disk);
    // off-boundary fixed point
    auto bad = asg;
    bad.fixed[disk.boundary_vertices()[0]] = HPoint{std::cosh(0.2), std::sinh(0.2), 0};
    CHECK_THROWS(tutte_embed(hex, disk, bad, 1e-8, 1000));
    // nonpositive weight
    auto bad2 = asg;
    bad2.weights[0] = 0;
    CHECK_THROWS(tutte_embed(hex, disk, bad2, 1e-8, 1000));
    // free boundary vertex
    auto bad3 = asg;
    bad3.fixed[disk.boundary_vertices()[0]].reset();
    CHECK_THROWS(tutte_embed(hex, disk, bad3, 1e-8, 1000));
}

TEST_CASE("poincare svg renders hexagon and arcs") {
    auto hex = regular_right_angled_hexagon();
    std::vector<HSegment> segs{{hex.vertices[0], hex.vertices[3]}};
    auto svg = hyperbolic_svg(hex, segs, {"0", "1", "2", "3", "4", "5"});
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("stroke=\"green\"") != std::string::npos);
    CHECK(svg == hyperbolic_svg(hex, segs, {"0", "1", "2", "3", "4", "5"}));
}
