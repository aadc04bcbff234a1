#include <doctest.h>

#include "surfemb/hex_pipeline.hpp"

#include <cmath>
#include <map>
#include <set>

using namespace surfemb;
using namespace surfemb::hexp;

TEST_CASE("canonical hex decomposition counts and involutions") {
    for (int g = 2; g <= 6; ++g) {
        auto c = canonical_hex_decomposition(g);
        CHECK(c.num_hexagons() == 4 * g - 4);
        CHECK(static_cast<int>(c.pairings.size()) == 12 * g - 12);
        CHECK(c.vertex_count == 6 * g - 6);
        CHECK(c.euler_characteristic() == 2 - 2 * g);
        // sigma2 is the front/back swap and an involution
        for (int h = 0; h < c.num_hexagons(); ++h) {
            CHECK(c.sigma2[c.sigma2[h]] == h);
            CHECK(c.sigma2[h] != h);
            CHECK(c.sigma1[c.sigma1[h]] == h);
        }
    }
    CHECK_THROWS(canonical_hex_decomposition(1));
}

TEST_CASE("hexgraph round-trip and validation") {
    auto g = test_family(2);
    auto c = canonical_hex_decomposition(2);
    auto text = hexgraph_to_text(g);
    auto parsed = hexgraph_from_text(text);
    CHECK(hexgraph_to_text(parsed) == text);
    validate_hexgraph(parsed, c);

    // broken inputs
    auto bad = parsed;
    bad.segs.push_back({0, 0, 0});
    CHECK_THROWS(validate_hexgraph(bad, c));
    CHECK_THROWS(hexgraph_from_text("nope"));
}

TEST_CASE("embed_on_genus_g: test family, g=2") {
    auto g = test_family(2);
    auto res = embed_on_genus_g(g);
    CHECK(res.diag.all_certificates);
    for (auto& d : res.diag.per_hexagon) {
        CHECK(d.converged);
        CHECK(d.certificate());
    }
    CHECK(res.drawing.max_arcs_per_edge <= res.diag.reported_bound);
    // the interior triangle edges are single geodesic arcs
    std::map<std::string, size_t> by_name;
    for (size_t i = 0; i < res.drawing.edge_names.size(); ++i)
        by_name[res.drawing.edge_names[i]] = i;
    CHECK(res.drawing.arcs[by_name["tri01"]].size() == 1);
    CHECK(res.drawing.arcs[by_name["tri12"]].size() == 1);
    CHECK(res.drawing.arcs[by_name["tri20"]].size() == 1);

    // gluing continuity: consecutive arcs share their hexagon-side parameter;
    // check endpoints lie on the hexagon boundary within 1e-9
    auto hex = hyp::regular_right_angled_hexagon();
    for (auto& arcs : res.drawing.arcs) {
        for (size_t i = 0; i + 1 < arcs.size(); ++i) {
            if (arcs[i].hex == arcs[i + 1].hex) continue;  // interior subdivision point
            auto locA = hyp::locate_on_boundary(hex, arcs[i].seg.b);
            auto locB = hyp::locate_on_boundary(hex, arcs[i + 1].seg.a);
            CHECK(locA.dist < 1e-9);
            CHECK(locB.dist < 1e-9);
            CHECK(std::abs(locA.t - (locB.t)) < 1e-9);
        }
    }
}

TEST_CASE("embed_on_genus_g: arcs scale linearly with genus") {
    std::vector<double> xs, ys;
    for (int g = 2; g <= 4; ++g) {
        auto res = embed_on_genus_g(test_family(g));
        CHECK(res.diag.all_certificates);
        xs.push_back(g);
        ys.push_back(res.drawing.max_arcs_per_edge);
        CHECK(res.drawing.max_arcs_per_edge <= res.diag.reported_bound);
    }
    // least-squares fit y = a + b x: residuals should be tiny for a linear family
    double n = xs.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double a = (sy - b * sx) / n;
    for (size_t i = 0; i < xs.size(); ++i)
        CHECK(std::abs(a + b * xs[i] - ys[i]) <= 0.75 + 0.05 * ys[i]);
    CHECK(b >= 0);
}

TEST_CASE("count_crossings: zero for disjoint, bounded for the two variants") {
    auto res0 = embed_on_genus_g(test_family(2));
    auto rep_self = count_crossings(res0.drawing, res0.drawing);
    // a drawing against itself reports only transverse meetings of distinct
    // arcs; shared endpoints are excluded, overlaps of an arc with itself are
    // not proper crossings but identical arcs overlap entirely, so skip this
    // as a smoke check of symmetry instead
    CHECK(rep_self.total >= 0);

    PipelineConfig cfg1;
    cfg1.phase = 0.23;
    auto res1 = embed_on_genus_g(test_family(2, 1), cfg1);
    CHECK(res1.diag.all_certificates);
    auto rep = count_crossings(res0.drawing, res1.drawing);
    CHECK(rep.max_pair <= 8);  // desk-scale sanity bound
    auto text = rep.to_text(res0.drawing, res1.drawing);
    CHECK(text.find("crossing-matrix") != std::string::npos);
}

TEST_CASE("crossings: two transverse single-arc edges in one hexagon") {
    auto hex = hyp::regular_right_angled_hexagon();
    PolyGeodesicDrawing d1, d2;
    d1.genus = d2.genus = 2;
    d1.edge_names = {"a"};
    d2.edge_names = {"b"};
    d1.arcs = {{{0, {hex.side_point(0, 0.5), hex.side_point(3, 0.5)}}}};
    d2.arcs = {{{0, {hex.side_point(1, 0.5), hex.side_point(4, 0.5)}}}};
    auto rep = count_crossings(d1, d2);
    CHECK(rep.total == 1);
    CHECK(rep.max_pair == 1);

    // disjoint segments in different hexagons
    PolyGeodesicDrawing d3 = d2;
    d3.arcs[0][0].hex = 1;
    CHECK(count_crossings(d1, d3).total == 0);
}

TEST_CASE("arcs file round-trips") {
    auto res = embed_on_genus_g(test_family(2));
    auto text = arcs_to_text(res.drawing);
    auto parsed = arcs_from_text(text);
    CHECK(arcs_to_text(parsed) == text);
    CHECK(parsed.max_arcs_per_edge == res.drawing.max_arcs_per_edge);
    CHECK_THROWS(arcs_from_text("nope"));
}

TEST_CASE("hex svg renders one disk per hexagon") {
    auto c = canonical_hex_decomposition(2);
    auto res = embed_on_genus_g(test_family(2));
    auto svg = hex_drawing_svg(res.drawing, c);
    CHECK(svg.find("<svg") == 0);
    // four hexagons => four translated groups
    size_t count = 0, pos = 0;
    while ((pos = svg.find("<g transform", pos)) != std::string::npos) {
        ++count;
        pos += 1;
    }
    CHECK(count == 4);
}

TEST_CASE("convexity spot check: mesh paths never undercut the geodesic") {
    double worst = convexity_spot_check(1000, 424242, 4);
    CHECK(worst > -1e-9);
}
