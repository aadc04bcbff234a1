#include "surfemb/flat_embedder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace surfemb::femb {

using flat::DeckElement;
using flat::PlanePoint;
using flat::SurfacePoint;

namespace {

// Rational approximation of a unit direction, denominator 2^20.
std::pair<Rational, Rational> rational_direction(double angle) {
    const long long den = 1 << 20;
    auto r = [den](double v) {
        return Rational(static_cast<long long>(std::llround(v * den)), den);
    };
    return {r(std::cos(angle)), r(std::sin(angle))};
}

}  // namespace

FlatDrawing split_vertex(const FlatDrawing& d, const maps::SplitScript& script, double delta,
                         double margin) {
    if (delta <= 0) throw std::invalid_argument("split_vertex: delta must be positive");
    const auto& s = d.surface;
    int u = script.hub;

    // Angular sector assigned to the new vertex: from the dart u->apex_a
    // through the fan to u->apex_b, measured at u's representative.
    double ux = d.positions[u].rep.x.eval(s);
    double uy = d.positions[u].rep.y.eval(s);
    auto dart_angle = [&](int target) {
        int dart = d.map.dart_between(u, target);
        if (dart < 0) throw std::invalid_argument("split_vertex: script edge missing");
        DeckElement g = d.lift_from(dart);
        auto lifted = flat::apply_deck(g, d.positions[d.map.head(dart)].rep, s);
        return std::atan2(lifted.y.eval(s) - uy, lifted.x.eval(s) - ux);
    };
    double a0 = dart_angle(script.apex_a);
    double a1 = dart_angle(script.apex_b);
    // The new vertex goes into the rotation gap from dart u->A to dart u->B.
    // Geometrically that gap is swept counterclockwise when the drawing's
    // orientation at u agrees with the stored rotation and clockwise when the
    // drawing is the mirror image, so determine the direction first.
    int dir = 0;
    {
        std::vector<std::pair<double, int>> ang;
        for (int dart : d.map.rotation[u]) ang.push_back({dart_angle(d.map.head(dart)), dart});
        std::sort(ang.begin(), ang.end());
        std::vector<int> geo;
        for (auto& [a, dart] : ang) geo.push_back(dart);
        auto cyclic_equal = [](const std::vector<int>& x, const std::vector<int>& y) {
            size_t n = x.size();
            if (n != y.size()) return false;
            for (size_t off = 0; off < n; ++off) {
                bool ok = true;
                for (size_t i = 0; i < n && ok; ++i) ok = x[(off + i) % n] == y[i];
                if (ok) return true;
            }
            return false;
        };
        if (cyclic_equal(geo, d.map.rotation[u])) dir = 1;
        std::vector<int> rev(geo.rbegin(), geo.rend());
        if (dir == 0 && cyclic_equal(rev, d.map.rotation[u])) dir = -1;
        if (dir == 0)
            throw std::invalid_argument("split_vertex: drawing rotation inconsistent at the hub");
    }
    double sweep = dir > 0 ? a1 - a0 : -(a0 - a1);
    if (dir > 0)
        while (sweep <= 0) sweep += 2 * M_PI;
    else
        while (sweep >= 0) sweep -= 2 * M_PI;
    double bisector = a0 + 0.5 * sweep;

    maps::CombinatorialMap grown = maps::split_vertex_combinatorial(d.map, script);
    int v = script.removed_vertex < static_cast<int>(d.map.v_alive.size())
                ? script.removed_vertex
                : static_cast<int>(d.map.v_alive.size());

    double step = delta;
    std::string last_failure;
    for (int attempt = 0; attempt < 60; ++attempt, step /= 2) {
        auto [dx, dy] = rational_direction(bisector);
        Rational rstep(static_cast<long long>(std::llround(step * (1LL << 30))), 1LL << 30);
        PlanePoint vpos = d.positions[u].rep;
        vpos.x.r += dx * rstep;
        vpos.y.r += dy * rstep;
        auto [vrep, norm] = flat::project_with_deck(vpos, s);

        FlatDrawing out;
        out.surface = s;
        out.map = grown;
        out.positions = d.positions;
        out.positions.resize(grown.rotation.size());
        out.positions[v] = vrep;
        out.edge_lifts = d.edge_lifts;
        out.edge_lifts.resize(grown.edge_sign.size());

        // New and moved edges: u-v gets the normalizer; v-w re-anchors the old
        // u-w lift at v's representative.
        for (int e = 0; e < static_cast<int>(grown.edge_sign.size()); ++e) {
            if (!grown.edge_alive(e)) continue;
            int p = grown.origin[2 * e], q = grown.origin[2 * e + 1];
            if (p != v && q != v) continue;  // untouched edge keeps its lift
            int w = p == v ? q : p;
            DeckElement lift_from_v;
            if (w == u) {
                lift_from_v = flat::inverse_deck(norm, s);
            } else {
                int old_dart = d.map.dart_between(u, w);
                if (old_dart < 0) throw std::logic_error("split_vertex: missing source edge");
                DeckElement g_uw = d.lift_from(old_dart);
                lift_from_v = flat::compose_deck(flat::inverse_deck(norm, s), g_uw, s);
            }
            out.edge_lifts[e] = p == v ? lift_from_v : flat::inverse_deck(lift_from_v, s);
        }

        auto report = verify_drawing(out, margin);
        if (report.pass()) return out;
        last_failure = report.to_text();
    }
    throw std::runtime_error("split_vertex: backoff exhausted; last failure:\n" + last_failure);
}

}  // namespace surfemb::femb
