#pragma once

#include "surfemb/flat_cover.hpp"

#include <algorithm>
#include <cmath>

namespace surfemb::femb::detail {

struct Pt {
    double x, y;
};

/// Numeric deck action; parity of m flips y on the Klein bottle.
inline Pt deck_apply_num(const flat::FlatSurface& s, long long m, long long n, Pt p) {
    double x = p.x + static_cast<double>(m) * s.a_num;
    double y;
    if (!s.is_klein() || m % 2 == 0)
        y = p.y + static_cast<double>(n) * s.b_num;
    else
        y = s.b_num - p.y + static_cast<double>(n) * s.b_num;
    return {x, y};
}

inline double seg_point_dist(Pt a, Pt b, Pt p) {
    double vx = b.x - a.x, vy = b.y - a.y;
    double wx = p.x - a.x, wy = p.y - a.y;
    double len2 = vx * vx + vy * vy;
    double t = len2 > 0 ? std::clamp((wx * vx + wy * vy) / len2, 0.0, 1.0) : 0.0;
    return std::hypot(wx - t * vx, wy - t * vy);
}

inline double seg_seg_dist(Pt a, Pt b, Pt c, Pt d) {
    auto cross = [](Pt o, Pt p, Pt q) {
        return (p.x - o.x) * (q.y - o.y) - (p.y - o.y) * (q.x - o.x);
    };
    double d1 = cross(a, b, c), d2 = cross(a, b, d), d3 = cross(c, d, a), d4 = cross(c, d, b);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return 0.0;
    return std::min(std::min(seg_point_dist(a, b, c), seg_point_dist(a, b, d)),
                    std::min(seg_point_dist(c, d, a), seg_point_dist(c, d, b)));
}

inline bool nearly_equal(Pt p, Pt q) { return std::hypot(p.x - q.x, p.y - q.y) < 1e-11; }

struct NearestLifts {
    flat::DeckElement best;
    double best_dist = 0;
    double second_dist = 0;  // distance of the closest competitor
};

/// Scans the deck orbit of `p` around `q` and returns the closest lift and the
/// runner-up distance. Window radius |p-q| + a + b guarantees completeness.
inline NearestLifts nearest_lifts(const flat::FlatSurface& s, Pt p, Pt q) {
    double radius = std::hypot(p.x - q.x, p.y - q.y) + s.a_num + s.b_num;
    long long m_lo = static_cast<long long>(std::floor((q.x - p.x - radius) / s.a_num)) - 1;
    long long m_hi = static_cast<long long>(std::ceil((q.x - p.x + radius) / s.a_num)) + 1;
    NearestLifts out;
    double best = 1e300, second = 1e300;
    flat::DeckElement best_g;
    for (long long m = m_lo; m <= m_hi; ++m) {
        Pt h = deck_apply_num(s, m, 0, p);
        long long n_lo = static_cast<long long>(std::floor((q.y - h.y - radius) / s.b_num)) - 1;
        long long n_hi = static_cast<long long>(std::ceil((q.y - h.y + radius) / s.b_num)) + 1;
        for (long long n = n_lo; n <= n_hi; ++n) {
            double d = std::hypot(h.x - q.x, h.y + static_cast<double>(n) * s.b_num - q.y);
            if (d < best) {
                second = best;
                best = d;
                best_g = {m, n};
            } else if (d < second) {
                second = d;
            }
        }
    }
    out.best = best_g;
    out.best_dist = best;
    out.second_dist = second;
    return out;
}

}  // namespace surfemb::femb::detail
