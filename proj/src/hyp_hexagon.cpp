#include "surfemb/hyperbolic_core.hpp"

#include <cmath>

namespace surfemb::hyp {

Hexagon regular_right_angled_hexagon() {
    Hexagon hex;
    // Hypotenuse relation in the right triangle (center, vertex, side
    // midpoint): cosh R = cot(pi/6) cot(pi/4) = sqrt(3).
    hex.circumradius = std::acosh(std::sqrt(3.0));
    hex.side_length = 2 * std::acosh(std::cos(M_PI / 6) / std::sin(M_PI / 4));
    double sr = std::sinh(hex.circumradius), cr = std::cosh(hex.circumradius);
    for (int k = 0; k < 6; ++k) {
        double th = M_PI / 6 + k * M_PI / 3;
        hex.vertices[k] = normalize_to_sheet({cr, sr * std::cos(th), sr * std::sin(th)});
    }
    return hex;
}

HPoint Hexagon::side_point(int k, double t) const {
    return geodesic_point(vertices[k % 6], vertices[(k + 1) % 6], t);
}

BoundaryLocation locate_on_boundary(const Hexagon& hex, const HPoint& p) {
    BoundaryLocation best{-1, 0, 1e300};
    for (int k = 0; k < 6; ++k) {
        // ternary search on the convex distance along the side
        double lo = 0, hi = 1;
        for (int it = 0; it < 80; ++it) {
            double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
            if (h_distance(hex.side_point(k, m1), p) < h_distance(hex.side_point(k, m2), p))
                hi = m2;
            else
                lo = m1;
        }
        double t = 0.5 * (lo + hi);
        double d = h_distance(hex.side_point(k, t), p);
        if (d < best.dist) best = {k, t, d};
    }
    return best;
}

}  // namespace surfemb::hyp
