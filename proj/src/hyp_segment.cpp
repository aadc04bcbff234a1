#include "surfemb/hyperbolic_core.hpp"

#include <cmath>

namespace surfemb::hyp {

namespace {

std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double enorm(const std::array<double, 3>& a) {
    return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

// Nonnegative-combination test: is p in the cone spanned by a and b?
// Solves the 2x2 Euclidean normal equations.
bool in_cone(const HPoint& a, const HPoint& b, const HPoint& p, double eps) {
    double aa = 0, ab = 0, bb = 0, ap = 0, bp = 0;
    for (int i = 0; i < 3; ++i) {
        aa += a.c[i] * a.c[i];
        ab += a.c[i] * b.c[i];
        bb += b.c[i] * b.c[i];
        ap += a.c[i] * p.c[i];
        bp += b.c[i] * p.c[i];
    }
    double det = aa * bb - ab * ab;
    if (std::abs(det) < 1e-300) return false;
    double alpha = (ap * bb - bp * ab) / det;
    double beta = (bp * aa - ap * ab) / det;
    return alpha >= -eps && beta >= -eps;
}

}  // namespace

IntersectResult segments_intersect(const HSegment& s1, const HSegment& s2, double eps) {
    // Geodesics are intersections of planes through the origin with the sheet.
    auto n1 = cross(s1.a.c, s1.b.c);
    auto n2 = cross(s2.a.c, s2.b.c);
    double scale1 = enorm(n1), scale2 = enorm(n2);
    if (scale1 < 1e-300 || scale2 < 1e-300) return {IntersectKind::None, {}};
    auto u = cross(n1, n2);
    double nu = enorm(u) / (scale1 * scale2);

    if (nu < 1e-13) {
        // Same plane: both segments on one geodesic. Order by the signed
        // parameter along the common geodesic through s1.a.
        HTangent tau = log_map(s1.a, s1.b);
        double nt = tangent_norm(tau);
        if (nt == 0) return {IntersectKind::None, {}};
        for (double& v : tau.c) v /= nt;
        auto param = [&](const HPoint& p) {
            double ip = p.c[0] * tau.c[0] - p.c[1] * tau.c[1] - p.c[2] * tau.c[2];
            return std::asinh(-ip);
        };
        double a1 = 0, b1 = param(s1.b);
        double a2 = param(s2.a), b2 = param(s2.b);
        if (a1 > b1) std::swap(a1, b1);
        if (a2 > b2) std::swap(a2, b2);
        double lo = std::max(a1, a2), hi = std::min(b1, b2);
        if (hi - lo > eps) return {IntersectKind::Overlap, {}};
        if (hi - lo < -eps) return {IntersectKind::None, {}};
        // touching at a single parameter value
        double t = 0.5 * (lo + hi);
        HPoint pt;
        double ch = std::cosh(t), sh = std::sinh(t);
        for (int i = 0; i < 3; ++i) pt.c[i] = ch * s1.a.c[i] + sh * tau.c[i];
        return {IntersectKind::Point, normalize_to_sheet(pt)};
    }

    double q = u[0] * u[0] - u[1] * u[1] - u[2] * u[2];
    if (q <= 0) return {IntersectKind::None, {}};  // the planes meet off the sheet
    HPoint p;
    double r = std::sqrt(q);
    for (int i = 0; i < 3; ++i) p.c[i] = u[i] / r;
    if (p.c[0] < 0)
        for (double& v : p.c) v = -v;

    if (in_cone(s1.a, s1.b, p, eps) && in_cone(s2.a, s2.b, p, eps))
        return {IntersectKind::Point, p};
    return {IntersectKind::None, {}};
}

}  // namespace surfemb::hyp
