#include "surfemb/hyperbolic_core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace surfemb::hyp {

double minkowski(const HPoint& x, const HPoint& y) {
    return x.c[0] * y.c[0] - x.c[1] * y.c[1] - x.c[2] * y.c[2];
}

HPoint normalize_to_sheet(HPoint x) {
    double q = x.c[0] * x.c[0] - x.c[1] * x.c[1] - x.c[2] * x.c[2];
    if (q <= 0) throw std::invalid_argument("point left the hyperboloid");
    double r = std::sqrt(q);
    for (double& v : x.c) v /= r;
    if (x.c[0] < 0)
        for (double& v : x.c) v = -v;
    return x;
}

double h_distance(const HPoint& x, const HPoint& y) {
    // Stable form: cosh d = 1 + q/2 with q = |x-y|^2 in the space part minus
    // the time part, computed componentwise.
    double d0 = x.c[0] - y.c[0], d1 = x.c[1] - y.c[1], d2 = x.c[2] - y.c[2];
    double q = d1 * d1 + d2 * d2 - d0 * d0;
    if (q < 0) q = 0;
    return 2 * std::asinh(0.5 * std::sqrt(q));
}

double tangent_norm(const HTangent& v) {
    double q = v.c[1] * v.c[1] + v.c[2] * v.c[2] - v.c[0] * v.c[0];
    return q > 0 ? std::sqrt(q) : 0.0;
}

HPoint exp_map(const HPoint& x, const HTangent& v) {
    double t = tangent_norm(v);
    if (t == 0) return x;
    double ch = std::cosh(t), sh = std::sinh(t) / t;
    HPoint out;
    for (int i = 0; i < 3; ++i) out.c[i] = ch * x.c[i] + sh * v.c[i];
    return normalize_to_sheet(out);
}

HTangent log_map(const HPoint& x, const HPoint& y) {
    double d = h_distance(x, y);
    HTangent v;
    if (d < 1e-300) return v;
    double chd = std::cosh(d);
    std::array<double, 3> w;
    for (int i = 0; i < 3; ++i) w[i] = y.c[i] - chd * x.c[i];
    double nw = std::sqrt(std::max(0.0, w[1] * w[1] + w[2] * w[2] - w[0] * w[0]));
    if (nw == 0) return v;
    for (int i = 0; i < 3; ++i) v.c[i] = w[i] * (d / nw);
    return v;
}

HPoint geodesic_point(const HPoint& x, const HPoint& y, double t) {
    double d = h_distance(x, y);
    if (d == 0) return x;
    double sh = std::sinh(d);
    double wa = std::sinh((1 - t) * d) / sh;
    double wb = std::sinh(t * d) / sh;
    HPoint out;
    for (int i = 0; i < 3; ++i) out.c[i] = wa * x.c[i] + wb * y.c[i];
    return normalize_to_sheet(out);
}

double angle_at(const HPoint& x, const HPoint& y, const HPoint& z) {
    HTangent u = log_map(x, y), v = log_map(x, z);
    double nu = tangent_norm(u), nv = tangent_norm(v);
    if (nu == 0 || nv == 0) return 0;
    // Riemannian inner product on tangents is minus the Minkowski form.
    double ip = u.c[1] * v.c[1] + u.c[2] * v.c[2] - u.c[0] * v.c[0];
    double c = ip / (nu * nv);
    c = std::clamp(c, -1.0, 1.0);
    return std::acos(c);
}

HPoint HIsometry::apply(const HPoint& p) const {
    HPoint out;
    for (int i = 0; i < 3; ++i)
        out.c[i] = m[i][0] * p.c[0] + m[i][1] * p.c[1] + m[i][2] * p.c[2];
    return normalize_to_sheet(out);
}

HIsometry HIsometry::rotation(double theta) {
    HIsometry r;
    r.m = {{{1, 0, 0},
            {0, std::cos(theta), -std::sin(theta)},
            {0, std::sin(theta), std::cos(theta)}}};
    return r;
}

HIsometry HIsometry::boost_x(double t) {
    HIsometry r;
    r.m = {{{std::cosh(t), std::sinh(t), 0},
            {std::sinh(t), std::cosh(t), 0},
            {0, 0, 1}}};
    return r;
}

HIsometry HIsometry::compose(const HIsometry& other) const {
    HIsometry out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            out.m[i][j] = 0;
            for (int k = 0; k < 3; ++k) out.m[i][j] += m[i][k] * other.m[k][j];
        }
    return out;
}

std::vector<std::pair<int, int>> check_dividing_edges(
    const std::vector<std::pair<int, int>>& edges, const std::vector<int>& boundary_cycle) {
    std::vector<std::pair<int, int>> out;
    int k = static_cast<int>(boundary_cycle.size());
    std::map<int, int> pos;
    for (int i = 0; i < k; ++i) pos[boundary_cycle[i]] = i;
    for (auto& [u, v] : edges) {
        auto iu = pos.find(u), iv = pos.find(v);
        if (iu == pos.end() || iv == pos.end()) continue;
        int gap = std::abs(iu->second - iv->second);
        gap = std::min(gap, k - gap);
        if (gap != 1) out.push_back({u, v});
    }
    return out;
}

double spring_energy(const maps::CombinatorialMap& m, const std::vector<double>& weights,
                     const std::vector<HPoint>& pos) {
    double e = 0;
    for (int eid = 0; eid < static_cast<int>(m.edge_sign.size()); ++eid) {
        if (!m.edge_alive(eid)) continue;
        double d = h_distance(pos[m.origin[2 * eid]], pos[m.origin[2 * eid + 1]]);
        double c = eid < static_cast<int>(weights.size()) ? weights[eid] : 1.0;
        e += c * d * d;
    }
    return e;
}

DiskPoint to_poincare(const HPoint& p) {
    return {p.c[1] / (1 + p.c[0]), p.c[2] / (1 + p.c[0])};
}

}  // namespace surfemb::hyp
