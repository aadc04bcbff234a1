#include "surfemb/hyperbolic_core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace surfemb::hyp {

namespace {

double riem_ip(const HTangent& u, const HTangent& v) {
    return u.c[1] * v.c[1] + u.c[2] * v.c[2] - u.c[0] * v.c[0];
}

// Orthonormal oriented tangent frame at x.
std::pair<HTangent, HTangent> tangent_frame(const HPoint& x) {
    auto project = [&](std::array<double, 3> w) {
        double ip = w[0] * x.c[0] - w[1] * x.c[1] - w[2] * x.c[2];
        HTangent t;
        for (int i = 0; i < 3; ++i) t.c[i] = w[i] - ip * x.c[i];
        return t;
    };
    HTangent e1 = project({0, 1, 0});
    if (tangent_norm(e1) < 1e-8) e1 = project({0, 0, 1});
    double n1 = tangent_norm(e1);
    for (double& v : e1.c) v /= n1;
    // Euclidean cross of x and e1 is Minkowski-orthogonal to both up to a
    // projection; orthonormalize to finish.
    HTangent e2 = project({x.c[1] * e1.c[2] - x.c[2] * e1.c[1],
                           x.c[2] * e1.c[0] - x.c[0] * e1.c[2],
                           x.c[0] * e1.c[1] - x.c[1] * e1.c[0]});
    double ip12 = riem_ip(e2, e1);
    for (int i = 0; i < 3; ++i) e2.c[i] -= ip12 * e1.c[i];
    double n2 = tangent_norm(e2);
    for (double& v : e2.c) v /= n2;
    return {e1, e2};
}

double det3(const HPoint& a, const HPoint& b, const HPoint& c) {
    return a.c[0] * (b.c[1] * c.c[2] - b.c[2] * c.c[1]) -
           a.c[1] * (b.c[0] * c.c[2] - b.c[2] * c.c[0]) +
           a.c[2] * (b.c[0] * c.c[1] - b.c[1] * c.c[0]);
}

}  // namespace

TutteResult tutte_embed(const Hexagon& hexagon, const maps::DiskMap& disk,
                        const BoundaryAssignment& assignment, double tol, int max_sweeps) {
    const auto& m = disk.map;
    if (!maps::is_disk_triangulation(disk))
        throw std::invalid_argument("tutte_embed: map is not a disk triangulation");

    auto boundary = disk.boundary_vertices();
    std::set<int> boundary_set(boundary.begin(), boundary.end());
    if (boundary_set.size() != boundary.size())
        throw std::invalid_argument("tutte_embed: boundary walk repeats a vertex");

    // Fixed exactly on the boundary; free exactly in the interior.
    for (int v : m.alive_vertices()) {
        bool fixed = v < static_cast<int>(assignment.fixed.size()) &&
                     assignment.fixed[v].has_value();
        if (fixed != (boundary_set.count(v) > 0))
            throw std::invalid_argument(
                "tutte_embed: fixed vertices must be exactly the boundary vertices");
        if (!fixed && m.degree(v) < 3)
            throw std::invalid_argument("tutte_embed: interior vertex of degree < 3");
    }

    // Fixed points on the hexagon boundary, in consistent cyclic order.
    std::vector<double> params;
    for (int v : boundary) {
        auto loc = locate_on_boundary(hexagon, *assignment.fixed[v]);
        if (loc.dist > 1e-9)
            throw std::invalid_argument("tutte_embed: fixed point off the hexagon boundary");
        params.push_back(loc.side + loc.t);
    }
    {
        int wraps_fwd = 0, wraps_bwd = 0;
        int k = static_cast<int>(params.size());
        for (int i = 0; i < k; ++i) {
            double a = params[i], b = params[(i + 1) % k];
            if (b <= a) ++wraps_fwd;
            if (b >= a) ++wraps_bwd;
        }
        if (wraps_fwd != 1 && wraps_bwd != 1)
            throw std::invalid_argument("tutte_embed: boundary points out of cyclic order");
    }

    // No dividing edges.
    {
        std::vector<std::pair<int, int>> edge_list;
        for (int e = 0; e < static_cast<int>(m.edge_sign.size()); ++e)
            if (m.edge_alive(e)) edge_list.push_back({m.origin[2 * e], m.origin[2 * e + 1]});
        std::set<std::pair<int, int>> boundary_edges;
        for (int dart : disk.outer) {
            int u = m.origin[dart], v = m.head(dart);
            boundary_edges.insert({std::min(u, v), std::max(u, v)});
        }
        for (auto& [u, v] : check_dividing_edges(edge_list, boundary)) {
            if (!boundary_edges.count({std::min(u, v), std::max(u, v)}))
                throw std::invalid_argument("tutte_embed: dividing edge present");
        }
    }

    std::vector<double> weights = assignment.weights;
    weights.resize(m.edge_sign.size(), 1.0);
    for (int e = 0; e < static_cast<int>(m.edge_sign.size()); ++e)
        if (m.edge_alive(e) && weights[e] <= 0)
            throw std::invalid_argument("tutte_embed: weights must be positive");

    TutteResult res;
    res.positions.assign(m.rotation.size(), HPoint{});
    for (int v : boundary) res.positions[v] = *assignment.fixed[v];
    std::vector<int> free_vertices;
    for (int v : m.alive_vertices())
        if (!boundary_set.count(v)) free_vertices.push_back(v);

    auto local_energy = [&](int v, const HPoint& z) {
        double e = 0;
        for (int dart : m.rotation[v]) {
            double d = h_distance(z, res.positions[m.head(dart)]);
            e += weights[m.edge_of(dart)] * d * d;
        }
        return e;
    };
    auto karcher_residual = [&](int v) {
        HTangent sum;
        for (int dart : m.rotation[v]) {
            HTangent l = log_map(res.positions[v], res.positions[m.head(dart)]);
            double c = weights[m.edge_of(dart)];
            for (int i = 0; i < 3; ++i) sum.c[i] += c * l.c[i];
        }
        return sum;
    };

    // Gauss-Seidel sweeps; each free vertex moves to the weighted Karcher
    // mean of its neighbors (inner fixed-point with a halving safeguard, so
    // the per-vertex energy never increases and neither does the total).
    double prev_energy = spring_energy(m, weights, res.positions);
    res.diag.energy_history.push_back(prev_energy);
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        double max_disp = 0;
        for (int v : free_vertices) {
            HPoint z = res.positions[v];
            double fz = local_energy(v, z);
            double csum = 0;
            for (int dart : m.rotation[v]) csum += weights[m.edge_of(dart)];
            // The Karcher step exp_z(average log) is already near-exact for
            // within-hexagon distances; a couple of guarded steps per sweep
            // keep the per-vertex energy monotone and the sweep cheap.
            for (int inner = 0; inner < 3; ++inner) {
                HTangent t;
                for (int dart : m.rotation[v]) {
                    HTangent l = log_map(z, res.positions[m.head(dart)]);
                    double c = weights[m.edge_of(dart)];
                    for (int i = 0; i < 3; ++i) t.c[i] += c * l.c[i];
                }
                for (int i = 0; i < 3; ++i) t.c[i] /= csum;
                if (tangent_norm(t) < 0.05 * tol) break;
                HPoint znew = exp_map(z, t);
                double fnew = local_energy(v, znew);
                int halvings = 0;
                while (fnew > fz && halvings < 40) {
                    for (int i = 0; i < 3; ++i) t.c[i] *= 0.5;
                    znew = exp_map(z, t);
                    fnew = local_energy(v, znew);
                    ++halvings;
                }
                if (fnew > fz) break;
                z = znew;
                fz = fnew;
            }
            max_disp = std::max(max_disp, h_distance(res.positions[v], z));
            res.positions[v] = z;
        }
        double energy = spring_energy(m, weights, res.positions);
        res.diag.energy_history.push_back(energy);
        if (energy > prev_energy + 1e-12 * (1 + std::abs(prev_energy)))
            throw std::logic_error("tutte_embed: energy increased across a sweep");
        prev_energy = energy;
        if (max_disp < tol) {
            double max_grad = 0;
            for (int v : free_vertices)
                max_grad = std::max(max_grad, tangent_norm(karcher_residual(v)));
            if (max_grad < 10 * tol || sweep == max_sweeps - 1) {
                res.diag.max_gradient = max_grad;
                res.diag.converged = max_grad < 10 * tol;
                break;
            }
        }
    }
    res.diag.sweeps = sweep + 1;
    res.diag.final_energy = prev_energy;
    if (!res.diag.converged && res.diag.max_gradient == 0) {
        double max_grad = 0;
        for (int v : free_vertices)
            max_grad = std::max(max_grad, tangent_norm(karcher_residual(v)));
        res.diag.max_gradient = max_grad;
        res.diag.converged = max_grad < 10 * tol;
    }
    if (sweep >= max_sweeps)
        throw std::runtime_error("tutte_embed: max_sweeps exceeded before convergence");

    // -- certificate ---------------------------------------------------------
    // (a) no crossings: non-adjacent edges disjoint; adjacent ones meet only
    // at the shared vertex.
    res.diag.crossing_free = true;
    std::vector<int> alive_edges;
    for (int e = 0; e < static_cast<int>(m.edge_sign.size()); ++e)
        if (m.edge_alive(e)) alive_edges.push_back(e);
    for (size_t i = 0; i < alive_edges.size() && res.diag.crossing_free; ++i) {
        int e1 = alive_edges[i];
        int u1 = m.origin[2 * e1], v1 = m.origin[2 * e1 + 1];
        HSegment s1{res.positions[u1], res.positions[v1]};
        for (size_t j = i + 1; j < alive_edges.size(); ++j) {
            int e2 = alive_edges[j];
            int u2 = m.origin[2 * e2], v2 = m.origin[2 * e2 + 1];
            bool share = u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2;
            HSegment s2{res.positions[u2], res.positions[v2]};
            auto r = segments_intersect(s1, s2, 1e-11);
            if (r.kind == IntersectKind::None) continue;
            if (r.kind == IntersectKind::Overlap || !share) {
                res.diag.crossing_free = false;
                break;
            }
            int shared = u1 == u2 || u1 == v2 ? u1 : v1;
            if (h_distance(r.point, res.positions[shared]) > 1e-8) {
                res.diag.crossing_free = false;
                break;
            }
        }
    }

    // (b) consistent positive orientation of interior faces.
    res.diag.oriented = true;
    {
        std::set<int> outer_darts(disk.outer.begin(), disk.outer.end());
        int sign = 0;
        for (const auto& f : maps::faces(m)) {
            if (outer_darts.count(f[0])) continue;
            double det = det3(res.positions[m.origin[f[0]]], res.positions[m.origin[f[1]]],
                              res.positions[m.origin[f[2]]]);
            int s = det > 1e-14 ? 1 : (det < -1e-14 ? -1 : 0);
            if (s == 0 || (sign != 0 && s != sign)) {
                res.diag.oriented = false;
                break;
            }
            sign = s;
        }
    }

    // (c) induced rotations match the map (uniform global orientation).
    res.diag.rotations_ok = true;
    {
        int global = 0;  // +1 forward, -1 reversed
        for (int v : m.alive_vertices()) {
            auto [e1, e2] = tangent_frame(res.positions[v]);
            std::vector<std::pair<double, int>> ang;
            for (int dart : m.rotation[v]) {
                HTangent l = log_map(res.positions[v], res.positions[m.head(dart)]);
                ang.push_back({std::atan2(riem_ip(l, e2), riem_ip(l, e1)), dart});
            }
            std::sort(ang.begin(), ang.end());
            std::vector<int> geo;
            for (auto& [a, d] : ang) geo.push_back(d);
            auto cyclic_equal = [](const std::vector<int>& x, const std::vector<int>& y) {
                size_t n = x.size();
                if (n != y.size()) return false;
                for (size_t off = 0; off < n; ++off) {
                    bool ok = true;
                    for (size_t t = 0; t < n && ok; ++t) ok = x[(off + t) % n] == y[t];
                    if (ok) return true;
                }
                return false;
            };
            int dir = 0;
            if (cyclic_equal(geo, m.rotation[v])) dir = 1;
            std::vector<int> rev(geo.rbegin(), geo.rend());
            if (dir == 0 && cyclic_equal(rev, m.rotation[v])) dir = -1;
            if (dir == 0 || (global != 0 && dir != global)) {
                res.diag.rotations_ok = false;
                break;
            }
            global = dir;
        }
    }
    return res;
}

std::string TutteDiagnostics::to_text() const {
    std::ostringstream os;
    os << "sweeps " << sweeps << " energy " << final_energy << " max-gradient " << max_gradient
       << "\n";
    os << "converged " << converged << " crossing-free " << crossing_free << " oriented "
       << oriented << " rotations " << rotations_ok << "\n";
    return os.str();
}

}  // namespace surfemb::hyp
