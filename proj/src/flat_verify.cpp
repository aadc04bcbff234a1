#include "surfemb/flat_embedder.hpp"
#include "surfemb/detail/flat_num.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>

namespace surfemb::femb {

using flat::DeckElement;
using flat::FlatSurface;

using detail::Pt;
using detail::deck_apply_num;
using detail::nearly_equal;
using detail::seg_point_dist;
using detail::seg_seg_dist;

namespace {

struct SegmentData {
    int edge;
    int tail, head;  // vertex ids
    Pt a, b;         // tail representative, lifted head
};

}  // namespace

CertReport verify_drawing(const FlatDrawing& d, double margin) {
    CertReport rep;
    const FlatSurface& s = d.surface;
    const auto& m = d.map;

    // Cached numeric positions.
    std::vector<Pt> pos(m.rotation.size(), {0, 0});
    for (int v : m.alive_vertices())
        pos[v] = {d.positions[v].rep.x.eval(s), d.positions[v].rep.y.eval(s)};

    // (closure) around every face the deck composition is the identity.
    try {
        for (const auto& walk : maps::faces(m)) {
            DeckElement acc{0, 0};
            for (int dart : walk) acc = flat::compose_deck(acc, d.lift_from(dart), s);
            if (!acc.is_identity()) {
                rep.closure_ok = false;
                rep.issues.push_back({m.edge_of(walk[0]), "closure",
                                      "face deck composition is (" + std::to_string(acc.m) + "," +
                                          std::to_string(acc.n) + ")"});
            }
        }
    } catch (const std::exception& e) {
        rep.closure_ok = false;
        rep.issues.push_back({-1, "closure", e.what()});
    }

    // (i) unique shortest lifts.
    std::vector<SegmentData> segs;
    for (int e = 0; e < static_cast<int>(m.edge_sign.size()); ++e) {
        if (!m.edge_alive(e)) continue;
        int u = m.origin[2 * e], v = m.origin[2 * e + 1];
        DeckElement g = d.edge_lifts[e];
        auto lifted = flat::apply_deck(g, d.positions[v].rep, s);
        segs.push_back({e, u, v, pos[u], {lifted.x.eval(s), lifted.y.eval(s)}});
        auto verdict = flat::is_unique_shortest_lift(d.positions[v], g, d.positions[u], s, margin);
        if (verdict != flat::LiftVerdict::Unique) {
            rep.shortest_ok = false;
            rep.issues.push_back({e,
                                  verdict == flat::LiftVerdict::Tie ? "tie" : "not-shortest",
                                  "edge " + m.vertex_name[u] + "-" + m.vertex_name[v]});
        }
    }

    // (ii) no crossings among deck translates of the drawn segments, and no
    // vertex lift in the interior of a segment.
    auto check_pair = [&](const SegmentData& e, const SegmentData& f, long long mm, long long nn) {
        Pt c = deck_apply_num(s, mm, nn, f.a);
        Pt dd = deck_apply_num(s, mm, nn, f.b);
        if (e.edge == f.edge && mm == 0 && nn == 0) return;
        double dist = seg_seg_dist(e.a, e.b, c, dd);
        if (dist > margin) return;
        // Contacts are allowed only at coinciding endpoints that name the
        // same surface vertex.
        int shared = 0;
        bool overlap_risk = false;
        Pt epts[2] = {e.a, e.b};
        int evs[2] = {e.tail, e.head};
        Pt fpts[2] = {c, dd};
        int fvs[2] = {f.tail, f.head};
        Pt dir_e{}, dir_f{};
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                if (nearly_equal(epts[i], fpts[j]) && evs[i] == fvs[j]) {
                    ++shared;
                    dir_e = {epts[1 - i].x - epts[i].x, epts[1 - i].y - epts[i].y};
                    dir_f = {fpts[1 - j].x - fpts[j].x, fpts[1 - j].y - fpts[j].y};
                }
            }
        }
        if (shared == 0) {
            rep.crossing_ok = false;
            rep.issues.push_back({e.edge, "crossing",
                                  "with translate (" + std::to_string(mm) + "," +
                                      std::to_string(nn) + ") of edge " + std::to_string(f.edge)});
            return;
        }
        if (shared >= 2) {
            rep.crossing_ok = false;
            rep.issues.push_back({e.edge, "crossing", "coincides with edge " + std::to_string(f.edge)});
            return;
        }
        // One shared endpoint: forbid collinear overlap (angle ~ 0).
        double cr = dir_e.x * dir_f.y - dir_e.y * dir_f.x;
        double dt = dir_e.x * dir_f.x + dir_e.y * dir_f.y;
        double ne = std::hypot(dir_e.x, dir_e.y), nf = std::hypot(dir_f.x, dir_f.y);
        if (ne > 0 && nf > 0 && std::abs(cr) / (ne * nf) < 1e-12 && dt > 0) overlap_risk = true;
        if (overlap_risk) {
            rep.crossing_ok = false;
            rep.issues.push_back({e.edge, "crossing", "overlaps edge " + std::to_string(f.edge)});
        }
    };

    for (size_t i = 0; i < segs.size(); ++i) {
        const auto& e = segs[i];
        double exlo = std::min(e.a.x, e.b.x), exhi = std::max(e.a.x, e.b.x);
        double eylo = std::min(e.a.y, e.b.y), eyhi = std::max(e.a.y, e.b.y);
        for (size_t j = i; j < segs.size(); ++j) {
            const auto& f = segs[j];
            double fxlo = std::min(f.a.x, f.b.x), fxhi = std::max(f.a.x, f.b.x);
            double fylo = std::min(f.a.y, f.b.y), fyhi = std::max(f.a.y, f.b.y);
            long long m_lo = static_cast<long long>(std::floor((exlo - fxhi) / s.a_num)) - 1;
            long long m_hi = static_cast<long long>(std::ceil((exhi - fxlo) / s.a_num)) + 1;
            for (long long mm = m_lo; mm <= m_hi; ++mm) {
                // y-extent of the translated f depends on glide parity
                double tylo = fylo, tyhi = fyhi;
                if (s.is_klein() && mm % 2 != 0) {
                    tylo = s.b_num - fyhi;
                    tyhi = s.b_num - fylo;
                }
                long long n_lo = static_cast<long long>(std::floor((eylo - tyhi) / s.b_num)) - 1;
                long long n_hi = static_cast<long long>(std::ceil((eyhi - tylo) / s.b_num)) + 1;
                for (long long nn = n_lo; nn <= n_hi; ++nn) check_pair(e, f, mm, nn);
            }
        }
        // vertex-on-edge: any vertex lift within margin of the open segment
        for (int v : m.alive_vertices()) {
            double len = std::hypot(e.b.x - e.a.x, e.b.y - e.a.y);
            long long vm_lo = static_cast<long long>(std::floor((exlo - pos[v].x - len) / s.a_num)) - 1;
            long long vm_hi = static_cast<long long>(std::ceil((exhi - pos[v].x + len) / s.a_num)) + 1;
            for (long long mm = vm_lo; mm <= vm_hi; ++mm) {
                long long base_n = 0;
                Pt q0 = deck_apply_num(s, mm, base_n, pos[v]);
                long long n_lo = static_cast<long long>(std::floor((eylo - q0.y - len) / s.b_num));
                long long n_hi = static_cast<long long>(std::ceil((eyhi - q0.y + len) / s.b_num));
                for (long long nn = n_lo; nn <= n_hi; ++nn) {
                    Pt q = deck_apply_num(s, mm, nn, pos[v]);
                    if (seg_point_dist(e.a, e.b, q) > margin) continue;
                    bool legit = (nearly_equal(q, e.a) && v == e.tail) ||
                                 (nearly_equal(q, e.b) && v == e.head);
                    if (!legit) {
                        rep.crossing_ok = false;
                        rep.issues.push_back({e.edge, "vertex-on-edge",
                                              "vertex " + m.vertex_name[v] + " lift touches edge"});
                    }
                }
            }
        }
    }

    // (iii) induced rotations match, up to a consistent vertex-flip assignment.
    {
        std::vector<int> allowed(m.rotation.size(), 0);  // bit0: +1 ok, bit1: -1 ok
        bool local_fail = false;
        for (int v : m.alive_vertices()) {
            std::vector<std::pair<double, int>> ang;
            for (int dart : m.rotation[v]) {
                DeckElement g = d.lift_from(dart);
                auto lifted = flat::apply_deck(g, d.positions[m.head(dart)].rep, s);
                ang.push_back({std::atan2(lifted.y.eval(s) - pos[v].y, lifted.x.eval(s) - pos[v].x),
                               dart});
            }
            std::sort(ang.begin(), ang.end());
            std::vector<int> geo;
            for (auto& [a, dart] : ang) geo.push_back(dart);
            auto cyclic_equal = [](const std::vector<int>& x, const std::vector<int>& y) {
                if (x.size() != y.size()) return false;
                size_t n = x.size();
                for (size_t off = 0; off < n; ++off) {
                    bool ok = true;
                    for (size_t i = 0; i < n && ok; ++i) ok = x[(off + i) % n] == y[i];
                    if (ok) return true;
                }
                return false;
            };
            std::vector<int> geo_rev(geo.rbegin(), geo.rend());
            if (cyclic_equal(geo, m.rotation[v])) allowed[v] |= 1;
            if (cyclic_equal(geo_rev, m.rotation[v])) allowed[v] |= 2;
            if (allowed[v] == 0) {
                local_fail = true;
                rep.issues.push_back({-1, "rotation", "vertex " + m.vertex_name[v] +
                                                           " geometric order differs from map"});
            }
        }
        if (local_fail) {
            rep.rotation_ok = false;
        } else {
            // 2-coloring: z_u z_v = sign_map(e) * sign_geo(e).
            std::vector<int> color(m.rotation.size(), 0);  // 0 unset, +1/-1 chosen
            for (int root : m.alive_vertices()) {
                if (color[root] != 0) continue;
                color[root] = (allowed[root] & 1) ? 1 : -1;
                std::queue<int> bfs;
                bfs.push(root);
                while (!bfs.empty() && rep.rotation_ok) {
                    int v = bfs.front();
                    bfs.pop();
                    for (int dart : m.rotation[v]) {
                        int w = m.head(dart);
                        DeckElement g = d.lift_from(dart);
                        int sign_geo = (s.is_klein() && g.m % 2 != 0) ? -1 : 1;
                        int want = color[v] * m.edge_sign[m.edge_of(dart)] * sign_geo;
                        int bit = want > 0 ? 1 : 2;
                        if (color[w] == 0) {
                            if (!(allowed[w] & bit)) {
                                rep.rotation_ok = false;
                                rep.issues.push_back({m.edge_of(dart), "rotation",
                                                      "no flip assignment at " + m.vertex_name[w]});
                                break;
                            }
                            color[w] = want;
                            bfs.push(w);
                        } else if (color[w] != want) {
                            rep.rotation_ok = false;
                            rep.issues.push_back({m.edge_of(dart), "rotation",
                                                  "inconsistent flips across edge"});
                            break;
                        }
                    }
                }
            }
        }
    }

    std::sort(rep.issues.begin(), rep.issues.end(),
              [](const EdgeIssue& a, const EdgeIssue& b) {
                  return a.edge != b.edge ? a.edge < b.edge : a.kind < b.kind;
              });
    return rep;
}

std::string CertReport::to_text() const {
    std::ostringstream os;
    os << (pass() ? "PASS" : "FAIL") << " closure=" << closure_ok << " shortest=" << shortest_ok
       << " crossings=" << crossing_ok << " rotations=" << rotation_ok << "\n";
    for (auto& i : issues)
        os << "  issue edge=" << i.edge << " " << i.kind << ": " << i.detail << "\n";
    return os.str();
}

std::string CertReport::to_structured() const {
    std::ostringstream os;
    os << "surfemb-report v1\n";
    os << "kind drawing-certificate\n";
    os << "closure " << closure_ok << "\n";
    os << "shortest " << shortest_ok << "\n";
    os << "crossings " << crossing_ok << "\n";
    os << "rotations " << rotation_ok << "\n";
    os << "verdict " << (pass() ? "pass" : "fail") << "\n";
    for (auto& i : issues)
        os << "issue " << i.edge << " " << i.kind << " " << i.detail << "\n";
    return os.str();
}

}  // namespace surfemb::femb
