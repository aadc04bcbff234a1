#include "surfemb/flat_embedder.hpp"
#include "surfemb/detail/flat_num.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <array>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace surfemb::femb {

namespace fs = std::filesystem;
using detail::Pt;

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

std::vector<CatalogEntry> catalog_load(const std::string& dir) {
    fs::path root(dir);
    fs::path index = root / "index.txt";
    if (!fs::exists(index)) throw std::runtime_error("catalog index not found: " + index.string());
    std::istringstream is(read_file(index));
    std::string line;
    if (!std::getline(is, line) || line != "surfemb-catalog v1")
        throw std::runtime_error("catalog index: bad header");
    std::vector<CatalogEntry> out;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string kw, name, kmap, mapfile, kdraw, drawfile, kprov;
        ls >> kw >> name >> kmap >> mapfile >> kdraw >> drawfile >> kprov;
        if (kw != "entry" || kmap != "map" || kdraw != "drawing")
            throw std::runtime_error("catalog index: bad entry line");
        std::string provenance;
        std::getline(ls, provenance);
        if (!provenance.empty() && provenance[0] == ' ') provenance.erase(0, 1);
        CatalogEntry e;
        e.name = name;
        e.map = maps::map_from_text(read_file(root / mapfile));
        e.drawing = attach_map(parse_drawing(read_file(root / drawfile)), e.map);
        e.provenance = kprov == "provenance" ? provenance : "";
        out.push_back(std::move(e));
    }
    return out;
}

void catalog_save(const std::string& dir, const std::vector<CatalogEntry>& entries) {
    fs::path root(dir);
    fs::create_directories(root);
    std::ostringstream index;
    index << "surfemb-catalog v1\n";
    for (const auto& e : entries) {
        std::ofstream m(root / (e.name + ".map"));
        m << maps::map_to_text(e.map);
        std::ofstream d(root / (e.name + ".drawing"));
        d << drawing_to_text(e.drawing);
        index << "entry " << e.name << " map " << e.name << ".map drawing " << e.name
              << ".drawing provenance " << (e.provenance.empty() ? "unspecified" : e.provenance)
              << "\n";
    }
    std::ofstream ix(root / "index.txt");
    ix << index.str();
}

// ---------------------------------------------------------------------------
// Lattice search. Vertices are placed on the grid x = i*step, y = j*(b/N)
// (as exact forms i*step and s = j/N), with optional rational shifts. The
// search prunes on per-edge unique-shortest feasibility, pairwise crossing
// freedom, and vertex separation; full verification runs at the leaves.
// ---------------------------------------------------------------------------

namespace {

struct Option {
    Rational xr;   // exact x
    Rational ys;   // exact y as s-component (times b)
    Rational yr;   // rational y shift
    double x, y;
};

struct SearchState {
    const maps::CombinatorialMap& map;
    const flat::FlatSurface& surface;
    double margin;
    long long budget;
    std::vector<int> order;                 // vertex ids in placement order
    std::vector<std::vector<int>> placed_nbrs;  // neighbors already placed, per order slot
    std::vector<Option> options;
    std::vector<int> choice;                // option index per order slot
    std::vector<Pt> pos;                    // by vertex id
    std::vector<char> placed;               // by vertex id
    std::vector<std::array<Pt, 2>> segs;    // placed segments
    long long nodes = 0;
};

bool segments_clear(SearchState& st, Pt a, Pt b) {
    const auto& s = st.surface;
    double exlo = std::min(a.x, b.x), exhi = std::max(a.x, b.x);
    double eylo = std::min(a.y, b.y), eyhi = std::max(a.y, b.y);
    for (const auto& t : st.segs) {
        double fxlo = std::min(t[0].x, t[1].x), fxhi = std::max(t[0].x, t[1].x);
        long long m_lo = static_cast<long long>(std::floor((exlo - fxhi) / s.a_num)) - 1;
        long long m_hi = static_cast<long long>(std::ceil((exhi - fxlo) / s.a_num)) + 1;
        for (long long mm = m_lo; mm <= m_hi; ++mm) {
            double fylo = std::min(t[0].y, t[1].y), fyhi = std::max(t[0].y, t[1].y);
            if (s.is_klein() && mm % 2 != 0) {
                double lo = s.b_num - fyhi, hi = s.b_num - fylo;
                fylo = lo;
                fyhi = hi;
            }
            long long n_lo = static_cast<long long>(std::floor((eylo - fyhi) / s.b_num)) - 1;
            long long n_hi = static_cast<long long>(std::ceil((eyhi - fylo) / s.b_num)) + 1;
            for (long long nn = n_lo; nn <= n_hi; ++nn) {
                Pt c = detail::deck_apply_num(s, mm, nn, t[0]);
                Pt d = detail::deck_apply_num(s, mm, nn, t[1]);
                double dist = detail::seg_seg_dist(a, b, c, d);
                if (dist > st.margin) continue;
                // allow contact only at exactly coinciding endpoints
                int contacts = 0;
                for (Pt p : {a, b})
                    for (Pt q : {c, d})
                        if (detail::nearly_equal(p, q)) ++contacts;
                if (contacts != 1) return false;
                // shared endpoint: require a genuine angle
                Pt sp{}, ea{}, eb{};
                for (Pt p : {a, b})
                    for (Pt q : {c, d})
                        if (detail::nearly_equal(p, q)) sp = p;
                ea = detail::nearly_equal(sp, a) ? b : a;
                eb = detail::nearly_equal(sp, c) ? d : c;
                double ux = ea.x - sp.x, uy = ea.y - sp.y;
                double vx = eb.x - sp.x, vy = eb.y - sp.y;
                double cr = ux * vy - uy * vx;
                if (std::abs(cr) / (std::hypot(ux, uy) * std::hypot(vx, vy)) < 1e-12 &&
                    ux * vx + uy * vy > 0)
                    return false;
            }
        }
    }
    return true;
}

}  // namespace


namespace {

// Do the placed darts around vertex v, sorted by drawing angle, form a cyclic
// subsequence of the map rotation at v (forward or reversed)? Necessary
// condition for the final rotation certificate; a strong search prune.
bool rotation_compatible(const maps::CombinatorialMap& map, int v,
                         const std::vector<std::pair<double, int>>& angle_and_head) {
    size_t k = angle_and_head.size();
    if (k < 3) return true;
    std::vector<int> placed;
    for (auto& [a, h] : angle_and_head) placed.push_back(h);
    std::vector<int> rot;
    for (int d : map.rotation[v]) {
        int h = map.head(d);
        for (int x : placed)
            if (x == h) rot.push_back(h);
    }
    size_t n = rot.size();
    if (n != k) return false;
    for (int dir = 0; dir < 2; ++dir) {
        std::vector<int> r = rot;
        if (dir) std::reverse(r.begin(), r.end());
        for (size_t off = 0; off < n; ++off) {
            bool ok = true;
            for (size_t i = 0; i < n && ok; ++i) ok = r[(off + i) % n] == placed[i];
            if (ok) return true;
        }
    }
    return false;
}

}  // namespace

std::optional<FlatDrawing> catalog_search(const maps::CombinatorialMap& map,
                                          const flat::FlatSurface& surface,
                                          const Rational& lattice_step,
                                          const std::vector<Rational>& shift_set, double margin,
                                          long long node_budget) {
    if (!maps::is_triangulation(map))
        throw std::invalid_argument("catalog_search: map must be a triangulation");
    if (maps::euler_characteristic(map) != 0)
        throw std::invalid_argument("catalog_search: map is not flat");
    Rational ratio = surface.a / lattice_step;
    if (denominator(ratio) != 1)
        throw std::invalid_argument("catalog_search: lattice step must divide a");
    long long N = numerator(ratio).convert_to<long long>();
    if (N <= 0 || N > 64) throw std::invalid_argument("catalog_search: unusable lattice step");

    // Options: lattice points, then lattice points with shifts.
    std::vector<Option> options;
    std::vector<Rational> shifts{0};
    for (const auto& sh : shift_set) {
        shifts.push_back(sh);
        shifts.push_back(-sh);
    }
    for (long long i = 0; i < N; ++i) {
        for (long long j = 0; j < N; ++j) {
            for (const auto& sx : shifts) {
                for (const auto& sy : shifts) {
                    Option o;
                    o.xr = Rational(i) * lattice_step + sx;
                    o.ys = Rational(j, N);
                    o.yr = sy;
                    if (o.xr < 0 || o.xr >= surface.a) continue;
                    o.x = to_double(o.xr);
                    o.y = to_double(o.ys) * surface.b_num + to_double(o.yr);
                    if (o.y < 0 || o.y >= surface.b_num) continue;
                    options.push_back(o);
                }
            }
        }
    }

    // Placement order: greedy max-connectivity from the highest-degree vertex.
    auto verts = map.alive_vertices();
    std::vector<int> order;
    std::set<int> in_order;
    auto degree_of = [&](int v) { return map.degree(v); };
    int first = *std::max_element(verts.begin(), verts.end(),
                                  [&](int a, int b) { return degree_of(a) < degree_of(b); });
    order.push_back(first);
    in_order.insert(first);
    while (order.size() < verts.size()) {
        int best = -1, best_links = -1;
        for (int v : verts) {
            if (in_order.count(v)) continue;
            int links = 0;
            for (int w : map.neighbors(v)) links += in_order.count(w);
            if (links > best_links) {
                best_links = links;
                best = v;
            }
        }
        order.push_back(best);
        in_order.insert(best);
    }

    SearchState st{map, surface, margin, node_budget, order, {}, options, {}, {}, {}, {}, 0};
    st.choice.assign(order.size(), -1);
    st.pos.assign(map.rotation.size(), {0, 0});
    st.placed.assign(map.rotation.size(), 0);
    st.placed_nbrs.resize(order.size());
    for (size_t i = 0; i < order.size(); ++i) {
        std::set<int> before(order.begin(), order.begin() + i);
        for (int w : map.neighbors(order[i]))
            if (before.count(w)) st.placed_nbrs[i].push_back(w);
    }

    // Depth-first search with leaf verification.
    std::function<std::optional<FlatDrawing>(size_t)> dfs = [&](size_t slot)
        -> std::optional<FlatDrawing> {
        if (slot == st.order.size()) {
            // materialize exact drawing and verify fully
            FlatDrawing d;
            d.surface = surface;
            d.map = map;
            d.positions.resize(map.rotation.size());
            for (size_t i = 0; i < st.order.size(); ++i) {
                const Option& o = st.options[st.choice[i]];
                d.positions[st.order[i]] =
                    flat::surface_point(surface, o.xr, 0, o.yr, o.ys);
            }
            d.edge_lifts.resize(map.edge_sign.size());
            for (int e = 0; e < static_cast<int>(map.edge_sign.size()); ++e) {
                if (!map.edge_alive(e)) continue;
                int u = map.origin[2 * e], v = map.origin[2 * e + 1];
                auto near = detail::nearest_lifts(surface, st.pos[v], st.pos[u]);
                d.edge_lifts[e] = near.best;
            }
            if (verify_drawing(d, margin).pass()) return d;
            return std::nullopt;
        }
        for (size_t oi = 0; oi < st.options.size(); ++oi) {
            if (++st.nodes > st.budget) return std::nullopt;
            // Lattice translations act transitively on lattice points, so the
            // first vertex is pinned: fully on the torus, in x on the Klein
            // bottle (vertical translations are not isometries there).
            if (slot == 0 && st.options[oi].xr != 0) continue;
            if (slot == 0 && !surface.is_klein() &&
                (st.options[oi].ys != 0 || st.options[oi].yr != 0))
                continue;
            int v = st.order[slot];
            const Option& opt = st.options[oi];
            Pt pv{opt.x, opt.y};
            bool ok = true;
            for (int w : map.alive_vertices()) {
                if (!st.placed[w]) continue;
                if (detail::nearest_lifts(surface, st.pos[w], pv).best_dist < 10 * margin) {
                    ok = false;
                    break;
                }
            }
            size_t saved = st.segs.size();
            if (ok) {
                for (int w : st.placed_nbrs[slot]) {
                    auto near = detail::nearest_lifts(surface, st.pos[w], pv);
                    if (near.second_dist - near.best_dist <= margin) {
                        ok = false;
                        break;
                    }
                    Pt head = detail::deck_apply_num(surface, near.best.m, near.best.n, st.pos[w]);
                    if (!segments_clear(st, pv, head)) {
                        ok = false;
                        break;
                    }
                    st.segs.push_back({pv, head});
                }
            }
            if (ok) {
                st.pos[v] = pv;
                st.placed[v] = 1;
                // rotation-order pruning at v and its placed neighbors
                auto angles_at = [&](int x) {
                    std::vector<std::pair<double, int>> out;
                    for (int d : map.rotation[x]) {
                        int hvx = map.head(d);
                        if (!st.placed[hvx]) continue;
                        auto nearx = detail::nearest_lifts(surface, st.pos[hvx], st.pos[x]);
                        Pt lifted = detail::deck_apply_num(surface, nearx.best.m, nearx.best.n,
                                                           st.pos[hvx]);
                        out.push_back({std::atan2(lifted.y - st.pos[x].y, lifted.x - st.pos[x].x),
                                       hvx});
                    }
                    std::sort(out.begin(), out.end());
                    return out;
                };
                bool rot_ok = rotation_compatible(map, v, angles_at(v));
                for (int w : st.placed_nbrs[slot])
                    if (rot_ok) rot_ok = rotation_compatible(map, w, angles_at(w));
                if (rot_ok) {
                    st.choice[slot] = static_cast<int>(oi);
                    auto res = dfs(slot + 1);
                    if (res) return res;
                }
                st.placed[v] = 0;
            }
            st.segs.resize(saved);
        }
        return std::nullopt;
    };
    return dfs(0);
}

}  // namespace surfemb::femb
