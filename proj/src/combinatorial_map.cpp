#include "surfemb/maps.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace surfemb::maps {

int CombinatorialMap::add_vertex(const std::string& name) {
    int v = static_cast<int>(rotation.size());
    rotation.emplace_back();
    vertex_name.push_back(name.empty() ? std::to_string(v) : name);
    v_alive.push_back(1);
    return v;
}

int CombinatorialMap::add_edge_darts(int u, int v, int sign) {
    int d = static_cast<int>(origin.size());
    origin.push_back(u);
    origin.push_back(v);
    edge_sign.push_back(static_cast<std::int8_t>(sign));
    return d;
}

int CombinatorialMap::num_vertices() const {
    int n = 0;
    for (char c : v_alive) n += c;
    return n;
}

int CombinatorialMap::num_edges() const {
    int n = 0;
    for (auto s : edge_sign) n += s != 0;
    return n;
}

std::vector<int> CombinatorialMap::alive_vertices() const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(v_alive.size()); ++v)
        if (v_alive[v]) out.push_back(v);
    return out;
}

std::vector<int> CombinatorialMap::alive_darts() const {
    std::vector<int> out;
    for (int d = 0; d < static_cast<int>(origin.size()); ++d)
        if (origin[d] >= 0) out.push_back(d);
    return out;
}

int CombinatorialMap::rot_next(int d) const {
    const auto& r = rotation[origin[d]];
    for (size_t i = 0; i < r.size(); ++i)
        if (r[i] == d) return r[(i + 1) % r.size()];
    throw std::logic_error("dart missing from its rotation");
}

int CombinatorialMap::rot_prev(int d) const {
    const auto& r = rotation[origin[d]];
    for (size_t i = 0; i < r.size(); ++i)
        if (r[i] == d) return r[(i + r.size() - 1) % r.size()];
    throw std::logic_error("dart missing from its rotation");
}

int CombinatorialMap::dart_between(int u, int v) const {
    for (int d : rotation[u])
        if (head(d) == v) return d;
    return -1;
}

std::vector<int> CombinatorialMap::neighbors(int v) const {
    std::vector<int> out;
    out.reserve(rotation[v].size());
    for (int d : rotation[v]) out.push_back(head(d));
    return out;
}

bool CombinatorialMap::is_simple() const {
    for (int v : alive_vertices()) {
        std::set<int> seen;
        for (int d : rotation[v]) {
            int h = head(d);
            if (h == v || !seen.insert(h).second) return false;
        }
    }
    return true;
}

bool CombinatorialMap::connected() const {
    auto verts = alive_vertices();
    if (verts.empty()) return true;
    std::set<int> seen{verts[0]};
    std::vector<int> stack{verts[0]};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int d : rotation[v]) {
            int h = head(d);
            if (seen.insert(h).second) stack.push_back(h);
        }
    }
    return seen.size() == verts.size();
}

bool CombinatorialMap::orientable() const {
    std::map<int, int> color;
    for (int root : alive_vertices()) {
        if (color.count(root)) continue;
        color[root] = 0;
        std::vector<int> stack{root};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int d : rotation[v]) {
                int h = head(d);
                int want = color[v] ^ (edge_sign[edge_of(d)] < 0 ? 1 : 0);
                auto it = color.find(h);
                if (it == color.end()) {
                    color[h] = want;
                    stack.push_back(h);
                } else if (it->second != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

void CombinatorialMap::flip_vertex(int v) {
    std::reverse(rotation[v].begin(), rotation[v].end());
    for (int d : rotation[v]) {
        if (head(d) == v) continue;  // loops unaffected (not used: maps are simple)
        int e = edge_of(d);
        edge_sign[e] = static_cast<std::int8_t>(-edge_sign[e]);
    }
}

void CombinatorialMap::check_valid() const {
    std::vector<char> seen(origin.size(), 0);
    for (int v = 0; v < static_cast<int>(rotation.size()); ++v) {
        if (!v_alive[v]) {
            if (!rotation[v].empty()) throw std::logic_error("dead vertex with darts");
            continue;
        }
        for (int d : rotation[v]) {
            if (d < 0 || d >= static_cast<int>(origin.size()) || origin[d] != v)
                throw std::logic_error("rotation lists a dart with wrong origin");
            if (seen[d]) throw std::logic_error("dart appears twice");
            seen[d] = 1;
        }
    }
    for (int d = 0; d < static_cast<int>(origin.size()); ++d) {
        if ((origin[d] >= 0) != (origin[twin(d)] >= 0))
            throw std::logic_error("half-dead edge");
        if (origin[d] >= 0 && !seen[d]) throw std::logic_error("alive dart missing from rotation");
        if (origin[d] >= 0 && edge_sign[edge_of(d)] == 0)
            throw std::logic_error("alive dart on dead edge");
    }
}

CombinatorialMap map_from_rotations(const std::vector<std::vector<int>>& neighbor_lists,
                                    const std::vector<std::pair<int, int>>& negative_edges,
                                    const std::vector<std::string>& names) {
    CombinatorialMap m;
    int n = static_cast<int>(neighbor_lists.size());
    for (int v = 0; v < n; ++v) m.add_vertex(names.empty() ? "" : names[v]);
    std::set<std::pair<int, int>> neg(negative_edges.begin(), negative_edges.end());
    for (auto& [u, v] : negative_edges) neg.insert({v, u});
    std::map<std::pair<int, int>, int> dart_of;  // (u,v) -> dart id
    for (int u = 0; u < n; ++u) {
        for (int v : neighbor_lists[u]) {
            if (v < 0 || v >= n) throw std::invalid_argument("neighbor out of range");
            auto it = dart_of.find({v, u});
            int d;
            if (it == dart_of.end()) {
                d = m.add_edge_darts(u, v, neg.count({u, v}) ? -1 : 1);
                dart_of[{u, v}] = d;
            } else {
                d = m.twin(it->second);
                if (dart_of.count({u, v})) throw std::invalid_argument("parallel edge in input");
                dart_of[{u, v}] = d;
            }
            m.rotation[u].push_back(d);
        }
    }
    for (auto& [key, d] : dart_of)
        if (!dart_of.count({key.second, key.first}))
            throw std::invalid_argument("asymmetric adjacency lists");
    m.check_valid();
    return m;
}

CombinatorialMap map_from_oriented_faces(int num_vertices,
                                         const std::vector<std::vector<int>>& face_walks) {
    std::vector<std::map<int, int>> succ(num_vertices);
    for (const auto& f : face_walks) {
        int k = static_cast<int>(f.size());
        for (int i = 0; i < k; ++i) {
            int v = f[i], nxt = f[(i + 1) % k], prv = f[(i + k - 1) % k];
            if (succ[v].count(nxt)) throw std::invalid_argument("inconsistent face orientation");
            succ[v][nxt] = prv;
        }
    }
    std::vector<std::vector<int>> lists(num_vertices);
    for (int v = 0; v < num_vertices; ++v) {
        if (succ[v].empty()) throw std::invalid_argument("vertex missing from faces");
        int start = succ[v].begin()->first;
        int cur = start;
        do {
            lists[v].push_back(cur);
            cur = succ[v].at(cur);
        } while (cur != start);
        if (lists[v].size() != succ[v].size())
            throw std::invalid_argument("vertex link is not a single cycle");
    }
    return map_from_rotations(lists);
}

// ---------------------------------------------------------------------------
// Face tracing. Flags are (dart, side); the walk permutation crosses the
// current edge (flipping side on negative signs) and then turns by the
// rotation at the new vertex, direction depending on side. Every face is
// traced once per direction, so the face count is half the orbit count.
// ---------------------------------------------------------------------------

namespace {

struct FlagWalker {
    const CombinatorialMap& m;
    explicit FlagWalker(const CombinatorialMap& m) : m(m) {}

    std::pair<int, int> step(int d, int s) const {
        int t = m.twin(d);
        int s2 = s ^ (m.edge_sign[m.edge_of(d)] < 0 ? 1 : 0);
        int nd = s2 == 0 ? m.rot_next(t) : m.rot_prev(t);
        return {nd, s2};
    }
};

}  // namespace

std::vector<std::vector<int>> faces(const CombinatorialMap& m) {
    if (!m.connected()) throw std::invalid_argument("faces: map must be connected");
    FlagWalker walker(m);
    bool all_positive = true;
    for (int d : m.alive_darts())
        if (m.edge_sign[m.edge_of(d)] < 0) all_positive = false;
    if (all_positive) {
        // Side-0 orbits are exactly the faces, one traversal each; this also
        // disambiguates maps where both faces of a cycle share a dart walk.
        std::set<int> visited;
        std::vector<std::vector<int>> out;
        for (int d0 : m.alive_darts()) {
            if (visited.count(d0)) continue;
            std::vector<int> walk;
            int d = d0;
            do {
                visited.insert(d);
                walk.push_back(d);
                d = walker.step(d, 0).first;
            } while (d != d0);
            out.push_back(std::move(walk));
        }
        return out;
    }
    std::map<std::pair<int, int>, int> orbit_of;
    std::vector<std::vector<int>> walks;  // dart sequence per orbit
    std::vector<std::pair<int, int>> first_flag;
    for (int d0 : m.alive_darts()) {
        for (int s0 = 0; s0 < 2; ++s0) {
            if (orbit_of.count({d0, s0})) continue;
            int id = static_cast<int>(walks.size());
            std::vector<int> walk;
            int d = d0, s = s0;
            do {
                orbit_of[{d, s}] = id;
                walk.push_back(d);
                auto [nd, ns] = walker.step(d, s);
                d = nd;
                s = ns;
            } while (!(d == d0 && s == s0));
            walks.push_back(std::move(walk));
            first_flag.push_back({d0, s0});
        }
    }
    // Each face is traced once per direction; the mirror of flag (d,s) is
    // (twin(d), 1-(s^neg)) -- same edge side, opposite direction. Keep one
    // orbit per mirror pair.
    std::vector<std::vector<int>> out;
    std::vector<char> used(walks.size(), 0);
    for (size_t i = 0; i < walks.size(); ++i) {
        if (used[i]) continue;
        used[i] = 1;
        auto [d0, s0] = first_flag[i];
        int neg = m.edge_sign[m.edge_of(d0)] < 0 ? 1 : 0;
        auto it = orbit_of.find({m.twin(d0), 1 - (s0 ^ neg)});
        if (it == orbit_of.end() || it->second == static_cast<int>(i) || used[it->second])
            throw std::logic_error("face orbit without a distinct mirror partner");
        used[it->second] = 1;
        out.push_back(walks[i]);
    }
    return out;
}

int euler_characteristic(const CombinatorialMap& m) {
    return m.num_vertices() - m.num_edges() + static_cast<int>(faces(m).size());
}

bool is_triangulation(const CombinatorialMap& m) {
    if (!m.is_simple()) return false;
    for (const auto& f : faces(m))
        if (f.size() != 3) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Gem view: flags with three involutions. Canonical labeling by BFS from
// every start flag, taking the lexicographically least transition table.
// Two maps are isomorphic iff their canonical codes coincide.
// ---------------------------------------------------------------------------

namespace {

struct Gem {
    // flag = 2*dart + side
    std::vector<int> a0, a1, a2;
    std::vector<int> flag_ids;  // the flags actually alive, ascending

    explicit Gem(const CombinatorialMap& m) {
        int nf = 2 * static_cast<int>(m.origin.size());
        a0.assign(nf, -1);
        a1.assign(nf, -1);
        a2.assign(nf, -1);
        for (int d : m.alive_darts()) {
            for (int s = 0; s < 2; ++s) {
                int f = 2 * d + s;
                flag_ids.push_back(f);
                int neg = m.edge_sign[m.edge_of(d)] < 0 ? 1 : 0;
                a0[f] = 2 * m.twin(d) + (s ^ neg);
                a1[f] = s == 0 ? 2 * m.rot_next(d) + 1 : 2 * m.rot_prev(d);
                a2[f] = 2 * d + (1 - s);
            }
        }
        std::sort(flag_ids.begin(), flag_ids.end());
    }

    const std::vector<int>& gen(int k) const { return k == 0 ? a0 : (k == 1 ? a1 : a2); }

    // BFS labeling from a start flag; code = for every labeled flag in order,
    // the labels of its three images.
    std::vector<std::uint32_t> code_from(int start) const {
        std::vector<int> label(a0.size(), -1);
        std::vector<int> order;
        order.reserve(flag_ids.size());
        label[start] = 0;
        order.push_back(start);
        for (size_t i = 0; i < order.size(); ++i) {
            int f = order[i];
            for (int k = 0; k < 3; ++k) {
                int g = gen(k)[f];
                if (label[g] < 0) {
                    label[g] = static_cast<int>(order.size());
                    order.push_back(g);
                }
            }
        }
        std::vector<std::uint32_t> code;
        code.reserve(order.size() * 3);
        for (int f : order)
            for (int k = 0; k < 3; ++k) code.push_back(static_cast<std::uint32_t>(label[gen(k)[f]]));
        return code;
    }
};

}  // namespace

std::vector<std::uint32_t> canonical_code(const CombinatorialMap& m) {
    Gem gem(m);
    std::vector<std::uint32_t> best;
    for (int f : gem.flag_ids) {
        auto code = gem.code_from(f);
        if (best.empty() || code < best) best = std::move(code);
    }
    return best;
}

std::optional<MapIsomorphism> find_isomorphism(const CombinatorialMap& a,
                                               const CombinatorialMap& b) {
    if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges())
        return std::nullopt;
    Gem ga(a), gb(b);
    if (ga.flag_ids.size() != gb.flag_ids.size()) return std::nullopt;
    if (ga.flag_ids.empty()) return MapIsomorphism{};
    // Anchor at the canonical start flag of `a` so the chosen isomorphism is
    // independent of the labeling of `a` (up to automorphisms).
    int fa = ga.flag_ids.front();
    {
        std::vector<std::uint32_t> best;
        for (int f : ga.flag_ids) {
            auto code = ga.code_from(f);
            if (best.empty() || code < best) {
                best = std::move(code);
                fa = f;
            }
        }
    }
    for (int fb : gb.flag_ids) {
        // Propagate fa -> fb through the generators.
        std::map<int, int> img{{fa, fb}};
        std::vector<int> stack{fa};
        bool ok = true;
        while (!stack.empty() && ok) {
            int f = stack.back();
            stack.pop_back();
            for (int k = 0; k < 3 && ok; ++k) {
                int g = ga.gen(k)[f];
                int want = gb.gen(k)[img[f]];
                auto it = img.find(g);
                if (it == img.end()) {
                    img[g] = want;
                    stack.push_back(g);
                } else if (it->second != want) {
                    ok = false;
                }
            }
        }
        if (!ok || img.size() != ga.flag_ids.size()) continue;
        // Injectivity on flags.
        std::set<int> values;
        for (auto& [k, v] : img) values.insert(v);
        if (values.size() != img.size()) continue;
        MapIsomorphism iso;
        iso.vertex_image.assign(a.rotation.size(), -1);
        bool consistent = true;
        for (auto& [f, g] : img) {
            int va = a.origin[f / 2];
            int vb = b.origin[g / 2];
            if (iso.vertex_image[va] < 0)
                iso.vertex_image[va] = vb;
            else if (iso.vertex_image[va] != vb)
                consistent = false;
        }
        if (consistent) return iso;
    }
    return std::nullopt;
}

std::vector<MapIsomorphism> find_all_isomorphisms(const CombinatorialMap& a,
                                               const CombinatorialMap& b) {
    std::vector<MapIsomorphism> out;
    if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return out;
    Gem ga(a), gb(b);
    if (ga.flag_ids.size() != gb.flag_ids.size()) return out;
    if (ga.flag_ids.empty()) return out;
    int fa = ga.flag_ids.front();
    std::set<std::vector<int>> seen;
    for (int fb : gb.flag_ids) {
        std::map<int, int> img{{fa, fb}};
        std::vector<int> stack{fa};
        bool ok = true;
        while (!stack.empty() && ok) {
            int f = stack.back();
            stack.pop_back();
            for (int k = 0; k < 3 && ok; ++k) {
                int g = ga.gen(k)[f];
                int want = gb.gen(k)[img[f]];
                auto it = img.find(g);
                if (it == img.end()) {
                    img[g] = want;
                    stack.push_back(g);
                } else if (it->second != want) {
                    ok = false;
                }
            }
        }
        if (!ok || img.size() != ga.flag_ids.size()) continue;
        std::set<int> values;
        for (auto& [k, v] : img) values.insert(v);
        if (values.size() != img.size()) continue;
        MapIsomorphism iso;
        iso.vertex_image.assign(a.rotation.size(), -1);
        bool consistent = true;
        for (auto& [f, g] : img) {
            int va = a.origin[f / 2];
            int vb = b.origin[g / 2];
            if (iso.vertex_image[va] < 0)
                iso.vertex_image[va] = vb;
            else if (iso.vertex_image[va] != vb)
                consistent = false;
        }
        if (consistent && seen.insert(iso.vertex_image).second) out.push_back(std::move(iso));
    }
    return out;
}

namespace {

// Canonical BFS flag order of the best start (ties broken by flag id), used
// to derive relabeling-invariant vertex and edge orders.
std::vector<int> canonical_flag_order(const CombinatorialMap& m) {
    Gem gem(m);
    std::vector<std::uint32_t> best;
    int best_start = -1;
    for (int f : gem.flag_ids) {
        auto code = gem.code_from(f);
        if (best.empty() || code < best) {
            best = std::move(code);
            best_start = f;
        }
    }
    std::vector<int> label(gem.a0.size(), -1);
    std::vector<int> order{best_start};
    label[best_start] = 0;
    for (size_t i = 0; i < order.size(); ++i) {
        int f = order[i];
        for (int k = 0; k < 3; ++k) {
            int g = gem.gen(k)[f];
            if (label[g] < 0) {
                label[g] = static_cast<int>(order.size());
                order.push_back(g);
            }
        }
    }
    return order;
}

}  // namespace

std::vector<int> canonical_vertex_order(const CombinatorialMap& m) {
    std::vector<int> out;
    std::set<int> seen;
    for (int f : canonical_flag_order(m)) {
        int v = m.origin[f / 2];
        if (seen.insert(v).second) out.push_back(v);
    }
    return out;
}

std::vector<int> canonical_edge_order(const CombinatorialMap& m) {
    std::vector<int> out;
    std::set<int> seen;
    for (int f : canonical_flag_order(m)) {
        int e = m.edge_of(f / 2);
        if (seen.insert(e).second) out.push_back(e);
    }
    return out;
}

}  // namespace surfemb::maps
