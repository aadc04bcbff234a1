#include "surfemb/maps.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace surfemb::maps {

namespace {

// Oriented triangle soup with helpers; used only to assemble the pants
// templates and their gluings, then converted to a rotation system.
struct TriMesh {
    int nv = 0;
    std::vector<std::array<int, 3>> tris;

    int add_vertex() { return nv++; }

    void subdivide() {
        std::map<std::pair<int, int>, int> mid;
        auto midpoint = [&](int u, int v) {
            auto key = std::minmax(u, v);
            auto it = mid.find(key);
            if (it != mid.end()) return it->second;
            int m = add_vertex();
            mid[key] = m;
            return m;
        };
        std::vector<std::array<int, 3>> next;
        for (auto& t : tris) {
            int a = t[0], b = t[1], c = t[2];
            int ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
            next.push_back({a, ab, ca});
            next.push_back({b, bc, ab});
            next.push_back({c, ca, bc});
            next.push_back({ab, bc, ca});
        }
        tris = std::move(next);
    }

    // Link cycle of v, oriented by the triangle fan (triangles (v,x,y) chain x->y).
    std::vector<int> link_cycle(int v) const {
        std::map<int, int> succ;
        for (auto& t : tris) {
            for (int i = 0; i < 3; ++i) {
                if (t[i] == v) succ[t[(i + 1) % 3]] = t[(i + 2) % 3];
            }
        }
        if (succ.empty()) throw std::logic_error("isolated vertex");
        std::vector<int> cycle;
        int start = succ.begin()->first;
        int cur = start;
        do {
            cycle.push_back(cur);
            cur = succ.at(cur);
        } while (cur != start);
        if (cycle.size() != succ.size()) throw std::logic_error("vertex star is not a disk");
        return cycle;
    }

    void remove_vertex_star(int v) {
        tris.erase(std::remove_if(tris.begin(), tris.end(),
                                  [&](const std::array<int, 3>& t) {
                                      return t[0] == v || t[1] == v || t[2] == v;
                                  }),
                   tris.end());
    }
};

struct PantsTemplate {
    TriMesh mesh;
    std::array<std::vector<int>, 3> boundary;  // oriented 4-cycles
};

// Octahedron subdivided three times, minus the stars of three pairwise
// adjacent original vertices. Boundary rings are the links of the removed
// vertices (4-cycles); any path between two rings has length 2^3 - 2 = 6.
PantsTemplate pants_template() {
    TriMesh m;
    for (int i = 0; i < 6; ++i) m.add_vertex();
    // 0=N 1=S 2..5 equator A,B,C,D; outward-oriented faces.
    m.tris = {{0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 2},
              {1, 3, 2}, {1, 4, 3}, {1, 5, 4}, {1, 2, 5}};
    for (int k = 0; k < 3; ++k) m.subdivide();
    PantsTemplate out;
    int removed[3] = {0, 2, 3};  // N, A, B: pairwise adjacent
    for (int i = 0; i < 3; ++i) out.boundary[i] = m.link_cycle(removed[i]);
    for (int i = 0; i < 3; ++i) m.remove_vertex_star(removed[i]);
    out.mesh = m;
    return out;
}

CombinatorialMap map_from_trimesh(const TriMesh& mesh, int nv) {
    // Rotation at v: chain the fan successors x -> y from triangles (v,x,y).
    std::vector<std::map<int, int>> succ(nv);
    for (auto& t : mesh.tris)
        for (int i = 0; i < 3; ++i) succ[t[i]][t[(i + 1) % 3]] = t[(i + 2) % 3];
    std::vector<std::vector<int>> lists(nv);
    for (int v = 0; v < nv; ++v) {
        if (succ[v].empty()) throw std::invalid_argument("unused vertex id in mesh");
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

}  // namespace

GgSpec gg_necklace(int genus) {
    if (genus < 2) throw std::invalid_argument("genus must be >= 2");
    GgSpec spec;
    spec.genus = genus;
    int n = 2 * genus - 2;
    for (int i = 0; i < n; ++i) spec.pants_type.push_back({i, (i + 1) % n});
    for (int j = 0; j + 1 < n; j += 2) spec.pants_type.push_back({j, j + 1});
    return spec;
}

GgSpec gg_k4() {
    GgSpec spec;
    spec.genus = 3;
    spec.pants_type = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    return spec;
}

CombinatorialMap build_gg(const GgSpec& spec) {
    if (spec.genus < 2) throw std::invalid_argument("genus must be >= 2");
    int pants_count = 2 * spec.genus - 2;
    int curve_count = 3 * spec.genus - 3;
    if (static_cast<int>(spec.pants_type.size()) != curve_count)
        throw std::invalid_argument("pants type must have 3g-3 curves");
    std::vector<int> degree(pants_count, 0);
    for (auto& [p, q] : spec.pants_type) {
        if (p < 0 || q < 0 || p >= pants_count || q >= pants_count || p == q)
            throw std::invalid_argument("pants type edge out of range (loops unsupported)");
        ++degree[p];
        ++degree[q];
    }
    for (int d : degree)
        if (d != 3) throw std::invalid_argument("pants type must be cubic");

    PantsTemplate tpl = pants_template();
    int verts_per_pants = tpl.mesh.nv;

    // Instantiate pants with disjoint vertex ranges, then identify boundary
    // rings along each curve via union-find.
    int total = pants_count * verts_per_pants;
    std::vector<int> parent(total);
    for (int i = 0; i < total; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int x, int y) { parent[find(x)] = find(y); };

    std::vector<int> slot_used(pants_count, 0);
    for (auto& [p, q] : spec.pants_type) {
        int sp = slot_used[p]++;
        int sq = slot_used[q]++;
        const auto& ring_p = tpl.boundary[sp];
        const auto& ring_q = tpl.boundary[sq];
        // Opposite orientations: pants q traverses the shared curve backwards.
        for (int i = 0; i < 4; ++i) {
            int vp = p * verts_per_pants + ring_p[i];
            int vq = q * verts_per_pants + ring_q[(4 - i) % 4];
            unite(vp, vq);
        }
    }

    std::map<int, int> compact;
    auto id_of = [&](int raw) {
        int root = find(raw);
        auto it = compact.find(root);
        if (it != compact.end()) return it->second;
        int id = static_cast<int>(compact.size());
        compact[root] = id;
        return id;
    };

    TriMesh glued;
    for (int p = 0; p < pants_count; ++p) {
        for (auto& t : tpl.mesh.tris) {
            glued.tris.push_back({id_of(p * verts_per_pants + t[0]),
                                  id_of(p * verts_per_pants + t[1]),
                                  id_of(p * verts_per_pants + t[2])});
        }
    }
    glued.nv = static_cast<int>(compact.size());
    CombinatorialMap m = map_from_trimesh(glued, glued.nv);
    m.check_valid();
    return m;
}

std::pair<long long, long long> triangle_census(const CombinatorialMap& m) {
    auto verts = m.alive_vertices();
    std::map<int, std::set<int>> adj;
    for (int v : verts) {
        auto nb = m.neighbors(v);
        adj[v] = std::set<int>(nb.begin(), nb.end());
    }
    std::set<std::array<int, 3>> cliques;
    for (int u : verts) {
        for (int v : adj[u]) {
            if (v <= u) continue;
            for (int w : adj[v]) {
                if (w <= v) continue;
                if (adj[u].count(w)) cliques.insert({u, v, w});
            }
        }
    }
    std::multiset<std::array<int, 3>> face_triples;
    for (auto& f : faces(m)) {
        if (f.size() != 3) continue;
        std::array<int, 3> t{m.origin[f[0]], m.origin[f[1]], m.origin[f[2]]};
        std::sort(t.begin(), t.end());
        face_triples.insert(t);
    }
    long long facial = 0;
    for (auto& t : cliques)
        if (face_triples.count(t)) ++facial;
    return {static_cast<long long>(cliques.size()), facial};
}

RigidityReport verify_gg_rigidity(const CombinatorialMap& m, int expected_genus) {
    RigidityReport rep;
    rep.vertices = m.num_vertices();
    rep.edges = m.num_edges();
    auto fs = faces(m);
    rep.faces_count = static_cast<int>(fs.size());
    auto [cliques, facial] = triangle_census(m);
    rep.triangles = static_cast<int>(cliques);
    rep.euler = rep.vertices - rep.edges + rep.faces_count;
    rep.expected_euler = expected_genus >= 0 ? 2 - 2 * expected_genus : rep.euler;

    // Certificate (i): v - e + t = chi with t the number of 3-cycles.
    rep.euler_ok = rep.vertices - rep.edges + rep.triangles == rep.expected_euler;
    if (!rep.euler_ok)
        rep.violations.push_back("v - e + t = " +
                                 std::to_string(rep.vertices - rep.edges + rep.triangles) +
                                 " differs from chi = " + std::to_string(rep.expected_euler));
    // (ii) every 3-cycle bounds a face.
    rep.all_3cycles_facial = facial == cliques;
    if (!rep.all_3cycles_facial)
        rep.violations.push_back(std::to_string(cliques - facial) +
                                 " 3-cycles do not bound faces");
    // (iii) 3-cycle count equals face count.
    rep.counts_match = cliques == rep.faces_count;
    if (!rep.counts_match)
        rep.violations.push_back("3-cycle count " + std::to_string(cliques) +
                                 " != face count " + std::to_string(rep.faces_count));
    return rep;
}

std::string RigidityReport::to_text() const {
    std::ostringstream os;
    os << "vertices " << vertices << " edges " << edges << " faces " << faces_count
       << " 3-cycles " << triangles << "\n";
    os << "euler " << euler << " expected " << expected_euler << "\n";
    os << "verdict " << (pass() ? "pass" : "fail") << "\n";
    for (auto& v : violations) os << "violation: " << v << "\n";
    return os.str();
}

}  // namespace surfemb::maps
