#include "surfemb/maps.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace surfemb::maps {

namespace {

std::vector<int> rotate_to_front(const std::vector<int>& cycle, int value) {
    auto it = std::find(cycle.begin(), cycle.end(), value);
    if (it == cycle.end()) throw std::logic_error("value not in cycle");
    std::vector<int> out(it, cycle.end());
    out.insert(out.end(), cycle.begin(), it);
    return out;
}

int common_neighbor_count(const CombinatorialMap& m, int u, int v) {
    auto nu = m.neighbors(u);
    auto nv = m.neighbors(v);
    std::set<int> su(nu.begin(), nu.end());
    int c = 0;
    for (int w : nv) c += su.count(w);
    return c;
}

}  // namespace

bool is_contractible(const CombinatorialMap& m, int edge) {
    if (!m.edge_alive(edge)) return false;
    int u = m.origin[2 * edge], v = m.origin[2 * edge + 1];
    if (u == v) return false;
    if (m.num_vertices() <= 4) return false;  // K4 guard: contraction must stay simple
    return common_neighbor_count(m, u, v) == 2;
}

std::pair<int, int> canonical_contraction_choice(const CombinatorialMap& m) {
    auto ce = contractible_edges(m);
    if (ce.empty()) return {-1, -1};
    std::set<int> contractible(ce.begin(), ce.end());
    int chosen = -1;
    for (int e : canonical_edge_order(m)) {
        if (contractible.count(e)) {
            chosen = e;
            break;
        }
    }
    auto order = canonical_vertex_order(m);
    std::vector<int> pos(m.rotation.size(), 1 << 30);
    for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
    int u = m.origin[2 * chosen], v = m.origin[2 * chosen + 1];
    return {chosen, pos[u] <= pos[v] ? u : v};
}

std::vector<int> contractible_edges(const CombinatorialMap& m) {
    if (!is_triangulation(m)) throw std::invalid_argument("contractible_edges: not a triangulation");
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(m.edge_sign.size()); ++e)
        if (m.edge_alive(e) && is_contractible(m, e)) out.push_back(e);
    return out;
}

ContractResult contract(const CombinatorialMap& input, int edge, int keep) {
    if (!is_contractible(input, edge))
        throw std::invalid_argument("edge is not contractible");
    CombinatorialMap m = input;
    int duv = 2 * edge, dvu = 2 * edge + 1;
    if (keep >= 0 && keep == m.origin[dvu]) std::swap(duv, dvu);
    int u = m.origin[duv], v = m.origin[dvu];
    if (keep >= 0 && keep != u) throw std::invalid_argument("keep is not an endpoint");
    if (m.edge_sign[edge] < 0) m.flip_vertex(v);

    std::vector<int> ru = rotate_to_front(m.rotation[u], duv);  // (duv, p1..pr)
    std::vector<int> rv = rotate_to_front(m.rotation[v], dvu);  // (dvu, q1..qs)
    if (ru.size() < 3 || rv.size() < 3) throw std::logic_error("degree < 3 in triangulation");

    // Faces u-v-A below and v-u-B above (interior-on-the-right tracing):
    // A = head(q1) duplicates head(p_r); B = head(q_s) duplicates head(p_1).
    int apex_a = m.head(rv[1]);
    int apex_b = m.head(rv.back());
    if (m.head(ru.back()) != apex_a || m.head(ru[1]) != apex_b)
        throw std::logic_error("contract: apex mismatch (not a triangulation?)");

    SplitScript script;
    script.hub = u;
    script.removed_vertex = v;
    script.removed_name = m.vertex_name[v];
    script.apex_a = apex_a;
    script.apex_b = apex_b;
    for (size_t i = 2; i + 1 < rv.size(); ++i) script.fan.push_back(m.head(rv[i]));

    // Record where the darts A->v and B->v sit relative to A->u and B->u.
    auto before_u = [&](int apex) {
        int dav = m.dart_between(apex, v);
        int dau = m.dart_between(apex, u);
        if (m.rot_next(dav) == dau) return true;
        if (m.rot_prev(dav) == dau) return false;
        throw std::logic_error("contract: apex darts not adjacent");
    };
    script.a_before_u = before_u(apex_a);
    script.b_before_u = before_u(apex_b);

    auto erase_dart = [&](int vtx, int d) {
        auto& r = m.rotation[vtx];
        r.erase(std::find(r.begin(), r.end(), d));
    };
    auto kill_edge = [&](int d) {
        int e = m.edge_of(d);
        m.edge_sign[e] = 0;
        m.origin[d] = -1;
        m.origin[m.twin(d)] = -1;
    };

    // Remove the duplicated edges v-A and v-B together with uv itself.
    erase_dart(apex_a, m.twin(rv[1]));
    erase_dart(apex_b, m.twin(rv.back()));
    int dva = rv[1], dvb = rv.back();

    // Merged rotation at u: (p1..pr, q2..q_{s-1}) with the fan redirected.
    std::vector<int> merged(ru.begin() + 1, ru.end());
    for (size_t i = 2; i + 1 < rv.size(); ++i) {
        m.origin[rv[i]] = u;
        merged.push_back(rv[i]);
    }
    m.rotation[u] = merged;
    m.rotation[v].clear();
    m.v_alive[v] = 0;
    kill_edge(duv);
    kill_edge(dva);
    kill_edge(dvb);

    m.check_valid();
    return {std::move(m), std::move(script)};
}

CombinatorialMap split_vertex_combinatorial(const CombinatorialMap& input, const SplitScript& s) {
    CombinatorialMap m = input;
    if (!m.v_alive[s.hub]) throw std::invalid_argument("split: hub vertex not alive");
    int u = s.hub;
    int v;
    if (s.removed_vertex < static_cast<int>(m.v_alive.size())) {
        if (m.v_alive[s.removed_vertex]) throw std::invalid_argument("split: target id alive");
        v = s.removed_vertex;
        m.v_alive[v] = 1;
        m.vertex_name[v] = s.removed_name;
    } else {
        v = m.add_vertex(s.removed_name);
    }

    // Triangles (u,v,A) and (u,v,B) must carry sign product +1 with
    // sign(uv) = +1, so the new edges inherit the signs of u-A and u-B.
    int eua = m.dart_between(u, s.apex_a);
    int eub = m.dart_between(u, s.apex_b);
    if (eua < 0 || eub < 0) throw std::invalid_argument("split: apex edges missing at hub");
    int duv = m.add_edge_darts(u, v);
    int dva = m.add_edge_darts(v, s.apex_a, m.edge_sign[m.edge_of(eua)]);
    int dvb = m.add_edge_darts(v, s.apex_b, m.edge_sign[m.edge_of(eub)]);

    // Move the fan darts u->w to v, in script order A-side to B-side.
    std::vector<int> fan_darts;
    for (int w : s.fan) {
        int d = m.dart_between(u, w);
        if (d < 0) throw std::invalid_argument("split: fan edge missing");
        m.origin[d] = v;
        fan_darts.push_back(d);
    }

    // v's rotation: (v->u, v->A, fan..., v->B).
    std::vector<int> rv{m.twin(duv), dva};
    rv.insert(rv.end(), fan_darts.begin(), fan_darts.end());
    rv.push_back(dvb);
    m.rotation[v] = rv;

    // u's rotation: drop the fan, insert u->v immediately before the dart u->B.
    std::vector<int> ru;
    int dub = m.dart_between(u, s.apex_b);
    int dua = m.dart_between(u, s.apex_a);
    if (dub < 0 || dua < 0) throw std::invalid_argument("split: apex edges missing at hub");
    std::set<int> fan_set(fan_darts.begin(), fan_darts.end());
    for (int d : m.rotation[u]) {
        if (fan_set.count(d)) continue;
        if (d == dub) ru.push_back(duv);
        ru.push_back(d);
    }
    m.rotation[u] = ru;

    auto insert_at_apex = [&](int apex, int new_dart, bool before) {
        int dau = m.dart_between(apex, u);
        auto& r = m.rotation[apex];
        auto it = std::find(r.begin(), r.end(), dau);
        if (it == r.end()) throw std::invalid_argument("split: apex not adjacent to hub");
        if (before)
            r.insert(it, new_dart);  // new dart's rot_next is A->u
        else
            r.insert(it + 1, new_dart);
    };
    insert_at_apex(s.apex_a, m.twin(dva), s.a_before_u);
    insert_at_apex(s.apex_b, m.twin(dvb), s.b_before_u);

    m.check_valid();
    return m;
}

}  // namespace surfemb::maps
