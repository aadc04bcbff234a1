#include "surfemb/flat_embedder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace surfemb::femb {

using flat::DeckElement;
using flat::FlatSurface;
using flat::PlanePoint;
using flat::SurfacePoint;

flat::FlatSurface paper_klein_surface() {
    return flat::make_surface(flat::SurfaceKind::klein, 1,
                              flat::Length::radical(Rational(4, 3), Rational(1, 100)));
}

maps::CombinatorialMap induced_map(const FlatSurface& surface,
                                   const std::vector<SurfacePoint>& positions,
                                   const std::vector<std::array<int, 2>>& edges,
                                   const std::vector<DeckElement>& lifts,
                                   const std::vector<std::string>& names) {
    size_t n = positions.size();
    std::vector<std::vector<std::pair<double, int>>> angular(n);  // (angle, neighbor)
    std::vector<std::pair<int, int>> negatives;
    for (size_t i = 0; i < edges.size(); ++i) {
        int u = edges[i][0], v = edges[i][1];
        DeckElement g = lifts[i];
        PlanePoint head = flat::apply_deck(g, positions[v].rep, surface);
        double ux = positions[u].rep.x.eval(surface), uy = positions[u].rep.y.eval(surface);
        double a1 = std::atan2(head.y.eval(surface) - uy, head.x.eval(surface) - ux);
        angular[u].push_back({a1, v});
        DeckElement gi = flat::inverse_deck(g, surface);
        PlanePoint tail = flat::apply_deck(gi, positions[u].rep, surface);
        double vx = positions[v].rep.x.eval(surface), vy = positions[v].rep.y.eval(surface);
        double a2 = std::atan2(tail.y.eval(surface) - vy, tail.x.eval(surface) - vx);
        angular[v].push_back({a2, u});
        if (surface.is_klein() && (g.m % 2 != 0)) negatives.push_back({std::min(u, v), std::max(u, v)});
    }
    std::vector<std::vector<int>> lists(n);
    for (size_t v = 0; v < n; ++v) {
        std::sort(angular[v].begin(), angular[v].end());
        for (auto& [a, w] : angular[v]) lists[v].push_back(w);
    }
    return maps::map_from_rotations(lists, negatives, names);
}

// -- drawing text format -----------------------------------------------------

std::string drawing_to_text(const FlatDrawing& d) {
    std::ostringstream os;
    os << "surfemb-drawing v1\n";
    os << "surface " << (d.surface.is_klein() ? "klein" : "torus") << " a "
       << rat_str(d.surface.a) << " b " << d.surface.b.str() << "\n";
    for (int v : d.map.alive_vertices()) {
        const auto& p = d.positions[v].rep;
        os << "vertex " << d.map.vertex_name[v] << " " << rat_str(p.x.r) << " " << rat_str(p.x.s)
           << " " << rat_str(p.y.r) << " " << rat_str(p.y.s) << "\n";
    }
    for (int e = 0; e < static_cast<int>(d.map.edge_sign.size()); ++e) {
        if (!d.map.edge_alive(e)) continue;
        int u = d.map.origin[2 * e], v = d.map.origin[2 * e + 1];
        os << "edge " << d.map.vertex_name[u] << " " << d.map.vertex_name[v] << " "
           << d.edge_lifts[e].m << " " << d.edge_lifts[e].n << "\n";
    }
    return os.str();
}

ParsedDrawing parse_drawing(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != "surfemb-drawing v1")
        throw std::invalid_argument("drawing file: bad header");
    ParsedDrawing out;
    bool have_surface = false;
    std::map<std::string, int> index;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "surface") {
            std::string kind, ka, a_txt, kb, b_txt;
            ls >> kind >> ka >> a_txt >> kb >> b_txt;
            if (ka != "a" || kb != "b") throw std::invalid_argument("drawing file: bad surface line");
            flat::SurfaceKind k = kind == "klein" ? flat::SurfaceKind::klein
                                                  : flat::SurfaceKind::torus;
            if (kind != "klein" && kind != "torus")
                throw std::invalid_argument("drawing file: unknown surface kind " + kind);
            out.surface = flat::make_surface(k, rat_parse(a_txt), flat::Length::parse(b_txt));
            have_surface = true;
        } else if (kw == "vertex") {
            if (!have_surface) throw std::invalid_argument("drawing file: vertex before surface");
            std::string name, xr, xs, yr, ys;
            ls >> name >> xr >> xs >> yr >> ys;
            if (index.count(name)) throw std::invalid_argument("drawing file: duplicate vertex");
            index[name] = static_cast<int>(out.names.size());
            out.names.push_back(name);
            SurfacePoint p{flat::plane_point(rat_parse(xr), rat_parse(xs), rat_parse(yr),
                                             rat_parse(ys))};
            out.positions.push_back(p);
        } else if (kw == "edge") {
            std::string un, vn;
            long long m, n;
            ls >> un >> vn >> m >> n;
            auto iu = index.find(un), iv = index.find(vn);
            if (iu == index.end() || iv == index.end())
                throw std::invalid_argument("drawing file: edge references unknown vertex");
            out.edges.push_back({iu->second, iv->second});
            out.lifts.push_back({m, n});
        } else {
            throw std::invalid_argument("drawing file: unknown keyword " + kw);
        }
    }
    if (!have_surface) throw std::invalid_argument("drawing file: missing surface line");
    return out;
}

FlatDrawing attach_map(const ParsedDrawing& p, const maps::CombinatorialMap& map) {
    FlatDrawing d;
    d.surface = p.surface;
    d.map = map;
    std::map<std::string, int> by_name;
    for (int v : map.alive_vertices()) by_name[map.vertex_name[v]] = v;
    if (by_name.size() != p.names.size())
        throw std::invalid_argument("attach_map: vertex count mismatch");
    d.positions.resize(map.rotation.size());
    std::vector<int> vertex_of(p.names.size());
    for (size_t i = 0; i < p.names.size(); ++i) {
        auto it = by_name.find(p.names[i]);
        if (it == by_name.end()) throw std::invalid_argument("attach_map: unknown vertex " + p.names[i]);
        vertex_of[i] = it->second;
        d.positions[it->second] = p.positions[i];
    }
    d.edge_lifts.resize(map.edge_sign.size());
    std::vector<char> seen(map.edge_sign.size(), 0);
    for (size_t i = 0; i < p.edges.size(); ++i) {
        int u = vertex_of[p.edges[i][0]], v = vertex_of[p.edges[i][1]];
        int dart = map.dart_between(u, v);
        if (dart < 0) throw std::invalid_argument("attach_map: edge not in map");
        int e = map.edge_of(dart);
        if (seen[e]) throw std::invalid_argument("attach_map: duplicate edge");
        seen[e] = 1;
        d.edge_lifts[e] = map.origin[2 * e] == u
                              ? p.lifts[i]
                              : flat::inverse_deck(p.lifts[i], d.surface);
    }
    for (int e = 0; e < static_cast<int>(map.edge_sign.size()); ++e)
        if (map.edge_alive(e) && !seen[e])
            throw std::invalid_argument("attach_map: drawing misses a map edge");
    return d;
}

FlatDrawing induce_map(const ParsedDrawing& p) {
    auto m = induced_map(p.surface, p.positions, p.edges, p.lifts, p.names);
    return attach_map(p, m);
}

// -- built-in drawings ---------------------------------------------------------

FlatDrawing k7_torus_drawing() {
    FlatSurface torus = flat::make_surface(flat::SurfaceKind::torus, 1, flat::Length::rational(1));
    std::vector<SurfacePoint> pos;
    std::vector<std::string> names;
    for (int k = 0; k < 7; ++k) {
        pos.push_back(flat::surface_point(torus, Rational(k, 7), 0, Rational(3 * k % 7, 7), 0));
        names.push_back("v" + std::to_string(k));
    }
    std::vector<std::array<int, 2>> edges;
    std::vector<DeckElement> lifts;
    // Generators of the lattice drawing: +1 -> (1,3)/7, +2 -> (2,-1)/7, +3 -> (3,2)/7.
    const std::array<std::array<long long, 2>, 3> vec = {{{1, 3}, {2, -1}, {3, 2}}};
    for (int k = 0; k < 7; ++k) {
        for (int gidx = 1; gidx <= 3; ++gidx) {
            int to = (k + gidx) % 7;
            edges.push_back({k, to});
            // Lift: head representative plus (m,n) must equal tail + vec/7.
            long long tx = k, ty = 3 * k % 7;
            long long hx = to, hy = 3 * to % 7;
            long long m = (tx + vec[gidx - 1][0] - hx) / 7;
            long long n = (ty + vec[gidx - 1][1] - hy) / 7;
            lifts.push_back({m, n});
        }
    }
    auto map = induced_map(torus, pos, edges, lifts, names);
    ParsedDrawing pd{torus, names, pos, edges, lifts};
    return attach_map(pd, map);
}

FlatDrawing grid_torus_drawing(int n) {
    if (n < 3) throw std::invalid_argument("grid size must be >= 3");
    FlatSurface torus = flat::make_surface(flat::SurfaceKind::torus, 1, flat::Length::rational(1));
    std::vector<SurfacePoint> pos;
    std::vector<std::string> names;
    auto id = [n](int i, int j) { return (i % n + n) % n * n + (j % n + n) % n; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            pos.push_back(flat::surface_point(torus, Rational(i, n), 0, Rational(j, n), 0));
            names.push_back("g" + std::to_string(i) + "_" + std::to_string(j));
        }
    std::vector<std::array<int, 2>> edges;
    std::vector<DeckElement> lifts;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            // right, up, and the short diagonal
            edges.push_back({id(i, j), id(i + 1, j)});
            lifts.push_back({i + 1 >= n ? 1 : 0, 0});
            edges.push_back({id(i, j), id(i, j + 1)});
            lifts.push_back({0, j + 1 >= n ? 1 : 0});
            edges.push_back({id(i, j), id(i + 1, j + 1)});
            lifts.push_back({i + 1 >= n ? 1 : 0, j + 1 >= n ? 1 : 0});
        }
    }
    auto map = induced_map(torus, pos, edges, lifts, names);
    ParsedDrawing pd{torus, names, pos, edges, lifts};
    return attach_map(pd, map);
}

namespace {

// The Moebius-band K6 drawing in the strip b/4 <= y <= 3b/4: boundary cycle
// a,b,c on the splitting circle, core cycle x,y,z at height b/2.
struct BandData {
    std::vector<std::string> names;
    std::vector<SurfacePoint> pos;
    std::vector<std::array<int, 2>> edges;
    std::vector<DeckElement> lifts;
};

BandData mb1_data(const FlatSurface& s) {
    BandData d;
    d.names = {"a", "b", "c", "x", "y", "z"};
    auto P = [&](const Rational& xr, const Rational& ys) {
        return flat::surface_point(s, xr, 0, 0, ys);
    };
    d.pos = {P(0, Rational(1, 4)),          P(Rational(2, 3), Rational(1, 4)),
             P(Rational(1, 3), Rational(3, 4)), P(0, Rational(1, 2)),
             P(Rational(1, 3), Rational(1, 2)), P(Rational(2, 3), Rational(1, 2))};
    auto E = [&](int u, int v, long long m, long long n) {
        d.edges.push_back({u, v});
        d.lifts.push_back({m, n});
    };
    // boundary triangle
    E(0, 1, 0, 0);    // a-b horizontal
    E(1, 2, 1, 0);    // b-c through the glide
    E(2, 0, 1, 0);    // c-a through the glide
    // core triangle
    E(3, 4, 0, 0);    // x-y
    E(4, 5, 0, 0);    // y-z
    E(5, 3, 1, 0);    // z-x through the glide
    // crosses
    E(0, 3, 0, 0);    // a-x vertical
    E(0, 4, 0, 0);    // a-y
    E(0, 5, -1, 0);   // a-z through the glide
    E(1, 3, 1, 0);    // b-x through the glide
    E(1, 4, 0, 0);    // b-y
    E(1, 5, 0, 0);    // b-z vertical
    E(2, 3, 0, 0);    // c-x
    E(2, 4, 0, 0);    // c-y vertical
    E(2, 5, 0, 0);    // c-z
    return d;
}

}  // namespace

FlatDrawing mb1_band_drawing() {
    FlatSurface s = paper_klein_surface();
    BandData d = mb1_data(s);
    auto map = induced_map(s, d.pos, d.edges, d.lifts, d.names);
    ParsedDrawing pd{s, d.names, d.pos, d.edges, d.lifts};
    return attach_map(pd, map);
}

FlatDrawing compose_mobius_pair(const FlatDrawing& band1, const FlatDrawing& band2) {
    const FlatSurface& s = band1.surface;
    if (!(s.a == band2.surface.a) || !(s.b == band2.surface.b) || s.kind != band2.surface.kind)
        throw std::invalid_argument("compose: bands on different surfaces");
    // The isometry (x, y) -> (x + a, y + b/2) maps the band strip onto its
    // complement and fixes the splitting circle pointwise. phi(p) is returned
    // as (representative, normalizer k) with phi(p) = k(representative).
    auto phi = [&](const SurfacePoint& p) {
        PlanePoint q = p.rep;
        q.x.r += s.a;
        q.y.s += Rational(1, 2);
        return flat::project_with_deck(q, s);
    };
    auto key = [&](const SurfacePoint& p) {
        return rat_str(p.rep.x.r) + "|" + rat_str(p.rep.x.s) + "|" + rat_str(p.rep.y.r) + "|" +
               rat_str(p.rep.y.s);
    };

    std::vector<std::string> names;
    std::vector<SurfacePoint> pos;
    std::map<std::string, int> by_pos;
    auto add_vertex = [&](const SurfacePoint& p, const std::string& name) {
        auto k = key(p);
        auto it = by_pos.find(k);
        if (it != by_pos.end()) return it->second;
        int id = static_cast<int>(names.size());
        by_pos[k] = id;
        names.push_back(name);
        pos.push_back(p);
        return id;
    };

    std::vector<std::array<int, 2>> edges;
    std::vector<DeckElement> lifts;
    std::map<std::pair<int, int>, DeckElement> seen;
    auto add_edge = [&](int u, int v, const DeckElement& g) {
        auto k = std::minmax(u, v);
        auto norm = u <= v ? g : flat::inverse_deck(g, s);
        auto it = seen.find({k.first, k.second});
        if (it != seen.end()) {
            if (!(it->second == norm))
                throw std::invalid_argument("compose: bands disagree on a shared edge");
            return;
        }
        seen[{k.first, k.second}] = norm;
        edges.push_back({k.first, k.second});
        lifts.push_back(norm);
    };

    // Band 1 verbatim.
    for (int v : band1.map.alive_vertices())
        add_vertex(band1.positions[v], band1.map.vertex_name[v]);
    for (int e = 0; e < static_cast<int>(band1.map.edge_sign.size()); ++e) {
        if (!band1.map.edge_alive(e)) continue;
        int u = band1.map.origin[2 * e], v = band1.map.origin[2 * e + 1];
        add_edge(by_pos.at(key(band1.positions[u])), by_pos.at(key(band1.positions[v])),
                 band1.edge_lifts[e]);
    }
    // Band 2 through the isometry; boundary vertices merge by position.
    std::vector<int> image(band2.map.rotation.size(), -1);
    std::vector<DeckElement> normalizer(band2.map.rotation.size());
    for (int v : band2.map.alive_vertices()) {
        auto [p, k] = phi(band2.positions[v]);
        image[v] = add_vertex(p, band2.map.vertex_name[v] + "'");
        normalizer[v] = k;
    }
    for (int e = 0; e < static_cast<int>(band2.map.edge_sign.size()); ++e) {
        if (!band2.map.edge_alive(e)) continue;
        int u = band2.map.origin[2 * e], v = band2.map.origin[2 * e + 1];
        // Conjugating sigma(m,n) by the translation (a, b/2) gives sigma(m,n)
        // for even m and sigma(m, n+1) for odd m; the vertex normalizers then
        // re-anchor the lift at the new representatives.
        DeckElement g = band2.edge_lifts[e];
        DeckElement conj = g.m % 2 == 0 ? g : DeckElement{g.m, g.n + 1};
        DeckElement lift = flat::compose_deck(
            flat::compose_deck(flat::inverse_deck(normalizer[u], s), conj, s), normalizer[v], s);
        add_edge(image[u], image[v], lift);
    }

    auto map = induced_map(s, pos, edges, lifts, names);
    ParsedDrawing pd{s, names, pos, edges, lifts};
    return attach_map(pd, map);
}

FlatDrawing kc1_klein_drawing() {
    auto band = mb1_band_drawing();
    return compose_mobius_pair(band, band);
}

bool random_vertex_split(maps::CombinatorialMap& m, Rng& rng,
                         maps::SplitScript* script_out) {
    auto verts = m.alive_vertices();
    int u = verts[rng.below(verts.size())];
    int deg = m.degree(u);
    if (deg < 4) return false;  // both sides need degree >= 3 afterwards
    int i = static_cast<int>(rng.below(deg));
    int j = static_cast<int>(rng.below(deg));
    if (i == j) return false;
    maps::SplitScript s;
    s.hub = u;
    s.removed_vertex = static_cast<int>(m.v_alive.size());
    s.removed_name = "w" + std::to_string(m.v_alive.size());
    auto& rot = m.rotation[u];
    s.apex_a = m.head(rot[i]);
    s.apex_b = m.head(rot[j]);
    for (int k = (i + 1) % deg; k != j; k = (k + 1) % deg) s.fan.push_back(m.head(rot[k]));
    s.a_before_u = true;
    s.b_before_u = false;
    auto grown = maps::split_vertex_combinatorial(m, s);
    if (!maps::is_triangulation(grown)) return false;
    m = std::move(grown);
    if (script_out) *script_out = s;
    return true;
}

}  // namespace surfemb::femb
