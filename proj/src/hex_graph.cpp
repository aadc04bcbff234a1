#include "surfemb/hex_pipeline.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace surfemb::hexp {

int HexGraph::node_by_name(const std::string& n) const {
    for (size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].name == n) return static_cast<int>(i);
    return -1;
}

void validate_hexgraph(const HexGraph& g, const HexComplex& c) {
    int hexes = c.num_hexagons();
    std::set<std::string> names;
    std::set<std::pair<int, int>> side_slots;  // (pairing, order)
    for (const auto& n : g.nodes) {
        if (!names.insert(n.name).second)
            throw std::invalid_argument("hexgraph: duplicate node " + n.name);
        if (n.hex < 0 || n.hex >= hexes) throw std::invalid_argument("hexgraph: bad hexagon id");
        if (n.side >= 0) {
            if (n.side > 5) throw std::invalid_argument("hexgraph: bad side index");
            int pid = c.pairing_of[n.hex][n.side];
            if (!side_slots.insert({pid, n.order}).second)
                throw std::invalid_argument("hexgraph: duplicate attachment slot for " + n.name);
        }
    }
    // A node is usable in hexagon h iff interior to h or on a side touching h.
    auto touches = [&](int node, int hex) {
        const auto& n = g.nodes[node];
        if (n.side < 0) return n.hex == hex;
        if (n.hex == hex) return true;
        auto [ph, ps] = c.partner(n.hex, n.side);
        (void)ps;
        return ph == hex;
    };
    std::vector<int> seg_count_per_node(g.nodes.size(), 0);
    std::set<std::pair<int, int>> seen_pairs;
    for (const auto& s : g.segs) {
        if (s.u == s.v) throw std::invalid_argument("hexgraph: loop segment");
        if (!touches(s.u, s.hex) || !touches(s.v, s.hex))
            throw std::invalid_argument("hexgraph: segment endpoint not on its hexagon");
        auto key = std::minmax(s.u, s.v);
        if (!seen_pairs.insert({key.first, key.second}).second)
            throw std::invalid_argument("hexgraph: parallel segments");
        ++seg_count_per_node[s.u];
        ++seg_count_per_node[s.v];
    }
    // Side nodes are crossing points: exactly one segment on each side.
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        if (g.nodes[i].side < 0) continue;
        int in_own = 0, in_partner = 0;
        auto [ph, ps] = c.partner(g.nodes[i].hex, g.nodes[i].side);
        (void)ps;
        for (const auto& s : g.segs) {
            if (s.u != static_cast<int>(i) && s.v != static_cast<int>(i)) continue;
            if (s.hex == g.nodes[i].hex) ++in_own;
            if (s.hex == ph) ++in_partner;
        }
        if (g.nodes[i].hex == ph ? (in_own != 2) : (in_own != 1 || in_partner != 1))
            throw std::invalid_argument("hexgraph: attachment " + g.nodes[i].name +
                                        " must have one segment per adjacent hexagon");
    }
    // Interior nodes of degree >= 3 need rotations.
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        if (g.nodes[i].side < 0 && seg_count_per_node[i] >= 3 &&
            !g.rotations.count(static_cast<int>(i)))
            throw std::invalid_argument("hexgraph: interior node " + g.nodes[i].name +
                                        " of degree >= 3 needs a rotation");
    }
    // Paths cover every segment exactly once.
    std::set<std::pair<int, int>> covered;
    for (const auto& p : g.paths) {
        if (p.nodes.size() < 2) throw std::invalid_argument("hexgraph: path too short");
        for (size_t i = 0; i + 1 < p.nodes.size(); ++i) {
            auto key = std::minmax(p.nodes[i], p.nodes[i + 1]);
            if (!seen_pairs.count({key.first, key.second}))
                throw std::invalid_argument("hexgraph: path uses a missing segment");
            if (!covered.insert({key.first, key.second}).second)
                throw std::invalid_argument("hexgraph: segment used by two paths");
        }
    }
    if (covered.size() != g.segs.size())
        throw std::invalid_argument("hexgraph: segments not covered by paths");
}

std::string hexgraph_to_text(const HexGraph& g) {
    std::ostringstream os;
    os << "surfemb-hexgraph v1\n";
    os << "genus " << g.genus << "\n";
    for (const auto& n : g.nodes) {
        if (n.side < 0)
            os << "node " << n.name << " interior " << n.hex << "\n";
        else
            os << "node " << n.name << " side " << n.hex << " " << n.side << " " << n.order
               << "\n";
    }
    for (const auto& s : g.segs)
        os << "seg " << g.nodes[s.u].name << " " << g.nodes[s.v].name << " " << s.hex << "\n";
    for (const auto& [node, rot] : g.rotations) {
        os << "rot " << g.nodes[node].name;
        for (int w : rot) os << " " << g.nodes[w].name;
        os << "\n";
    }
    for (const auto& p : g.paths) {
        os << "path " << p.name;
        for (int v : p.nodes) os << " " << g.nodes[v].name;
        os << "\n";
    }
    return os.str();
}

HexGraph hexgraph_from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != "surfemb-hexgraph v1")
        throw std::invalid_argument("hexgraph file: bad header");
    HexGraph g;
    g.genus = -1;
    std::map<std::string, int> index;
    auto need = [&](const std::string& n) {
        auto it = index.find(n);
        if (it == index.end()) throw std::invalid_argument("hexgraph file: unknown node " + n);
        return it->second;
    };
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "genus") {
            ls >> g.genus;
        } else if (kw == "node") {
            HexGraph::Node n;
            std::string name, kind;
            ls >> name >> kind;
            n.name = name;
            if (kind == "interior") {
                ls >> n.hex;
                n.side = -1;
                n.order = -1;
            } else if (kind == "side") {
                ls >> n.hex >> n.side >> n.order;
            } else {
                throw std::invalid_argument("hexgraph file: bad node kind " + kind);
            }
            index[name] = static_cast<int>(g.nodes.size());
            g.nodes.push_back(n);
        } else if (kw == "seg") {
            std::string a, b;
            int hex;
            ls >> a >> b >> hex;
            g.segs.push_back({need(a), need(b), hex});
        } else if (kw == "rot") {
            std::string a;
            ls >> a;
            std::vector<int> rot;
            std::string w;
            while (ls >> w) rot.push_back(need(w));
            g.rotations[need(a)] = rot;
        } else if (kw == "path") {
            HexGraph::Path p;
            ls >> p.name;
            std::string w;
            while (ls >> w) p.nodes.push_back(need(w));
            g.paths.push_back(p);
        } else {
            throw std::invalid_argument("hexgraph file: unknown keyword " + kw);
        }
    }
    if (g.genus < 2) throw std::invalid_argument("hexgraph file: missing genus");
    return g;
}

// ---------------------------------------------------------------------------
// Test families.
// ---------------------------------------------------------------------------

HexGraph test_family(int genus, int variant) {
    HexComplex c = canonical_hex_decomposition(genus);
    HexGraph g;
    g.genus = genus;

    auto add_interior = [&](const std::string& name, int hex) {
        g.nodes.push_back({name, hex, -1, -1});
        return static_cast<int>(g.nodes.size()) - 1;
    };
    auto add_side = [&](const std::string& name, int hex, int side, int order) {
        g.nodes.push_back({name, hex, side, order});
        return static_cast<int>(g.nodes.size()) - 1;
    };
    auto add_seg = [&](int u, int v, int hex) { g.segs.push_back({u, v, hex}); };

    // Equator: alternate crossings of sides 1 and 3 trace a cycle through the
    // 2g-2 hexagons of one mirror class; two interior anchors split it into
    // two original edges whose arc count grows linearly with the genus.
    // Variant 1 starts in the other mirror class.
    {
        int start_hex = 0;
        if (variant == 1) {
            auto [p, ps] = c.partner(0, 0);
            (void)ps;
            start_hex = p;  // the side-0 neighbor lies in the other class
        }
        std::vector<std::pair<int, int>> hops;  // (hexagon, exit side)
        int hex = start_hex;
        int side = 1;
        do {
            hops.push_back({hex, side});
            auto [nh, ns] = c.partner(hex, side);
            (void)ns;
            hex = nh;
            side = side == 1 ? 3 : 1;
        } while (hex != start_hex || side != 1);
        if (static_cast<int>(hops.size()) != 2 * genus - 2)
            throw std::logic_error("equator does not close after 2g-2 hops");
        int half = static_cast<int>(hops.size()) / 2;
        std::vector<int> cross;
        for (size_t i = 0; i < hops.size(); ++i)
            cross.push_back(add_side("eq" + std::to_string(i), hops[i].first, hops[i].second, 0));
        int anchor_east = add_interior("eqA", hops[0].first);
        int anchor_west = add_interior("eqB", hops[half].first);
        // segment (cross[i-1] -> cross[i]) lies in hexagon hops[i].first;
        // anchors split the closing segments of hexagons hops[0] and hops[half].
        HexGraph::Path east{"equator-east", {anchor_east}};
        add_seg(anchor_east, cross[0], hops[0].first);
        east.nodes.push_back(cross[0]);
        for (int i = 1; i < half; ++i) {
            add_seg(cross[i - 1], cross[i], hops[i].first);
            east.nodes.push_back(cross[i]);
        }
        add_seg(cross[half - 1], anchor_west, hops[half].first);
        east.nodes.push_back(anchor_west);
        HexGraph::Path west{"equator-west", {anchor_west}};
        add_seg(anchor_west, cross[half], hops[half].first);
        west.nodes.push_back(cross[half]);
        for (size_t i = half + 1; i < hops.size(); ++i) {
            add_seg(cross[i - 1], cross[i], hops[i].first);
            west.nodes.push_back(cross[i]);
        }
        add_seg(cross.back(), anchor_east, hops[0].first);
        west.nodes.push_back(anchor_east);
        g.paths.push_back(east);
        g.paths.push_back(west);
    }

    // Meridian triangles: hexagons of the opposite mirror class pair up into
    // dominoes {A, A*s} joined by both their side-1 and side-5 pairings; a
    // 3-vertex cycle crosses the two pairings of its domino. One per domino,
    // so their number grows with g.
    {
        int base = variant == 0 ? c.partner(0, 0).first : 0;
        int hex = base;
        int side = 1;
        for (int k = 0; k < genus - 1; ++k) {
            int A = hex;  // walk position 2k
            int B = c.partner(A, 1).first;
            std::string tag = "m" + std::to_string(k) + "_";
            int v0 = add_interior(tag + "v", A);
            int z0 = add_interior(tag + "z", A);
            int y0 = add_interior(tag + "y", B);
            int a1 = add_side(tag + "a1", A, 1, 0);
            int a2 = add_side(tag + "a2", A, 5, 0);
            add_seg(v0, a1, A);
            add_seg(a1, y0, B);
            add_seg(y0, a2, B);
            add_seg(a2, z0, A);
            add_seg(z0, v0, A);
            g.paths.push_back({tag + "e1", {v0, a1, y0}});
            g.paths.push_back({tag + "e2", {y0, a2, z0}});
            g.paths.push_back({tag + "e3", {z0, v0}});
            // advance two hops along the side-1/3 walk
            hex = c.partner(hex, 1).first;
            hex = c.partner(hex, 3).first;
        }
    }

    // One floating triangle: single-arc edges inside a hexagon that hosts no
    // other piece of this drawing... the sigma1-image of the equator start is
    // in the same class but off the meridian bases only for variant layouts;
    // use the hexagon adjacent to the equator start across side 5.
    {
        int host = c.partner(variant == 0 ? 0 : c.partner(0, 0).first, 5).first;
        int t0 = add_interior("t0", host);
        int t1 = add_interior("t1", host);
        int t2 = add_interior("t2", host);
        add_seg(t0, t1, host);
        add_seg(t1, t2, host);
        add_seg(t2, t0, host);
        g.paths.push_back({"tri01", {t0, t1}});
        g.paths.push_back({"tri12", {t1, t2}});
        g.paths.push_back({"tri20", {t2, t0}});
    }

    validate_hexgraph(g, c);
    return g;
}

}  // namespace surfemb::hexp
