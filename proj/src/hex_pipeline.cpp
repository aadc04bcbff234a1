#include "surfemb/hex_pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <queue>
#include <tuple>
#include <set>
#include <sstream>
#include <stdexcept>

namespace surfemb::hexp {

using hyp::HPoint;
using hyp::HSegment;

namespace {

struct LocalDisk {
    maps::DiskMap disk;
    std::vector<int> local_of_node;            // hexgraph node -> local vertex (-1 none)
    std::vector<HPoint> fixed_pos;             // per local vertex (boundary only)
    std::vector<char> is_boundary;
    std::map<int, std::vector<int>> seg_chain;  // seg index -> local vertex chain u..v
};

// Builds the local disk map of one hexagon: corners, attachments, interior
// nodes, boundary cycle, bridges for floating components, dividing-edge
// subdivision, optional uniqueness subdivision, stellation.
LocalDisk build_local_disk(const HexGraph& g, const HexComplex& c, const hyp::Hexagon& hex,
                           int h, const PipelineConfig& cfg) {
    LocalDisk out;
    maps::CombinatorialMap m;

    // corners 0..5
    std::vector<int> corner(6);
    for (int k = 0; k < 6; ++k) corner[k] = m.add_vertex("c" + std::to_string(k));

    // attachments per side, ordered along t
    out.local_of_node.assign(g.nodes.size(), -1);
    std::vector<std::vector<int>> atts(6);  // local ids per side in t order
    std::vector<HPoint> att_pos_store;
    std::vector<double> tvals;
    for (int s = 0; s < 6; ++s) {
        int pid = c.pairing_of[h][s];
        std::vector<std::pair<int, int>> found;  // (order, node)
        for (size_t i = 0; i < g.nodes.size(); ++i) {
            const auto& n = g.nodes[i];
            if (n.side < 0) continue;
            if (c.pairing_of[n.hex][n.side] != pid) continue;
            found.push_back({n.order, static_cast<int>(i)});
        }
        std::sort(found.begin(), found.end());
        int k = static_cast<int>(found.size());
        for (int i = 0; i < k; ++i) {
            int node = found[i].second;
            int lv = m.add_vertex(g.nodes[node].name);
            out.local_of_node[node] = lv;
            atts[s].push_back(lv);
        }
        (void)k;
    }

    // interior nodes
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        if (g.nodes[i].side < 0 && g.nodes[i].hex == h)
            out.local_of_node[i] = m.add_vertex(g.nodes[i].name);
    }

    // boundary cycle
    std::vector<int> cycle;
    for (int s = 0; s < 6; ++s) {
        cycle.push_back(corner[s]);
        for (int lv : atts[s]) cycle.push_back(lv);
    }
    int B = static_cast<int>(cycle.size());

    // adjacency lists under construction: per vertex, list of neighbors in
    // rotation order; boundary vertices are [next, interiors..., prev].
    std::vector<std::vector<int>> rot(m.rotation.size());
    std::map<std::pair<int, int>, int> seg_of_pair;
    std::vector<std::vector<int>> graph_edges;  // local pairs for this hexagon
    for (size_t si = 0; si < g.segs.size(); ++si) {
        if (g.segs[si].hex != h) continue;
        int lu = out.local_of_node[g.segs[si].u];
        int lv = out.local_of_node[g.segs[si].v];
        if (lu < 0 || lv < 0) throw std::logic_error("hexgraph segment endpoint missing locally");
        graph_edges.push_back({lu, lv, static_cast<int>(si)});
        seg_of_pair[{std::min(lu, lv), std::max(lu, lv)}] = static_cast<int>(si);
        out.seg_chain[static_cast<int>(si)] = {lu, lv};
    }

    // interior rotations (given or degree <= 2 arbitrary)
    std::vector<std::vector<int>> nbrs(m.rotation.size());
    for (auto& e : graph_edges) {
        nbrs[e[0]].push_back(e[1]);
        nbrs[e[1]].push_back(e[0]);
    }
    std::vector<char> on_boundary(m.rotation.size(), 0);
    for (int v : cycle) on_boundary[v] = 1;

    for (size_t i = 0; i < g.nodes.size(); ++i) {
        int lv = out.local_of_node[i];
        if (lv < 0 || on_boundary[lv]) continue;
        if (nbrs[lv].size() >= 3) {
            auto it = g.rotations.find(static_cast<int>(i));
            if (it == g.rotations.end())
                throw std::invalid_argument("missing rotation for " + g.nodes[i].name);
            for (int w : it->second) {
                int lw = out.local_of_node[w];
                if (lw < 0) throw std::invalid_argument("rotation references other hexagon");
                rot[lv].push_back(lw);
            }
        } else {
            rot[lv] = nbrs[lv];
        }
    }

    // boundary rotations: [next, graph neighbors, prev]
    for (int i = 0; i < B; ++i) {
        int v = cycle[i];
        int nxt = cycle[(i + 1) % B], prv = cycle[(i + B - 1) % B];
        rot[v].push_back(nxt);
        for (int w : nbrs[v]) rot[v].push_back(w);
        rot[v].push_back(prv);
    }

    // floating components: bridge them to corner 0
    {
        std::vector<int> comp(m.rotation.size(), -1);
        int ncomp = 0;
        for (int v = 0; v < static_cast<int>(m.rotation.size()); ++v) {
            if (comp[v] >= 0) continue;
            // BFS over graph edges and boundary cycle
            std::vector<int> stack{v};
            comp[v] = ncomp;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (int w : nbrs[x])
                    if (comp[w] < 0) {
                        comp[w] = ncomp;
                        stack.push_back(w);
                    }
                if (on_boundary[x]) {
                    for (int w : cycle)
                        if (comp[w] < 0) {
                            comp[w] = ncomp;
                            stack.push_back(w);
                        }
                }
            }
            ++ncomp;
        }
        int boundary_comp = comp[corner[0]];
        std::set<int> bridged;
        for (int v = 0; v < static_cast<int>(m.rotation.size()); ++v) {
            if (comp[v] == boundary_comp || bridged.count(comp[v])) continue;
            bridged.insert(comp[v]);
            // bridge corner0 -> v; insert at corner0 before the final-prev slot
            rot[corner[0]].insert(rot[corner[0]].end() - 1, v);
            rot[v].push_back(corner[0]);
            nbrs[corner[0]].push_back(v);
            nbrs[v].push_back(corner[0]);
        }
    }

    auto mm = maps::map_from_rotations(rot, {}, [&] {
        std::vector<std::string> names;
        for (size_t i = 0; i < m.rotation.size(); ++i) names.push_back(m.vertex_name[i]);
        return names;
    }());

    // outer face: the forward boundary walk from corner0 -> next
    maps::DiskMap disk{mm, {}};
    {
        int d0 = mm.dart_between(cycle[0], cycle[1]);
        std::vector<int> walk;
        int d = d0;
        do {
            walk.push_back(d);
            d = mm.rot_next(mm.twin(d));
        } while (d != d0);
        if (static_cast<int>(walk.size()) != B)
            throw std::logic_error("outer boundary trace has wrong length");
        disk.outer = walk;
    }

    // local pair -> seg chains already seeded; subdivision helper
    auto subdivide_local = [&](int lu, int lv) {
        auto& dm = disk.map;
        int dart = dm.dart_between(lu, lv);
        if (dart < 0) throw std::logic_error("subdivide: edge missing");
        int mid = dm.add_vertex();
        int d_um = dm.add_edge_darts(lu, mid);
        int d_mv = dm.add_edge_darts(mid, lv);
        auto& ru = dm.rotation[lu];
        *std::find(ru.begin(), ru.end(), dart) = d_um;
        auto& rv = dm.rotation[lv];
        *std::find(rv.begin(), rv.end(), dm.twin(dart)) = dm.twin(d_mv);
        dm.origin[dart] = -1;
        dm.origin[dm.twin(dart)] = -1;
        dm.edge_sign[dm.edge_of(dart)] = 0;
        dm.rotation[mid] = {dm.twin(d_um), d_mv};
        return mid;
    };
    auto subdivide_chain = [&](int si) {
        auto& chain = out.seg_chain[si];
        std::vector<int> grown{chain.front()};
        for (size_t i = 0; i + 1 < chain.size(); ++i) {
            int mid = subdivide_local(chain[i], chain[i + 1]);
            grown.push_back(mid);
            grown.push_back(chain[i + 1]);
        }
        chain = grown;
    };

    // dividing edges: graph edges between non-consecutive boundary vertices
    {
        std::map<int, int> pos;
        for (int i = 0; i < B; ++i) pos[cycle[i]] = i;
        for (auto& e : graph_edges) {
            auto iu = pos.find(e[0]), iv = pos.find(e[1]);
            if (iu == pos.end() || iv == pos.end()) continue;
            int gap = std::abs(iu->second - iv->second);
            gap = std::min(gap, B - gap);
            if (gap != 1) subdivide_chain(e[2]);
        }
    }

    if (cfg.uniqueness_subdivision)
        for (auto& e : graph_edges) subdivide_chain(e[2]);

    disk = maps::triangulate_disk(disk);

    // fixed positions: corners at the hexagon vertices, attachments evenly
    // spaced (phase-shifted) along their sides
    out.fixed_pos.assign(disk.map.rotation.size(), HPoint{});
    out.is_boundary.assign(disk.map.rotation.size(), 0);
    for (int k = 0; k < 6; ++k) {
        out.fixed_pos[corner[k]] = hex.vertices[k];
        out.is_boundary[corner[k]] = 1;
    }
    for (int s = 0; s < 6; ++s) {
        int k = static_cast<int>(atts[s].size());
        for (int i = 0; i < k; ++i) {
            double t = (i + 1 + cfg.phase) / (k + 1);
            out.fixed_pos[atts[s][i]] = hex.side_point(s, t);
            out.is_boundary[atts[s][i]] = 1;
        }
    }
    out.disk = disk;
    return out;
}

}  // namespace

HexEmbedResult embed_on_genus_g(const HexGraph& g, const PipelineConfig& cfg) {
    HexComplex c = canonical_hex_decomposition(g.genus);
    validate_hexgraph(g, c);
    hyp::Hexagon hex = hyp::regular_right_angled_hexagon();

    int hexes = c.num_hexagons();
    std::vector<LocalDisk> locals;
    std::vector<hyp::TutteResult> solutions;
    HexEmbedResult out;
    for (int h = 0; h < hexes; ++h) {
        LocalDisk ld = build_local_disk(g, c, hex, h, cfg);
        hyp::BoundaryAssignment asg;
        asg.fixed.resize(ld.disk.map.rotation.size());
        for (int v = 0; v < static_cast<int>(ld.disk.map.rotation.size()); ++v)
            if (ld.is_boundary[v]) asg.fixed[v] = ld.fixed_pos[v];
        asg.weights.assign(ld.disk.map.edge_sign.size(), 1.0);
        hyp::TutteResult sol;
        try {
            sol = hyp::tutte_embed(hex, ld.disk, asg, cfg.tol, cfg.max_sweeps);
        } catch (const std::exception& e) {
            throw std::runtime_error("hexagon " + std::to_string(h) + ": " + e.what());
        }
        if (!sol.diag.certificate())
            out.diag.all_certificates = false;
        out.diag.per_hexagon.push_back(sol.diag);
        locals.push_back(std::move(ld));
        solutions.push_back(std::move(sol));
    }

    // assemble arcs per original edge
    out.drawing.genus = g.genus;
    for (const auto& path : g.paths) {
        std::vector<ArcRecord> arcs;
        int crossings = 0;
        for (size_t i = 0; i + 1 < path.nodes.size(); ++i) {
            int u = path.nodes[i], v = path.nodes[i + 1];
            if (g.nodes[u].side >= 0) ++crossings;
            // locate the segment record
            int seg_index = -1, hexid = -1;
            for (size_t si = 0; si < g.segs.size(); ++si) {
                if ((g.segs[si].u == u && g.segs[si].v == v) ||
                    (g.segs[si].u == v && g.segs[si].v == u)) {
                    seg_index = static_cast<int>(si);
                    hexid = g.segs[si].hex;
                    break;
                }
            }
            if (seg_index < 0) throw std::logic_error("path references missing segment");
            const auto& ld = locals[hexid];
            auto chain = ld.seg_chain.at(seg_index);
            if (ld.local_of_node[u] != chain.front()) std::reverse(chain.begin(), chain.end());
            const auto& pos = solutions[hexid].positions;
            for (size_t t = 0; t + 1 < chain.size(); ++t)
                arcs.push_back({hexid, {pos[chain[t]], pos[chain[t + 1]]}});
        }
        out.drawing.edge_names.push_back(path.name);
        out.drawing.arcs.push_back(std::move(arcs));
        out.drawing.max_arcs_per_edge =
            std::max(out.drawing.max_arcs_per_edge,
                     static_cast<int>(out.drawing.arcs.back().size()));
        out.drawing.max_side_crossings = std::max(out.drawing.max_side_crossings, crossings);
    }
    out.diag.max_arcs_per_edge = out.drawing.max_arcs_per_edge;
    out.diag.reported_bound = cfg.arc_constant * g.genus;
    return out;
}

CrossingReport count_crossings(const PolyGeodesicDrawing& d1, const PolyGeodesicDrawing& d2) {
    if (d1.genus != d2.genus)
        throw std::invalid_argument("count_crossings: drawings on different complexes");
    CrossingReport rep;
    for (size_t e1 = 0; e1 < d1.arcs.size(); ++e1) {
        for (size_t e2 = 0; e2 < d2.arcs.size(); ++e2) {
            int count = 0;
            for (const auto& a1 : d1.arcs[e1]) {
                for (const auto& a2 : d2.arcs[e2]) {
                    if (a1.hex != a2.hex) continue;
                    auto r = hyp::segments_intersect(a1.seg, a2.seg, 1e-12);
                    if (r.kind == hyp::IntersectKind::Overlap) {
                        ++count;  // degenerate; counted once and visible in reports
                        continue;
                    }
                    if (r.kind != hyp::IntersectKind::Point) continue;
                    // exclude endpoint touches
                    double de = std::min(std::min(hyp::h_distance(r.point, a1.seg.a),
                                                  hyp::h_distance(r.point, a1.seg.b)),
                                         std::min(hyp::h_distance(r.point, a2.seg.a),
                                                  hyp::h_distance(r.point, a2.seg.b)));
                    if (de > 1e-9) ++count;
                }
            }
            if (count > 0) rep.matrix[{static_cast<int>(e1), static_cast<int>(e2)}] = count;
            rep.total += count;
            rep.max_pair = std::max(rep.max_pair, count);
        }
    }
    return rep;
}

std::string CrossingReport::to_text(const PolyGeodesicDrawing& d1,
                                    const PolyGeodesicDrawing& d2) const {
    std::ostringstream os;
    os << "surfemb-report v1\n";
    os << "kind crossing-matrix\n";
    os << "total " << total << "\n";
    os << "max-pair " << max_pair << "\n";
    for (auto& [key, count] : matrix)
        os << "pair " << d1.edge_names[key.first] << " " << d2.edge_names[key.second] << " "
           << count << "\n";
    return os.str();
}

std::string arcs_to_text(const PolyGeodesicDrawing& d) {
    std::ostringstream os;
    os << "surfemb-arcs v1\n";
    os << "genus " << d.genus << "\n";
    char buf[256];
    for (size_t e = 0; e < d.arcs.size(); ++e) {
        for (size_t i = 0; i < d.arcs[e].size(); ++i) {
            const auto& a = d.arcs[e][i];
            std::snprintf(buf, sizeof buf,
                          "arc %s %zu hex %d %.17g %.17g %.17g %.17g %.17g %.17g",
                          d.edge_names[e].c_str(), i, a.hex, a.seg.a.c[0], a.seg.a.c[1],
                          a.seg.a.c[2], a.seg.b.c[0], a.seg.b.c[1], a.seg.b.c[2]);
            os << buf << "\n";
        }
    }
    return os.str();
}

PolyGeodesicDrawing arcs_from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != "surfemb-arcs v1")
        throw std::invalid_argument("arcs file: bad header");
    PolyGeodesicDrawing d;
    d.genus = -1;
    std::map<std::string, size_t> index;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "genus") {
            ls >> d.genus;
        } else if (kw == "arc") {
            std::string name, hexkw;
            size_t idx;
            int hexid;
            HSegment seg;
            ls >> name >> idx >> hexkw >> hexid >> seg.a.c[0] >> seg.a.c[1] >> seg.a.c[2] >>
                seg.b.c[0] >> seg.b.c[1] >> seg.b.c[2];
            auto it = index.find(name);
            if (it == index.end()) {
                index[name] = d.arcs.size();
                d.edge_names.push_back(name);
                d.arcs.emplace_back();
                it = index.find(name);
            }
            d.arcs[it->second].push_back({hexid, seg});
        } else {
            throw std::invalid_argument("arcs file: unknown keyword " + kw);
        }
    }
    if (d.genus < 2) throw std::invalid_argument("arcs file: missing genus");
    for (auto& a : d.arcs)
        d.max_arcs_per_edge = std::max(d.max_arcs_per_edge, static_cast<int>(a.size()));
    return d;
}

std::string hex_drawing_svg(const PolyGeodesicDrawing& d, const HexComplex& c) {
    hyp::Hexagon hex = hyp::regular_right_angled_hexagon();
    int hexes = c.num_hexagons();
    std::vector<std::vector<HSegment>> per_hex(hexes);
    for (const auto& arcs : d.arcs)
        for (const auto& a : arcs) per_hex[a.hex].push_back(a.seg);
    std::ostringstream os;
    double cell = 2.2 * 110.0;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cell * hexes << "\" height=\""
       << cell << "\">\n";
    for (int h = 0; h < hexes; ++h) {
        std::vector<std::string> labels;
        for (int s = 0; s < 6; ++s)
            labels.push_back("p" + std::to_string(c.pairing_of[h][s]));
        os << "<g transform=\"translate(" << h * cell << ",0)\">\n";
        os << hyp::hyperbolic_svg(hex, per_hex[h], labels, 110.0);
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Convexity spot check on a glued mesh of the genus-2 complex.
// ---------------------------------------------------------------------------

double convexity_spot_check(int pairs, std::uint64_t seed, int mesh_level) {
    HexComplex c = canonical_hex_decomposition(2);
    hyp::Hexagon hex = hyp::regular_right_angled_hexagon();
    int hexes = c.num_hexagons();
    int L = mesh_level * 3;  // lattice resolution per fan-triangle edge

    // Node ids are merged across charts (corners by class, side points by
    // (pairing, index)); edge lengths are always computed in the chart of the
    // triangle that contributes the edge, so the glued metric is consistent.
    std::map<std::tuple<long long, long long, long long>, int> ids;
    std::vector<std::vector<std::pair<int, double>>> adj;
    std::vector<HPoint> chart0_pos;  // positions valid for hexagon-0 queries
    HPoint center{1, 0, 0};

    auto key_of = [&](int h, int tri, int ia, int ib) {
        int ic = L - ia - ib;
        if (ia == L) return std::make_tuple(-1LL, (long long)c.corner_class[h][tri], 0LL);
        if (ib == L)
            return std::make_tuple(-1LL, (long long)c.corner_class[h][(tri + 1) % 6], 0LL);
        if (ic == 0)
            return std::make_tuple(-2LL, (long long)c.pairing_of[h][tri], (long long)ib);
        if (ib == 0) return std::make_tuple((long long)h * 8 + 6, (long long)tri, (long long)ia);
        if (ia == 0)
            return std::make_tuple((long long)h * 8 + 6, (long long)((tri + 1) % 6),
                                   (long long)ib);
        if (ic == L) return std::make_tuple((long long)h * 8 + 7, 0LL, 0LL);
        return std::make_tuple((long long)h * 8 + tri, (long long)ia, (long long)ib);
    };
    auto chart_pos = [&](int tri, int ia, int ib) {
        double wa = static_cast<double>(ia) / L, wb = static_cast<double>(ib) / L;
        HPoint p;
        for (int i = 0; i < 3; ++i)
            p.c[i] = wa * hex.vertices[tri].c[i] + wb * hex.vertices[(tri + 1) % 6].c[i] +
                     (1 - wa - wb) * center.c[i];
        return hyp::normalize_to_sheet(p);
    };
    auto get_id = [&](int h, int tri, int ia, int ib) {
        auto k = key_of(h, tri, ia, ib);
        auto it = ids.find(k);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(adj.size());
        ids[k] = id;
        adj.emplace_back();
        chart0_pos.push_back(h == 0 ? chart_pos(tri, ia, ib) : HPoint{});
        return id;
    };

    std::vector<int> hex0_interior;
    for (int h = 0; h < hexes; ++h) {
        for (int tri = 0; tri < 6; ++tri) {
            for (int ia = 0; ia <= L; ++ia) {
                for (int ib = 0; ib + ia <= L; ++ib) {
                    int id = get_id(h, tri, ia, ib);
                    if (h == 0) {
                        chart0_pos[id] = chart_pos(tri, ia, ib);
                        if (ia > 0 && ib > 0 && ia + ib < L) hex0_interior.push_back(id);
                    }
                    HPoint here = chart_pos(tri, ia, ib);
                    auto link = [&](int ja, int jb) {
                        int jd = get_id(h, tri, ja, jb);
                        double w = hyp::h_distance(here, chart_pos(tri, ja, jb));
                        adj[id].push_back({jd, w});
                        adj[jd].push_back({id, w});
                    };
                    if (ia > 0) link(ia - 1, ib);
                    if (ib > 0) link(ia, ib - 1);
                    if (ia > 0 && ia + ib <= L) link(ia - 1, ib + 1);
                }
            }
        }
    }

    Rng rng(seed);
    double worst = 1e300;
    for (int trial = 0; trial < pairs; ++trial) {
        int s = hex0_interior[rng.below(hex0_interior.size())];
        int t = hex0_interior[rng.below(hex0_interior.size())];
        if (s == t) continue;
        std::vector<double> dist(adj.size(), 1e300);
        std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>,
                            std::greater<>> pq;
        dist[s] = 0;
        pq.push({0, s});
        while (!pq.empty()) {
            auto [dd, u] = pq.top();
            pq.pop();
            if (dd > dist[u]) continue;
            if (u == t) break;
            for (auto& [v, w] : adj[u]) {
                if (dist[u] + w < dist[v]) {
                    dist[v] = dist[u] + w;
                    pq.push({dist[v], v});
                }
            }
        }
        double geodesic = hyp::h_distance(chart0_pos[s], chart0_pos[t]);
        worst = std::min(worst, dist[t] - geodesic);
    }
    return worst;
}

}  // namespace surfemb::hexp
