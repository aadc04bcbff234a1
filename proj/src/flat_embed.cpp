#include "surfemb/flat_embedder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace surfemb::femb {

using flat::DeckElement;

FlatDrawing contract_drawing(const FlatDrawing& d, int edge, maps::SplitScript* script_out,
                             int keep) {
    int u = d.map.origin[2 * edge], v = d.map.origin[2 * edge + 1];
    DeckElement g_uv = d.edge_lifts[edge];  // lift of uv from u
    if (keep >= 0 && keep == v) {
        std::swap(u, v);
        g_uv = flat::inverse_deck(g_uv, d.surface);
    }
    auto res = maps::contract(d.map, edge, keep);
    if (script_out) *script_out = res.script;
    FlatDrawing out;
    out.surface = d.surface;
    out.map = res.map;
    out.positions = d.positions;
    out.edge_lifts = d.edge_lifts;
    out.edge_lifts.resize(res.map.edge_sign.size());
    for (int e = 0; e < static_cast<int>(res.map.edge_sign.size()); ++e) {
        if (!res.map.edge_alive(e)) continue;
        int p = res.map.origin[2 * e], q = res.map.origin[2 * e + 1];
        bool was_v_p = p == u && d.map.origin[2 * e] == v;
        bool was_v_q = q == u && d.map.origin[2 * e + 1] == v;
        if (was_v_p) {
            // edge anchored at v before; new class follows u -> v -> head
            out.edge_lifts[e] = flat::compose_deck(g_uv, d.edge_lifts[e], d.surface);
        } else if (was_v_q) {
            // anchored at the far endpoint; class w -> v -> u
            out.edge_lifts[e] = flat::compose_deck(
                d.edge_lifts[e], flat::inverse_deck(g_uv, d.surface), d.surface);
        } else {
            out.edge_lifts[e] = d.edge_lifts[e];
        }
    }
    return out;
}

std::pair<maps::CombinatorialMap, std::vector<maps::SplitScript>> contract_to_irreducible(
    const maps::CombinatorialMap& map) {
    std::vector<maps::SplitScript> scripts;
    maps::CombinatorialMap cur = map;
    while (true) {
        auto [edge, keep] = maps::canonical_contraction_choice(cur);
        if (edge < 0) break;
        auto res = maps::contract(cur, edge, keep);
        scripts.push_back(res.script);
        cur = std::move(res.map);
    }
    return {cur, scripts};
}

namespace {

// Exact Gaussian elimination, dense; systems here have at most ~30 unknowns.
std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> A,
                                     std::vector<Rational> b) {
    int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (A[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw std::runtime_error("harmonic system is singular");
        std::swap(A[col], A[pivot]);
        std::swap(b[col], b[pivot]);
        Rational inv = A[col][col];
        for (int r = 0; r < n; ++r) {
            if (r == col || A[r][col] == 0) continue;
            Rational f = A[r][col] / inv;
            for (int c = col; c < n; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<Rational> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
    return x;
}

}  // namespace

FlatDrawing harmonic_drawing(const maps::CombinatorialMap& map, const flat::FlatSurface& surface,
                             const std::vector<flat::DeckElement>& lifts,
                             const std::vector<Rational>& weights) {
    if (surface.is_klein())
        throw std::invalid_argument("harmonic_drawing: glide reflections make the system nonlinear");
    if (!surface.b.is_rational())
        throw std::invalid_argument("harmonic_drawing: torus sides must be rational");
    Rational b_rat = surface.b.offset;

    auto verts = map.alive_vertices();
    int n = static_cast<int>(verts.size());
    std::map<int, int> index;
    for (int i = 0; i < n; ++i) index[verts[i]] = i;

    // One coordinate at a time: sum over neighbors of (x_w + offset - x_u) = 0,
    // pinning vertex 0 at the origin.
    auto weight_of = [&](int e) {
        return e < static_cast<int>(weights.size()) ? weights[e] : Rational(1);
    };
    auto solve_coord = [&](bool is_x) {
        std::vector<std::vector<Rational>> A(n - 1, std::vector<Rational>(n - 1, 0));
        std::vector<Rational> rhs(n - 1, 0);
        for (int i = 1; i < n; ++i) {
            int u = verts[i];
            for (int dart : map.rotation[u]) {
                int w = map.head(dart);
                DeckElement g = dart % 2 == 0 ? lifts[map.edge_of(dart)]
                                              : flat::inverse_deck(lifts[map.edge_of(dart)],
                                                                   surface);
                Rational c = weight_of(map.edge_of(dart));
                Rational offset = is_x ? g.m * surface.a : g.n * b_rat;
                A[i - 1][i - 1] += c;
                int j = index[w];
                if (j > 0) A[i - 1][j - 1] -= c;
                rhs[i - 1] += c * offset;
            }
        }
        return solve_rational(std::move(A), std::move(rhs));
    };
    auto xs = solve_coord(true);
    auto ys = solve_coord(false);

    FlatDrawing out;
    out.surface = surface;
    out.map = map;
    out.positions.resize(map.rotation.size());
    std::vector<DeckElement> normalizer(map.rotation.size(), {0, 0});
    for (int i = 0; i < n; ++i) {
        Rational px = i == 0 ? Rational(0) : xs[i - 1];
        Rational py = i == 0 ? Rational(0) : ys[i - 1];
        auto [rep, k] = flat::project_with_deck(flat::plane_point(px, 0, py, 0), surface);
        out.positions[verts[i]] = rep;
        normalizer[verts[i]] = k;
    }
    out.edge_lifts.resize(map.edge_sign.size());
    for (int e = 0; e < static_cast<int>(map.edge_sign.size()); ++e) {
        if (!map.edge_alive(e)) continue;
        int u = map.origin[2 * e], w = map.origin[2 * e + 1];
        out.edge_lifts[e] = flat::compose_deck(
            flat::compose_deck(flat::inverse_deck(normalizer[u], surface), lifts[e], surface),
            normalizer[w], surface);
    }
    return out;
}

namespace {

// Label-free serialization of a drawing: a gem traversal whose code carries
// the exact coordinates and lifts along with the combinatorics, minimized
// over start flags. Equal codes mean equal drawings up to relabeling.
std::vector<std::string> geometric_code(const FlatDrawing& d) {
    const auto& m = d.map;
    auto darts = m.alive_darts();
    std::vector<std::string> best;
    for (int start : darts) {
        for (int s0 = 0; s0 < 2; ++s0) {
            std::map<std::pair<int, int>, int> label;
            std::vector<std::pair<int, int>> order{{start, s0}};
            label[{start, s0}] = 0;
            std::vector<std::string> code;
            for (size_t i = 0; i < order.size(); ++i) {
                auto [dd, ss] = order[i];
                // generator images as in the gem: edge, vertex-corner, side flip
                int neg = m.edge_sign[m.edge_of(dd)] < 0 ? 1 : 0;
                std::array<std::pair<int, int>, 3> next = {
                    std::pair<int, int>{m.twin(dd), ss ^ neg},
                    ss == 0 ? std::pair<int, int>{m.rot_next(dd), 1}
                            : std::pair<int, int>{m.rot_prev(dd), 0},
                    std::pair<int, int>{dd, 1 - ss}};
                std::string entry;
                for (auto& f : next) {
                    auto it = label.find(f);
                    if (it == label.end()) {
                        label[f] = static_cast<int>(order.size());
                        order.push_back(f);
                        entry += std::to_string(label[f]) + ",";
                    } else {
                        entry += std::to_string(it->second) + ",";
                    }
                }
                const auto& p = d.positions[m.origin[dd]].rep;
                entry += rat_str(p.x.r) + "," + rat_str(p.x.s) + "," + rat_str(p.y.r) + "," +
                         rat_str(p.y.s);
                auto g = d.lift_from(dd);
                entry += "|" + std::to_string(g.m) + "," + std::to_string(g.n);
                code.push_back(std::move(entry));
            }
            if (best.empty() || code < best) best = std::move(code);
        }
    }
    return best;
}

}  // namespace

FlatDrawing split_vertex(const FlatDrawing& d, const maps::SplitScript& script, double delta,
                         double margin);

FlatDrawing embed(const maps::CombinatorialMap& input, const flat::FlatSurface& surface,
                  const std::vector<CatalogEntry>& catalog, double margin) {
    if (!maps::is_triangulation(input))
        throw std::invalid_argument("embed: input must be a simple triangulation");
    if (maps::euler_characteristic(input) != 0)
        throw std::invalid_argument("embed: map is not a torus/Klein-bottle triangulation");
    bool orientable = input.orientable();
    if (orientable != (surface.kind == flat::SurfaceKind::torus))
        throw std::invalid_argument("embed: orientability does not match the surface");

    auto [cur, scripts] = contract_to_irreducible(input);

    // Catalog lookup on the matching surface. When the terminal map has
    // automorphisms, multiple pullbacks exist; pick the one minimizing a
    // label-free geometric code so the output never depends on input labels.
    FlatDrawing base;
    bool found = false;
    for (const auto& entry : catalog) {
        const auto& es = entry.drawing.surface;
        if (es.kind != surface.kind || !(es.a == surface.a) || !(es.b == surface.b)) continue;
        auto isos = maps::find_all_isomorphisms(cur, entry.map);
        if (isos.empty()) continue;
        bool have = false;
        std::vector<std::string> best_code;
        for (const auto& iso : isos) {
            FlatDrawing cand;
            cand.surface = surface;
            cand.map = cur;
            cand.positions.resize(cur.rotation.size());
            cand.edge_lifts.resize(cur.edge_sign.size());
            for (int v : cur.alive_vertices())
                cand.positions[v] = entry.drawing.positions[iso.vertex_image[v]];
            for (int e = 0; e < static_cast<int>(cur.edge_sign.size()); ++e) {
                if (!cur.edge_alive(e)) continue;
                int tu = cur.origin[2 * e], tv = cur.origin[2 * e + 1];
                int dart = entry.map.dart_between(iso.vertex_image[tu], iso.vertex_image[tv]);
                if (dart < 0) throw std::logic_error("embed: isomorphism loses an edge");
                cand.edge_lifts[e] = entry.drawing.lift_from(dart);
            }
            auto code = geometric_code(cand);
            if (!have || code < best_code) {
                have = true;
                best_code = std::move(code);
                base = std::move(cand);
            }
        }
        if (have && verify_drawing(base, margin).pass()) {
            found = true;
            break;
        }
    }
    if (!found) {
        throw EmbedMissingEntry(
            "embed: no catalog entry matches the irreducible triangulation reached by contraction",
            maps::map_to_text(cur));
    }

    // Replay the splits geometrically, newest contraction first.
    FlatDrawing drawing = base;
    double delta0 = 0.125 * std::min(surface.a_num, surface.b_num);
    for (auto it = scripts.rbegin(); it != scripts.rend(); ++it)
        drawing = split_vertex(drawing, *it, delta0, margin);
    return drawing;
}

FlatDrawing split_drawing_class(const FlatDrawing& d, const maps::SplitScript& script) {
    FlatDrawing out;
    out.surface = d.surface;
    out.map = maps::split_vertex_combinatorial(d.map, script);
    out.positions = d.positions;
    out.positions.resize(out.map.rotation.size());
    int v = script.removed_vertex < static_cast<int>(d.map.v_alive.size())
                ? script.removed_vertex
                : static_cast<int>(d.map.v_alive.size());
    out.positions[v] = d.positions[script.hub];
    out.edge_lifts = d.edge_lifts;
    out.edge_lifts.resize(out.map.edge_sign.size());
    // fan edges keep their stored lifts (same edge objects, same classes);
    // the three new edges take the hub's classes: uv trivial, vA and vB the
    // classes of uA and uB.
    for (int e = static_cast<int>(d.map.edge_sign.size());
         e < static_cast<int>(out.map.edge_sign.size()); ++e) {
        if (!out.map.edge_alive(e)) continue;
        int p = out.map.origin[2 * e], q = out.map.origin[2 * e + 1];
        int w = p == v ? q : p;
        flat::DeckElement lift_from_v;
        if (w == script.hub) {
            lift_from_v = {0, 0};
        } else {
            int dart = d.map.dart_between(script.hub, w);
            if (dart < 0) throw std::logic_error("split_drawing_class: apex edge missing");
            lift_from_v = d.lift_from(dart);
        }
        out.edge_lifts[e] = p == v ? lift_from_v : flat::inverse_deck(lift_from_v, d.surface);
    }
    return out;
}

int bootstrap_torus_catalog(std::vector<CatalogEntry>& entries, int iterations,
                            std::uint64_t seed, std::string* log) {
    std::ostringstream report;
    std::set<std::vector<std::uint32_t>> known;
    std::set<std::vector<std::uint32_t>> rejected;
    for (const auto& e : entries) known.insert(maps::canonical_code(e.map));
    Rng rng(seed);
    int added = 0;
    for (int iter = 0; iter < iterations; ++iter) {
        size_t pick = rng.below(entries.size());
        FlatDrawing d = entries[pick].drawing;  // class-tracking copy
        maps::CombinatorialMap m = d.map;
        int target = 10 + static_cast<int>(rng.below(21));
        int guard = 0;
        while (m.num_vertices() < target && guard++ < 1000) {
            maps::SplitScript script;
            if (!random_vertex_split(m, rng, &script)) continue;
            d = split_drawing_class(d, script);
        }
        // canonical contraction with lift bookkeeping
        while (true) {
            auto [edge, keep] = maps::canonical_contraction_choice(d.map);
            if (edge < 0) break;
            d = contract_drawing(d, edge, nullptr, keep);
        }
        auto code = maps::canonical_code(d.map);
        if (known.count(code) || rejected.count(code)) continue;
        // Two knobs against ties: retwisting the isotopy class by a torus
        // automorphism (SL(2,Z) on the deck group; always an embedding
        // class), and asymmetric stiffness patterns.
        std::vector<std::array<long long, 4>> twists{{1, 0, 0, 1}};
        for (int k = 1; k <= 2; ++k) {
            twists.push_back({1, k, 0, 1});
            twists.push_back({1, -k, 0, 1});
            twists.push_back({1, 0, k, 1});
            twists.push_back({1, 0, -k, 1});
        }
        twists.push_back({1, 1, 1, 2});
        twists.push_back({2, 1, 1, 1});
        bool done = false;
        for (size_t twist_idx = 0; twist_idx < twists.size() && !done; ++twist_idx) {
        const auto& A = twists[twist_idx];
        std::vector<flat::DeckElement> base_lifts = d.edge_lifts;
        for (auto& g : base_lifts) g = {A[0] * g.m + A[1] * g.n, A[2] * g.m + A[3] * g.n};
        for (int attempt = 0; attempt < 3 && !done; ++attempt) {
            std::vector<Rational> weights(d.map.edge_sign.size(), 1);
            if (attempt > 0) {
                for (size_t e = 0; e < weights.size(); ++e) {
                    unsigned long long h = (e + 1) * 2654435761ULL * attempt;
                    weights[e] = 1 + Rational((h % 89) + 1, 256);
                }
            }
            try {
                // Tighten-and-relax: re-solve, then re-anchor every edge at
                // its shortest lift and repeat; the spring energy strictly
                // decreases, so this reaches a taut class quickly.
                FlatDrawing h = harmonic_drawing(d.map, d.surface, base_lifts, weights);
                for (int round = 0; round < 12; ++round) {
                    bool changed = false;
                    for (int e = 0; e < static_cast<int>(d.map.edge_sign.size()); ++e) {
                        if (!d.map.edge_alive(e)) continue;
                        int tu = d.map.origin[2 * e], tv = d.map.origin[2 * e + 1];
                        // re-anchor only when strictly shorter; ties must not
                        // flip the class
                        auto cur = flat::apply_deck(h.edge_lifts[e], h.positions[tv].rep,
                                                    d.surface);
                        double cx = h.positions[tu].rep.x.eval(d.surface);
                        double cy = h.positions[tu].rep.y.eval(d.surface);
                        double cur_len = std::hypot(cur.x.eval(d.surface) - cx,
                                                    cur.y.eval(d.surface) - cy);
                        auto dist = flat::distance(h.positions[tv], h.positions[tu], d.surface);
                        if (dist.length < cur_len - 1e-12 && !(dist.best == h.edge_lifts[e])) {
                            changed = true;
                            h.edge_lifts[e] = dist.best;
                        }
                    }
                    if (!changed) break;
                    h = harmonic_drawing(d.map, d.surface, h.edge_lifts, weights);
                }
                if (verify_drawing(h, 1e-9).pass()) {
                    CatalogEntry e;
                    e.name = "T" + std::to_string(entries.size() + 1);
                    e.map = h.map;
                    e.drawing = h;
                    e.provenance = attempt == 0 ? "harmonic:spring-equilibrium"
                                                : "harmonic:spring-equilibrium-perturbed";
                    entries.push_back(std::move(e));
                    known.insert(code);
                    ++added;
                    done = true;
                    report << "added " << entries.back().name << " V=" << h.map.num_vertices()
                           << " E=" << h.map.num_edges() << " attempt=" << attempt << "\n";
                }
            } catch (const std::exception& ex) {
                report << "harmonic solve failed: " << ex.what() << "\n";
                break;
            }
        }
        }
        if (!done) {
            rejected.insert(code);
            report << "no verified harmonic drawing for a V=" << d.map.num_vertices()
                   << " terminal\n";
        }
    }
    if (log) *log = report.str();
    return added;
}

}  // namespace surfemb::femb
