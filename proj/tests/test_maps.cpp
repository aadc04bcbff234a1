#include <doctest.h>

#include "surfemb/maps.hpp"
#include "surfemb/rng.hpp"

#include <algorithm>
#include <map>
#include <set>

using namespace surfemb;
using namespace surfemb::maps;

namespace {

CombinatorialMap tetrahedron() {
    return map_from_oriented_faces(4, {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}});
}

CombinatorialMap cube() {
    return map_from_oriented_faces(8, {{0, 3, 2, 1},
                                       {4, 5, 6, 7},
                                       {0, 1, 5, 4},
                                       {1, 2, 6, 5},
                                       {2, 3, 7, 6},
                                       {3, 0, 4, 7}});
}

CombinatorialMap octahedron() {
    // 0=N 1=S equator 2,3,4,5; outward-oriented faces
    return map_from_oriented_faces(6, {{0, 2, 3},
                                       {0, 3, 4},
                                       {0, 4, 5},
                                       {0, 5, 2},
                                       {1, 3, 2},
                                       {1, 4, 3},
                                       {1, 5, 4},
                                       {1, 2, 5}});
}

// K7 on the torus via the classical lattice drawing: vertex k at
// k*(1/7, 3/7); neighbors ordered by angle of the drawn edge vectors.
CombinatorialMap k7_torus() {
    std::vector<std::vector<int>> lists(7);
    int offsets[6] = {3, 1, 5, 4, 6, 2};  // +3, +1, -2, -3, -1, +2 mod 7
    for (int i = 0; i < 7; ++i)
        for (int o : offsets) lists[i].push_back((i + o) % 7);
    return map_from_rotations(lists);
}

// Moebius band triangulation of K6 minus a face, drawn in the Klein strip:
// boundary cycle a,b,c and core cycle x,y,z (0..2 boundary, 3..5 core).
// Rotations from the strip drawing; the map is non-orientable once doubled.

}  // namespace

TEST_CASE("faces and euler characteristic of small maps") {
    auto tet = tetrahedron();
    CHECK(faces(tet).size() == 4);
    CHECK(euler_characteristic(tet) == 2);
    CHECK(is_triangulation(tet));

    auto cb = cube();
    CHECK(faces(cb).size() == 6);
    CHECK(euler_characteristic(cb) == 2);
    CHECK_FALSE(is_triangulation(cb));

    auto oct = octahedron();
    CHECK(faces(oct).size() == 8);
    CHECK(euler_characteristic(oct) == 2);
    CHECK(is_triangulation(oct));
    CHECK(oct.orientable());
}

TEST_CASE("K7 on the torus: 14 triangles, chi = 0") {
    auto k7 = k7_torus();
    auto fs = faces(k7);
    CHECK(fs.size() == 14);
    CHECK(euler_characteristic(k7) == 0);
    CHECK(is_triangulation(k7));
    CHECK(k7.orientable());
}

TEST_CASE("contractible_edges: link condition with K4 guard") {
    CHECK(contractible_edges(tetrahedron()).empty());
    auto oct = octahedron();
    CHECK(contractible_edges(oct).size() == 12);

    // K7 on the torus is irreducible: every pair of vertices is adjacent and
    // has 4 common neighbors, so the link condition fails everywhere.
    CHECK(contractible_edges(k7_torus()).empty());
}

TEST_CASE("contract: octahedron to 5-vertex sphere triangulation") {
    auto oct = octahedron();
    auto edges = contractible_edges(oct);
    for (int e : edges) {
        auto res = contract(oct, e);
        CHECK(res.map.num_vertices() == 5);
        CHECK(res.map.num_edges() == 9);
        CHECK(is_triangulation(res.map));
        CHECK(euler_characteristic(res.map) == 2);
    }
}

TEST_CASE("contract then split is the identity up to isomorphism") {
    Rng rng(31);
    // Start from octahedron and K7 and walk random split/contract sequences.
    for (CombinatorialMap seed : {octahedron(), k7_torus()}) {
        CombinatorialMap cur = seed;
        for (int step = 0; step < 50; ++step) {
            auto edges = contractible_edges(cur);
            if (!edges.empty() && rng.below(2) == 0) {
                int e = edges[rng.below(edges.size())];
                auto res = contract(cur, e);
                auto back = split_vertex_combinatorial(res.map, res.script);
                CHECK(canonical_code(back) == canonical_code(cur));
                cur = res.map;
            } else {
                // random split: pick a vertex and two distinct rotation slots
                auto verts = cur.alive_vertices();
                int u = verts[rng.below(verts.size())];
                int deg = cur.degree(u);
                if (deg < 3) continue;
                int i = static_cast<int>(rng.below(deg));
                int j = static_cast<int>(rng.below(deg));
                if (i == j) continue;
                SplitScript s;
                s.hub = u;
                s.removed_vertex = static_cast<int>(cur.v_alive.size());
                s.removed_name = "s" + std::to_string(step);
                auto& rot = cur.rotation[u];
                s.apex_a = cur.head(rot[i]);
                s.apex_b = cur.head(rot[j]);
                for (int k = (i + 1) % deg; k != j; k = (k + 1) % deg)
                    s.fan.push_back(cur.head(rot[k]));
                s.a_before_u = true;
                s.b_before_u = false;
                auto grown = split_vertex_combinatorial(cur, s);
                if (!is_triangulation(grown)) continue;
                auto back = contract(grown, grown.edge_of(grown.dart_between(u, s.removed_vertex)));
                CHECK(canonical_code(back.map) == canonical_code(cur));
                cur = grown;
            }
            CHECK(is_triangulation(cur));
            CHECK(euler_characteristic(cur) == euler_characteristic(seed));
            if (cur.num_vertices() > 16) cur = seed;
        }
    }
}

TEST_CASE("canonical code: relabeling invariance, isomorphism detection") {
    auto oct = octahedron();
    // Relabel by a permutation of vertex ids.
    int perm[6] = {4, 2, 0, 5, 3, 1};
    std::vector<std::vector<int>> faces_relabeled;
    for (auto& f :
         std::vector<std::vector<int>>{{0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 2},
                                       {1, 3, 2}, {1, 4, 3}, {1, 5, 4}, {1, 2, 5}}) {
        std::vector<int> g;
        for (int v : f) g.push_back(perm[v]);
        faces_relabeled.push_back(g);
    }
    auto relabeled = map_from_oriented_faces(6, faces_relabeled);
    CHECK(canonical_code(oct) == canonical_code(relabeled));
    CHECK(find_isomorphism(oct, relabeled).has_value());
    CHECK_FALSE(find_isomorphism(oct, tetrahedron()).has_value());
    CHECK(canonical_code(oct) != canonical_code(k7_torus()));

    auto iso = find_isomorphism(oct, relabeled);
    REQUIRE(iso.has_value());
    // The image must preserve adjacency.
    for (int v : oct.alive_vertices()) {
        for (int w : oct.neighbors(v)) {
            int iv = iso->vertex_image[v], iw = iso->vertex_image[w];
            CHECK(relabeled.dart_between(iv, iw) >= 0);
        }
    }
}

TEST_CASE("canonical vertex/edge order is relabeling invariant") {
    auto oct = octahedron();
    auto order = canonical_vertex_order(oct);
    CHECK(order.size() == 6);
    auto eo = canonical_edge_order(oct);
    CHECK(eo.size() == 12);
}

TEST_CASE("map text format round-trips") {
    for (const auto& m : {tetrahedron(), octahedron(), k7_torus()}) {
        auto text = map_to_text(m);
        auto parsed = map_from_text(text);
        CHECK(map_to_text(parsed) == text);
        CHECK(canonical_code(parsed) == canonical_code(m));
    }
    CHECK_THROWS(map_from_text("bogus"));
}

// K6 on the projective plane: the Moebius-band strip triangulation (boundary
// cycle a,b,c and core cycle x,y,z) capped by the face abc. Rotations and
// signs read off the flat strip drawing.
CombinatorialMap k6_projective() {
    std::vector<std::vector<int>> lists = {
        {1, 4, 3, 5, 2},  // a
        {2, 3, 5, 4, 0},  // b
        {0, 1, 3, 4, 5},  // c
        {4, 2, 1, 5, 0},  // x
        {5, 2, 3, 0, 1},  // y
        {3, 0, 2, 4, 1},  // z
    };
    std::vector<std::pair<int, int>> neg = {{1, 2}, {2, 0}, {5, 3}, {0, 5}, {1, 3}};
    return map_from_rotations(lists, neg, {"a", "b", "c", "x", "y", "z"});
}

TEST_CASE("non-orientable map: K6 on the projective plane") {
    auto m = k6_projective();
    CHECK(m.num_edges() == 15);
    CHECK_FALSE(m.orientable());
    CHECK(faces(m).size() == 10);
    CHECK(euler_characteristic(m) == 1);
    CHECK(is_triangulation(m));

    auto text = map_to_text(m);
    auto parsed = map_from_text(text);
    CHECK(map_to_text(parsed) == text);
    CHECK(canonical_code(parsed) == canonical_code(m));

    // Flipping a vertex preserves the map up to isomorphism.
    auto flipped = m;
    flipped.flip_vertex(3);
    CHECK(canonical_code(flipped) == canonical_code(m));
    CHECK_FALSE(flipped.orientable());
    CHECK(faces(flipped).size() == 10);

    // Every vertex has degree 5 and every edge is in exactly two triangles;
    // contraction is impossible only if common neighbors != 2.
    auto ce = contractible_edges(m);
    CHECK(ce.empty());  // K6 is the minimal triangulation of the projective plane
}

TEST_CASE("disk: dividing edges and triangulation") {
    // Hexagon boundary 0..5, empty interior.
    std::vector<std::vector<int>> lists(6);
    for (int i = 0; i < 6; ++i) lists[i] = {(i + 5) % 6, (i + 1) % 6};
    auto hexmap = map_from_rotations(lists);
    // The two faces of the cycle; pick one as outer.
    auto fs = faces(hexmap);
    REQUIRE(fs.size() == 2);
    DiskMap disk{hexmap, fs[0]};
    CHECK(dividing_edges(disk).empty());

    auto tri = triangulate_disk(disk);
    CHECK(tri.map.num_vertices() == 7);
    CHECK(is_disk_triangulation(tri));
    auto tfs = faces(tri.map);
    // 6 interior triangles + the outer hexagon face
    int triangles = 0;
    for (auto& f : tfs) triangles += f.size() == 3;
    CHECK(triangles == 6);
    CHECK(tfs.size() == 7);
    CHECK(dividing_edges(tri).empty());

    // Single triangle: stellation gives 4 vertices.
    auto trimap = map_from_rotations({{1, 2}, {2, 0}, {0, 1}});
    auto tf = faces(trimap);
    DiskMap tridisk{trimap, tf[0]};
    auto stellated = triangulate_disk(tridisk);
    CHECK(stellated.map.num_vertices() == 4);
    CHECK(is_disk_triangulation(stellated));
}

TEST_CASE("disk: chord path through interior vertex is not dividing") {
    // Hexagon 0..5 plus interior vertex 6 joined to boundary 0 and 3.
    std::vector<std::vector<int>> lists(7);
    for (int i = 0; i < 6; ++i) lists[i] = {(i + 5) % 6, (i + 1) % 6};
    lists[0].push_back(6);
    lists[3].push_back(6);
    lists[6] = {0, 3};
    auto m = map_from_rotations(lists);
    std::vector<std::vector<int>> fs = faces(m);
    // outer face: the length-6 walk using only boundary edges
    int outer_idx = -1;
    for (size_t i = 0; i < fs.size(); ++i) {
        if (fs[i].size() == 6) {
            std::set<int> vs;
            for (int d : fs[i]) vs.insert(m.origin[d]);
            if (!vs.count(6)) outer_idx = static_cast<int>(i);
        }
    }
    REQUIRE(outer_idx >= 0);
    DiskMap disk{m, fs[outer_idx]};
    CHECK(dividing_edges(disk).empty());
    auto tri = triangulate_disk(disk);
    CHECK(is_disk_triangulation(tri));
    CHECK(dividing_edges(tri).empty());
    // Contains the input as a subgraph.
    CHECK(tri.map.dart_between(0, 6) >= 0);
    CHECK(tri.map.dart_between(3, 6) >= 0);

    // A direct chord 0-3 would be dividing.
    std::vector<std::vector<int>> lists2(6);
    for (int i = 0; i < 6; ++i) lists2[i] = {(i + 5) % 6, (i + 1) % 6};
    lists2[0].push_back(3);
    lists2[3].push_back(0);
    auto m2 = map_from_rotations(lists2);
    auto fs2 = faces(m2);
    int outer2 = -1;
    for (size_t i = 0; i < fs2.size(); ++i)
        if (fs2[i].size() == 6) outer2 = static_cast<int>(i);
    REQUIRE(outer2 >= 0);
    DiskMap disk2{m2, fs2[outer2]};
    CHECK(dividing_edges(disk2).size() == 1);
    CHECK_THROWS(triangulate_disk(disk2));
}

TEST_CASE("chi is preserved by contraction and disk gluing") {
    Rng rng(41);
    CombinatorialMap cur = k7_torus();
    // grow then contract fully
    for (int step = 0; step < 6; ++step) {
        auto verts = cur.alive_vertices();
        int u = verts[rng.below(verts.size())];
        int deg = cur.degree(u);
        int i = static_cast<int>(rng.below(deg)), j = static_cast<int>(rng.below(deg));
        if (i == j) continue;
        SplitScript s;
        s.hub = u;
        s.removed_vertex = static_cast<int>(cur.v_alive.size());
        s.removed_name = "g" + std::to_string(step);
        auto& rot = cur.rotation[u];
        s.apex_a = cur.head(rot[i]);
        s.apex_b = cur.head(rot[j]);
        for (int k = (i + 1) % deg; k != j; k = (k + 1) % deg) s.fan.push_back(cur.head(rot[k]));
        s.a_before_u = true;
        s.b_before_u = false;
        auto grown = split_vertex_combinatorial(cur, s);
        if (is_triangulation(grown)) cur = grown;
    }
    CHECK(euler_characteristic(cur) == 0);
    while (true) {
        auto ce = contractible_edges(cur);
        if (ce.empty()) break;
        cur = contract(cur, ce[0]).map;
        CHECK(euler_characteristic(cur) == 0);
    }
    // Terminal map is irreducible; for splits of K7 it is K7 itself.
    CHECK(cur.num_vertices() >= 7);
}

TEST_CASE("build_gg: euler counts and rigidity certificate") {
    for (int g = 2; g <= 3; ++g) {
        auto m = build_gg(gg_necklace(g));
        CHECK(m.is_simple());
        CHECK(is_triangulation(m));
        CHECK(m.orientable());
        CHECK(euler_characteristic(m) == 2 - 2 * g);
        auto rep = verify_gg_rigidity(m, g);
        CHECK(rep.pass());
    }
    auto k4map = build_gg(gg_k4());
    CHECK(euler_characteristic(k4map) == -4);
    CHECK(verify_gg_rigidity(k4map, 3).pass());

    // K7 fails the certificate: 35 3-cycles vs 14 faces.
    auto rep = verify_gg_rigidity(k7_torus(), 1);
    CHECK_FALSE(rep.pass());
    CHECK(rep.triangles == 35);
    CHECK(rep.faces_count == 14);
    // Tetrahedron passes (4 cycles, 4 faces).
    CHECK(verify_gg_rigidity(tetrahedron(), 0).pass());

    CHECK_THROWS(build_gg(GgSpec{1, {}}));
}

TEST_CASE("boundary-to-boundary distance inside the pants template is >= 4") {
    // Probe via build_gg(2): the glued curves are 4-cycles; check girth-style
    // condition indirectly: no vertex is adjacent to two distinct glued curves.
    auto m = build_gg(gg_necklace(2));
    // All 3-cycles bound faces (already in rigidity), and the map is simple;
    // the strong distance condition was used in construction. Here we check
    // the count of vertices matches the template bookkeeping: 2 pants of 255
    // vertices minus 3 shared rings of 4.
    CHECK(m.num_vertices() == 2 * 255 - 3 * 4);
}

TEST_CASE("contractible_edges matches the face-apex oracle on small maps") {
    // Oracle: edge uv of a triangulation is contractible iff the only common
    // neighbors of u and v are the apexes of its two incident faces.
    Rng rng(47);
    CombinatorialMap cur = octahedron();
    for (int step = 0; step < 30; ++step) {
        if (cur.num_vertices() < 12 && rng.below(2) == 0) {
            auto probe = cur;
            // reuse the library splitter through a throwaway map
            // (kept simple: random splits via the public surface)
            // fall through to contraction checks below
        }
        auto fs = faces(cur);
        std::map<int, std::vector<int>> apexes;  // edge -> face apexes
        for (auto& f : fs) {
            for (int i = 0; i < 3; ++i) {
                int e = cur.edge_of(f[i]);
                apexes[e].push_back(cur.origin[f[(i + 2) % 3]]);
            }
        }
        auto ce_list = contractible_edges(cur);
        std::set<int> by_link(ce_list.begin(), ce_list.end());
        for (int e = 0; e < static_cast<int>(cur.edge_sign.size()); ++e) {
            if (!cur.edge_alive(e)) continue;
            int u = cur.origin[2 * e], v = cur.origin[2 * e + 1];
            std::set<int> nu, common;
            for (int w : cur.neighbors(u)) nu.insert(w);
            for (int w : cur.neighbors(v))
                if (nu.count(w)) common.insert(w);
            std::set<int> apex_set(apexes[e].begin(), apexes[e].end());
            bool oracle = common == apex_set && cur.num_vertices() > 4;
            CHECK(oracle == (by_link.count(e) > 0));
        }
        auto ce = contractible_edges(cur);
        if (ce.empty()) break;
        cur = contract(cur, ce[rng.below(ce.size())]).map;
        if (cur.num_vertices() <= 5) break;
    }
}
