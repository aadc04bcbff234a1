#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace surfemb::maps {

/// Combinatorial map: a graph with a rotation system (ccw dart order per
/// vertex) and edge signs for maps on non-orientable surfaces. Darts are
/// paired into edges by d <-> d^1; dart d/2 names the edge. Vertices and
/// edges have stable ids; removal leaves tombstones so recorded scripts stay
/// valid across contractions.
class CombinatorialMap {
  public:
    std::vector<int> origin;                 // per dart, -1 when dead
    std::vector<std::vector<int>> rotation;  // per vertex, ccw cycle of darts
    std::vector<std::int8_t> edge_sign;      // per edge, +1 / -1, 0 when dead
    std::vector<std::string> vertex_name;
    std::vector<char> v_alive;

    int add_vertex(const std::string& name = "");
    /// Appends a new edge's darts (rotation positions must be fixed by the caller).
    int add_edge_darts(int u, int v, int sign = 1);  // returns dart u->v

    int twin(int d) const { return d ^ 1; }
    int edge_of(int d) const { return d / 2; }
    int head(int d) const { return origin[twin(d)]; }
    bool dart_alive(int d) const { return origin[d] >= 0; }
    bool edge_alive(int e) const { return edge_sign[e] != 0; }

    int num_vertices() const;  // alive only
    int num_edges() const;
    std::vector<int> alive_vertices() const;
    std::vector<int> alive_darts() const;

    int rot_next(int d) const;
    int rot_prev(int d) const;

    /// Dart from u to v, or -1 (simple maps: at most one).
    int dart_between(int u, int v) const;
    std::vector<int> neighbors(int v) const;
    int degree(int v) const { return static_cast<int>(rotation[v].size()); }

    bool is_simple() const;   // no loops, no parallel edges
    bool connected() const;
    /// Exists a vertex-flip assignment making all signs positive.
    bool orientable() const;
    /// Reverses the rotation at v and toggles signs of its edges.
    void flip_vertex(int v);

    void check_valid() const;  // structural invariants; throws on violation
};

/// Builds a map from per-vertex neighbor lists in rotation order.
/// negative_edges lists unordered vertex pairs carrying sign -1.
CombinatorialMap map_from_rotations(
    const std::vector<std::vector<int>>& neighbor_lists,
    const std::vector<std::pair<int, int>>& negative_edges = {},
    const std::vector<std::string>& names = {});

/// Builds an orientable map from consistently oriented face lists (each face
/// a vertex cycle); rotations are derived from the corner successors.
CombinatorialMap map_from_oriented_faces(int num_vertices,
                                         const std::vector<std::vector<int>>& face_walks);

/// Face walks as dart sequences (each face reported once).
std::vector<std::vector<int>> faces(const CombinatorialMap& m);
int euler_characteristic(const CombinatorialMap& m);
bool is_triangulation(const CombinatorialMap& m);

/// Edges whose contraction keeps the map a simple triangulation: the link
/// condition (exactly two common neighbors) plus the >4 vertex guard.
std::vector<int> contractible_edges(const CombinatorialMap& m);
bool is_contractible(const CombinatorialMap& m, int edge);

/// Data recorded by contract() sufficient to replay the inverse vertex split
/// on the contracted map (combinatorially via split_vertex_combinatorial, or
/// geometrically by the flat embedder).
struct SplitScript {
    int hub;                      // surviving vertex u
    int removed_vertex;           // id the new vertex takes on replay
    std::string removed_name;
    int apex_a;                   // common neighbors of u and the removed vertex
    int apex_b;
    std::vector<int> fan;         // vertices whose edge moves from u to v, in
                                  // rotation order from apex_a to apex_b
    bool a_before_u;              // insert dart a->v before (true) or after a->u
    bool b_before_u;
};

struct ContractResult {
    CombinatorialMap map;
    SplitScript script;
};

/// Contracts edge uv. The surviving endpoint is `keep` (default: the origin
/// of dart 2e). Throws if the edge is not contractible.
ContractResult contract(const CombinatorialMap& m, int edge, int keep = -1);

/// The relabeling-invariant contraction step used by the embedding pipeline:
/// the contractible edge least in canonical order, keeping the endpoint least
/// in canonical vertex order. Returns {-1, -1} when the map is irreducible.
std::pair<int, int> canonical_contraction_choice(const CombinatorialMap& m);

/// Replays a split script; exact inverse of contract.
CombinatorialMap split_vertex_combinatorial(const CombinatorialMap& m, const SplitScript& s);

/// Canonical flag labeling of the map's gem; equal codes iff isomorphic maps
/// (including reflections and vertex flips).
std::vector<std::uint32_t> canonical_code(const CombinatorialMap& m);

struct MapIsomorphism {
    std::vector<int> vertex_image;  // indexed by alive vertex id of the source
};

std::optional<MapIsomorphism> find_isomorphism(const CombinatorialMap& a,
                                               const CombinatorialMap& b);

/// All distinct isomorphisms a -> b (as vertex images); used where a choice
/// among automorphism-equivalent matches must be pinned by other data.
std::vector<MapIsomorphism> find_all_isomorphisms(const CombinatorialMap& a,
                                                  const CombinatorialMap& b);

/// Deterministic, relabeling-invariant orderings derived from the canonical code.
std::vector<int> canonical_vertex_order(const CombinatorialMap& m);
std::vector<int> canonical_edge_order(const CombinatorialMap& m);

// -- disk maps -------------------------------------------------------------

/// A map cellularly embedded in the disk: `outer` is the face walk (dart
/// sequence) of the outer boundary, which must be a simple cycle.
struct DiskMap {
    CombinatorialMap map;
    std::vector<int> outer;  // darts of the outer face walk

    std::vector<int> boundary_vertices() const;  // in walk order
};

/// Edge joining two non-consecutive boundary vertices.
std::vector<int> dividing_edges(const DiskMap& d);

/// True iff every face except the outer one is a triangle and the map is simple.
bool is_disk_triangulation(const DiskMap& d);

/// Completes a disk map to a triangulation containing it, adding no dividing
/// edges: stellates every interior face, then splits any parallel edges the
/// stellation introduced. Tracks nothing; ids of existing elements persist.
DiskMap triangulate_disk(const DiskMap& d);

/// Stellates one face (given by its traced dart walk): adds a center vertex
/// joined to every corner. Returns the center's id.
int stellate_face(CombinatorialMap& m, const std::vector<int>& walk);

// -- the genus-g rigidity family -------------------------------------------

struct GgSpec {
    int genus;                                  // >= 2
    std::vector<std::pair<int, int>> pants_type;  // cubic dual multigraph on
                                                  // 2g-2 nodes, 3g-3 edges
};

/// The standard "necklace" pants type for genus g.
GgSpec gg_necklace(int genus);
/// The K4 pants type (genus 3 only).
GgSpec gg_k4();

CombinatorialMap build_gg(const GgSpec& spec);

struct RigidityReport {
    int vertices = 0, edges = 0, faces_count = 0, triangles = 0;
    int euler = 0, expected_euler = 0;
    bool euler_ok = false;
    bool all_3cycles_facial = false;
    bool counts_match = false;
    std::vector<std::string> violations;
    bool pass() const { return euler_ok && all_3cycles_facial && counts_match; }
    std::string to_text() const;
};

RigidityReport verify_gg_rigidity(const CombinatorialMap& m, int expected_genus = -1);

/// Counts 3-cycles (triangles in the graph sense) and how many bound faces.
std::pair<long long, long long> triangle_census(const CombinatorialMap& m);

// -- text format -------------------------------------------------------------

std::string map_to_text(const CombinatorialMap& m);
CombinatorialMap map_from_text(const std::string& text);

}  // namespace surfemb::maps
