#pragma once

#include "surfemb/hyperbolic_core.hpp"
#include "surfemb/maps.hpp"
#include "surfemb/rng.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace surfemb::hexp {

/// The canonical hexagonal decomposition of the closed orientable genus-g
/// surface: every pair of pants of a necklace pants decomposition splits into
/// a front and a back copy of the model right-angled hexagon. Hexagon 2p+0 is
/// the front copy of pants p, 2p+1 the back copy. Sides in ccw order:
/// [0] arc of circle slot 0, [1] seam 0-1, [2] arc of slot 1, [3] seam 1-2,
/// [4] arc of slot 2, [5] seam 2-0. Pairings identify side corners
/// start-to-start (parameter t to t).
struct HexComplex {
    int genus;
    struct Pairing {
        int hex_a, side_a, hex_b, side_b;
    };
    std::vector<Pairing> pairings;                 // 12g-12 edges of the complex
    std::vector<std::array<int, 6>> pairing_of;    // hexagon,side -> pairing index
    std::vector<std::array<int, 6>> corner_class;  // hexagon,corner -> vertex id
    int vertex_count = 0;
    std::vector<int> sigma1;  // hexagon involutions
    std::vector<int> sigma2;

    int num_hexagons() const { return 4 * genus - 4; }
    std::pair<int, int> partner(int hex, int side) const;
    int euler_characteristic() const {
        return vertex_count - static_cast<int>(pairings.size()) + num_hexagons();
    }
};

HexComplex canonical_hex_decomposition(int genus);

/// Checks all structural invariants (counts, degree-4 vertices, involutions
/// compatible with pairings, orientability); throws on violation.
void validate_complex(const HexComplex& c);

// -- input graphs ------------------------------------------------------------

/// A graph already cut by the decomposition: per-hexagon pieces with
/// attachment nodes on sides, plus the grouping of segments into original
/// edges. Interior nodes of degree >= 3 carry explicit rotations.
struct HexGraph {
    int genus;
    struct Node {
        std::string name;
        int hex;    // owning hexagon (for side nodes: hex_a of the declaration)
        int side;   // -1 for interior nodes
        int order;  // crossing order along the side (t ascending), -1 interior
    };
    std::vector<Node> nodes;
    struct Seg {
        int u, v;
        int hex;
    };
    std::vector<Seg> segs;
    struct Path {
        std::string name;
        std::vector<int> nodes;
    };
    std::vector<Path> paths;
    std::map<int, std::vector<int>> rotations;  // node -> ccw neighbor node ids

    int node_by_name(const std::string& n) const;
};

/// Structural validation against a complex; throws on violation.
void validate_hexgraph(const HexGraph& g, const HexComplex& c);

std::string hexgraph_to_text(const HexGraph& g);
HexGraph hexgraph_from_text(const std::string& text);

// -- pipeline ----------------------------------------------------------------

struct PipelineConfig {
    double tol = 1e-8;
    int max_sweeps = 200000;
    bool uniqueness_subdivision = false;
    double phase = 0.0;      // attachment spacing phase, in (0,1) t-units
    double arc_constant = 8; // reported bound: arcs per edge <= C * g
};

struct ArcRecord {
    int hex;
    hyp::HSegment seg;
};

struct PolyGeodesicDrawing {
    int genus;
    std::vector<std::string> edge_names;
    std::vector<std::vector<ArcRecord>> arcs;  // per original edge, in order
    int max_arcs_per_edge = 0;
    int max_side_crossings = 0;
};

struct HexEmbedDiagnostics {
    std::vector<hyp::TutteDiagnostics> per_hexagon;
    bool all_certificates = true;
    int max_arcs_per_edge = 0;
    double reported_bound = 0;  // arc_constant * genus
};

struct HexEmbedResult {
    PolyGeodesicDrawing drawing;
    HexEmbedDiagnostics diag;
};

/// Runs preprocess (bridges, dividing-edge subdivision, disk triangulation),
/// fixes evenly spaced attachment positions, solves each hexagon with the
/// hyperbolic Tutte embedder, and concatenates arcs across pairings.
HexEmbedResult embed_on_genus_g(const HexGraph& g, const PipelineConfig& cfg = {});

/// Per-edge-pair proper crossing counts between two drawings on the same
/// complex.
struct CrossingReport {
    long long total = 0;
    int max_pair = 0;
    std::map<std::pair<int, int>, int> matrix;
    std::string to_text(const PolyGeodesicDrawing& d1, const PolyGeodesicDrawing& d2) const;
};

CrossingReport count_crossings(const PolyGeodesicDrawing& d1, const PolyGeodesicDrawing& d2);

/// Machine-readable arc list.
std::string arcs_to_text(const PolyGeodesicDrawing& d);
PolyGeodesicDrawing arcs_from_text(const std::string& text);

/// One Poincare disk per hexagon, pairing labels on the sides.
std::string hex_drawing_svg(const PolyGeodesicDrawing& d, const HexComplex& c);

// -- test families -----------------------------------------------------------

/// Deterministic graph family mirroring the G_g construction at desk scale:
/// an equatorial cycle through all pants plus meridian cycles at the chord
/// curves and one interior triangle. Variant 1 reroutes through the other
/// arcs so two drawings intersect transversally.
HexGraph test_family(int genus, int variant = 0);

/// Empirical convexity check: discrete shortest paths on a fine glued mesh
/// of the g=2 complex never undercut the intra-hexagon geodesic by more than
/// the mesh tolerance. Returns the worst (mesh - geodesic) gap observed.
double convexity_spot_check(int pairs, std::uint64_t seed, int mesh_level = 4);

}  // namespace surfemb::hexp
