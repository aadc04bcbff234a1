#pragma once

#include "surfemb/flat_cover.hpp"
#include "surfemb/maps.hpp"
#include "surfemb/rng.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace surfemb::femb {

/// A drawing of a combinatorial map on a flat surface: vertex representatives
/// in the fundamental domain plus, per edge, the deck element whose action on
/// the head representative yields the segment drawn from the tail
/// representative (tail = origin of dart 2e).
struct FlatDrawing {
    flat::FlatSurface surface;
    maps::CombinatorialMap map;
    std::vector<flat::SurfacePoint> positions;   // indexed by vertex id
    std::vector<flat::DeckElement> edge_lifts;   // indexed by edge id

    /// Lift of the edge as seen from dart d's origin.
    flat::DeckElement lift_from(int d) const {
        int e = d / 2;
        return d == 2 * e ? edge_lifts[e] : flat::inverse_deck(edge_lifts[e], surface);
    }
};

struct EdgeIssue {
    int edge;
    std::string kind;    // "not-shortest" | "tie" | "crossing" | "rotation" | "closure" | "vertex-on-edge"
    std::string detail;
};

struct CertReport {
    bool closure_ok = true;    // deck composition around every face is trivial
    bool shortest_ok = true;   // (i) every edge lift is the unique shortest one
    bool crossing_ok = true;   // (ii) no two lifted segments cross
    bool rotation_ok = true;   // (iii) induced rotations match the map
    std::vector<EdgeIssue> issues;
    bool pass() const { return closure_ok && shortest_ok && crossing_ok && rotation_ok; }
    std::string to_text() const;
    std::string to_structured() const;
};

CertReport verify_drawing(const FlatDrawing& d, double margin = 1e-9);

/// Geometric vertex splitting: replays a contraction script on a verified
/// drawing, placing the new vertex at distance <= delta along the bisector of
/// its dart fan; halves delta (up to 60 times) until verification passes.
FlatDrawing split_vertex(const FlatDrawing& d, const maps::SplitScript& script, double delta,
                         double margin = 1e-9);

// -- catalog -----------------------------------------------------------------

struct CatalogEntry {
    std::string name;
    maps::CombinatorialMap map;
    FlatDrawing drawing;
    std::string provenance;
};

std::vector<CatalogEntry> catalog_load(const std::string& dir);
void catalog_save(const std::string& dir, const std::vector<CatalogEntry>& entries);

/// Lattice search for a shortest-path drawing of `map` on `surface`: vertex
/// placements on the lattice (step in both directions, optional +-shifts),
/// pruned by per-edge unique-shortest feasibility and pairwise crossings.
/// Returns the first verified drawing found.
std::optional<FlatDrawing> catalog_search(const maps::CombinatorialMap& map,
                                          const flat::FlatSurface& surface,
                                          const Rational& lattice_step,
                                          const std::vector<Rational>& shift_set = {},
                                          double margin = 1e-9,
                                          long long node_budget = 50'000'000);

/// Contracts an edge at the drawing level: positions survive, inherited edge
/// lifts compose with the contracted edge's lift (homotopy bookkeeping only;
/// the result is generally not a valid shortest-path drawing).
FlatDrawing contract_drawing(const FlatDrawing& d, int edge, maps::SplitScript* script_out,
                             int keep = -1);

/// Spring-equilibrium drawing on a torus in the homotopy class given by the
/// edge lifts: solves the harmonic system exactly over the rationals. The
/// equilibrium has geodesic edges with disjoint interiors; whether they are
/// unique shortest paths is for verify_drawing to decide.
FlatDrawing harmonic_drawing(const maps::CombinatorialMap& map, const flat::FlatSurface& surface,
                             const std::vector<flat::DeckElement>& lifts,
                             const std::vector<Rational>& weights = {});

/// Canonical contraction to an irreducible triangulation (the same
/// deterministic edge choice embed() uses), recording the scripts.
std::pair<maps::CombinatorialMap, std::vector<maps::SplitScript>> contract_to_irreducible(
    const maps::CombinatorialMap& map);

/// Grows the torus catalog to closure under random split + canonical
/// contraction: newly reached irreducible triangulations get harmonic
/// drawings (verified before admission). Returns the number of entries added.
int bootstrap_torus_catalog(std::vector<CatalogEntry>& entries, int iterations,
                            std::uint64_t seed, std::string* log = nullptr);

struct EmbedMissingEntry : std::runtime_error {
    std::string terminal_map_text;
    explicit EmbedMissingEntry(const std::string& msg, std::string terminal)
        : std::runtime_error(msg), terminal_map_text(std::move(terminal)) {}
};

/// Theorem-style embedding pipeline: contract to an irreducible triangulation,
/// match it against the catalog, pull the entry's drawing back, and replay the
/// splits geometrically. The result passes verify_drawing.
FlatDrawing embed(const maps::CombinatorialMap& map, const flat::FlatSurface& surface,
                  const std::vector<CatalogEntry>& catalog, double margin = 1e-9);

// -- built-in drawings -------------------------------------------------------

/// K7 on the unit torus via the classical lattice construction (entry T1).
FlatDrawing k7_torus_drawing();
/// n x n grid triangulation of the unit torus with short diagonals.
FlatDrawing grid_torus_drawing(int n);
/// K6-minus-a-face on the Moebius band inside the paper's Klein metric.
FlatDrawing mb1_band_drawing();
/// Kc1 (two K6 copies glued along a triangle) on the paper's Klein metric,
/// composed from two Mb1 bands via the boundary-fixing isometry.
FlatDrawing kc1_klein_drawing();
/// The paper's Klein surface b = sqrt(4/3) + 1/100.
flat::FlatSurface paper_klein_surface();

/// Composes two Moebius-band drawings sharing a boundary triangle into a
/// closed Klein-bottle drawing via the isometry (x, y) -> (x + a, y + b/2).
FlatDrawing compose_mobius_pair(const FlatDrawing& band1, const FlatDrawing& band2);

/// Builds the map induced by the geometry: rotations from segment angles,
/// edge signs from deck-element parity.
maps::CombinatorialMap induced_map(const flat::FlatSurface& surface,
                                   const std::vector<flat::SurfacePoint>& positions,
                                   const std::vector<std::array<int, 2>>& edges,
                                   const std::vector<flat::DeckElement>& lifts,
                                   const std::vector<std::string>& names = {});

// -- file format ---------------------------------------------------------------

std::string drawing_to_text(const FlatDrawing& d);

struct ParsedDrawing {
    flat::FlatSurface surface;
    std::vector<std::string> names;
    std::vector<flat::SurfacePoint> positions;
    std::vector<std::array<int, 2>> edges;          // indices into names
    std::vector<flat::DeckElement> lifts;           // from edges[i][0]
};

ParsedDrawing parse_drawing(const std::string& text);
/// Binds a parsed drawing to a map by vertex names.
FlatDrawing attach_map(const ParsedDrawing& p, const maps::CombinatorialMap& map);
/// Builds the drawing on the geometry-induced map.
FlatDrawing induce_map(const ParsedDrawing& p);

/// SVG rendering: green thick fundamental-domain boundary, black thin edges.
std::string drawing_to_svg(const FlatDrawing& d, double scale = 240.0);

/// Random vertex split preserving the simple-triangulation property; returns
/// false if the sampled split was invalid (caller retries). The applied
/// script is reported through script_out when given.
bool random_vertex_split(maps::CombinatorialMap& m, Rng& rng,
                         maps::SplitScript* script_out = nullptr);

/// Lift bookkeeping for a combinatorial split: the new vertex sits in the
/// hub's homotopy class, so the new edges take the hub's lift classes.
FlatDrawing split_drawing_class(const FlatDrawing& d, const maps::SplitScript& script);

}  // namespace surfemb::femb
