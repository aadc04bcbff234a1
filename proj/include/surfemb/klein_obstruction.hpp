#pragma once

#include "surfemb/flat_cover.hpp"
#include "surfemb/quadext.hpp"

#include <string>

namespace surfemb::klein {

/// Upper bound a/2 + b^2/(8a) on the horizontal extent of a lift of a unique
/// shortest path on the Klein bottle with sides a, b. Exact in Q(sqrt(rad)).
QuadExt horizontal_extent_bound(const Rational& a, const flat::Length& b);
double horizontal_extent_bound(double a, double b);

struct DisplacementResult {
    bool ok;
    QuadExt displacement;   // |m| * a when ok
    std::string failed_test;  // "not-two-sided" | "z2-nontrivial" | "z-trivial"
};

/// Minimal horizontal displacement |m|*a of a cycle class that bounds a
/// Moebius band on both sides; rejects classes failing the sidedness or
/// homology tests of the case analysis.
DisplacementResult required_displacement(const flat::DeckElement& cycle_class,
                                         const Rational& a, const flat::FlatSurface& s);

enum class ObstructionVerdict { Obstructed, NoObstruction };

struct ObstructionReport {
    Rational a;
    flat::Length b;
    int cycle_length;
    QuadExt per_edge_bound;
    QuadExt total_bound;        // k * per_edge_bound
    QuadExt required;           // minimal displacement 2a
    ObstructionVerdict verdict;
    std::vector<std::string> derivation;  // which lemma-level facts fired
    bool exact;                 // comparison decided in exact arithmetic

    std::string to_text() const;
    std::string to_structured() const;
};

/// Certifies whether a k-cycle splitting the Klein bottle into two Moebius
/// bands can consist of unique shortest paths: Obstructed iff
/// k * horizontal_extent_bound(a,b) < 2a.
ObstructionReport certify_obstruction(int k, const Rational& a, const flat::Length& b,
                                      double margin = 0.0);

/// Double-precision verdict used for threshold scans.
ObstructionVerdict certify_obstruction_numeric(int k, double a, double b);

}  // namespace surfemb::klein
