#pragma once

#include "surfemb/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace surfemb::flat {

enum class SurfaceKind { torus, klein };

/// A side length, either rational or sqrt(radicand) + offset.
struct Length {
    Rational radicand;  // 0 => pure rational value held in offset
    Rational offset;

    static Length rational(const Rational& r) { return {0, r}; }
    static Length radical(const Rational& rad, const Rational& eps) { return {rad, eps}; }

    bool is_rational() const { return radicand == 0; }
    double value() const { return std::sqrt(to_double(radicand)) + to_double(offset); }
    std::string str() const;
    static Length parse(const std::string& text);
    bool operator==(const Length& o) const { return radicand == o.radicand && offset == o.offset; }
};

/// Flat torus or Klein bottle: the rectangle [0,a]x[0,b] modulo its deck
/// group. For the torus the group is generated by the two side translations;
/// for the Klein bottle by the glide reflection (x,y) -> (x+a, b-y) and the
/// vertical translation.
struct FlatSurface {
    SurfaceKind kind;
    Rational a;       // horizontal side (kept rational so x-coordinates stay exact)
    Length b;         // vertical side
    double a_num;     // cached numeric values
    double b_num;

    bool is_klein() const { return kind == SurfaceKind::klein; }
};

FlatSurface make_surface(SurfaceKind kind, const Rational& a, const Length& b);

/// Coordinate stored exactly as r + s*b.
struct Coord {
    Rational r;
    Rational s;

    double eval(const FlatSurface& surf) const { return to_double(r) + to_double(s) * surf.b_num; }
    Coord operator-() const { return {-r, -s}; }
    bool operator==(const Coord& o) const { return r == o.r && s == o.s; }
};

struct PlanePoint {
    Coord x;
    Coord y;
    bool operator==(const PlanePoint& o) const { return x == o.x && y == o.y; }
};

inline PlanePoint plane_point(const Rational& xr, const Rational& xs, const Rational& yr,
                              const Rational& ys) {
    return {{xr, xs}, {yr, ys}};
}

/// Point of the quotient surface, represented in [0,a) x [0,b).
struct SurfacePoint {
    PlanePoint rep;
};

/// Deck transformation index (m,n): on the torus (x+ma, y+nb); on the Klein
/// bottle (x+ma, (-1)^m (y-b/2) + b/2 + nb). Horizontal parity of m carries
/// the glide reflection.
struct DeckElement {
    long long m = 0;
    long long n = 0;

    bool is_identity() const { return m == 0 && n == 0; }
    bool operator==(const DeckElement& o) const { return m == o.m && n == o.n; }
    bool operator<(const DeckElement& o) const { return m != o.m ? m < o.m : n < o.n; }
};

PlanePoint apply_deck(const DeckElement& g, const PlanePoint& p, const FlatSurface& s);

/// Group law: returns the element acting as "apply first, then second".
DeckElement compose_deck(const DeckElement& second, const DeckElement& first,
                         const FlatSurface& s);
DeckElement inverse_deck(const DeckElement& g, const FlatSurface& s);

/// Reduces a plane point to its fundamental-domain representative.
SurfacePoint project(const PlanePoint& p, const FlatSurface& s);

/// Same, also returning the deck element g with p = g(representative).
std::pair<SurfacePoint, DeckElement> project_with_deck(const PlanePoint& p, const FlatSurface& s);

/// Convenience: surface point from exact coordinates already in the domain.
SurfacePoint surface_point(const FlatSurface& s, const Rational& xr, const Rational& xs,
                           const Rational& yr, const Rational& ys);

struct Lift {
    DeckElement g;
    PlanePoint point;
    double px;  // numeric evaluation, cached
    double py;
};

struct LiftSet {
    SurfacePoint base;
    std::vector<Lift> elements;
    double window_radius;
};

/// All orbit points of p within `radius` of `center` (complete enumeration).
LiftSet lifts_in_window(const SurfacePoint& p, const PlanePoint& center, double radius,
                        const FlatSurface& s);

struct DistanceResult {
    double length;
    int minimizing_lifts;      // count of deck elements within `margin` of the minimum
    DeckElement best;
};

DistanceResult distance(const SurfacePoint& p, const SurfacePoint& q, const FlatSurface& s,
                        double margin = 1e-9);

/// Same search with an explicit enumeration radius (used by the window
/// sufficiency property test).
DistanceResult distance_with_radius(const SurfacePoint& p, const SurfacePoint& q,
                                    const FlatSurface& s, double radius, double margin = 1e-9);

enum class LiftVerdict { Unique, Tie, NotShortest };

std::string to_string(LiftVerdict v);

/// Is |g.p - q| the strict minimum over the deck orbit of p, by more than
/// `margin`?
LiftVerdict is_unique_shortest_lift(const SurfacePoint& p, const DeckElement& g,
                                    const SurfacePoint& q, const FlatSurface& s, double margin);

struct ClassRecord {
    bool two_sided;
    bool z2_trivial;
    bool z_trivial;
    double horizontal_displacement;
};

/// Free-homotopy classification of a deck element: sidedness of the projected
/// cycle and triviality in H1 with Z and Z/2 coefficients.
ClassRecord classify_deck_element(const DeckElement& g, const FlatSurface& s);

}  // namespace surfemb::flat
