#include "surfemb/flat_cover.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace surfemb::flat {

std::string Length::str() const {
    if (is_rational()) return rat_str(offset);
    std::string out = "sqrt(" + rat_str(radicand) + ")";
    if (offset != 0) out += "+" + rat_str(offset);
    return out;
}

Length Length::parse(const std::string& text) {
    if (text.rfind("sqrt(", 0) == 0) {
        auto close = text.find(')');
        if (close == std::string::npos) throw std::invalid_argument("unterminated sqrt: " + text);
        Rational rad = rat_parse(text.substr(5, close - 5));
        Rational eps = 0;
        if (close + 1 < text.size()) {
            if (text[close + 1] != '+') throw std::invalid_argument("bad length literal: " + text);
            eps = rat_parse(text.substr(close + 2));
        }
        return radical(rad, eps);
    }
    return rational(rat_parse(text));
}

FlatSurface make_surface(SurfaceKind kind, const Rational& a, const Length& b) {
    if (a <= 0) throw std::invalid_argument("side length a must be positive");
    if (b.radicand < 0 || b.value() <= 0)
        throw std::invalid_argument("side length b must be positive");
    FlatSurface s{kind, a, b, to_double(a), b.value()};
    return s;
}

PlanePoint apply_deck(const DeckElement& g, const PlanePoint& p, const FlatSurface& s) {
    PlanePoint out;
    out.x = {p.x.r + g.m * s.a, p.x.s};
    if (s.kind == SurfaceKind::torus || g.m % 2 == 0) {
        out.y = {p.y.r, p.y.s + g.n};
    } else {
        // (-1)(y - b/2) + b/2 + nb = -y + (1+n) b
        out.y = {-p.y.r, Rational(1 + g.n) - p.y.s};
    }
    return out;
}

DeckElement compose_deck(const DeckElement& g2, const DeckElement& g1, const FlatSurface& s) {
    if (s.kind == SurfaceKind::torus) return {g1.m + g2.m, g1.n + g2.n};
    auto chi = [](long long m) { return static_cast<long long>(m % 2 != 0); };
    long long sgn = (g2.m % 2 == 0) ? 1 : -1;
    long long n3 = sgn * (chi(g1.m) + g1.n) + chi(g2.m) + g2.n - chi(g1.m + g2.m);
    return {g1.m + g2.m, n3};
}

DeckElement inverse_deck(const DeckElement& g, const FlatSurface& s) {
    if (s.kind == SurfaceKind::torus || g.m % 2 == 0) return {-g.m, -g.n};
    return {-g.m, g.n};
}

namespace {

// floor((r + s*b)/b) for the exact form; exact when r == 0, numeric with a
// half-ulp guard otherwise.
long long floor_div_b(const Coord& y, const FlatSurface& s) {
    if (y.r == 0) return rat_floor(y.s).convert_to<long long>();
    double v = y.eval(s) / s.b_num;
    double f = std::floor(v);
    // Nudge values that sit within rounding noise of an integer boundary.
    if (v - f > 1.0 - 1e-13) f += 1.0;
    return static_cast<long long>(f);
}

long long floor_div_a(const Coord& x, const FlatSurface& s) {
    if (x.s == 0) return rat_floor(x.r / s.a).convert_to<long long>();
    double v = x.eval(s) / s.a_num;
    double f = std::floor(v);
    if (v - f > 1.0 - 1e-13) f += 1.0;
    return static_cast<long long>(f);
}

}  // namespace

SurfacePoint project(const PlanePoint& p, const FlatSurface& s) {
    return project_with_deck(p, s).first;
}

std::pair<SurfacePoint, DeckElement> project_with_deck(const PlanePoint& p, const FlatSurface& s) {
    PlanePoint q = p;
    long long m = floor_div_a(q.x, s);
    if (m != 0) q = apply_deck(inverse_deck({m, 0}, s), q, s);
    long long n = floor_div_b(q.y, s);
    if (n != 0) q.y = {q.y.r, q.y.s - n};
    // p = sigma(m,0) . sigma(0,n) . q
    DeckElement g = compose_deck({m, 0}, {0, n}, s);
    return {SurfacePoint{q}, g};
}

SurfacePoint surface_point(const FlatSurface& s, const Rational& xr, const Rational& xs,
                           const Rational& yr, const Rational& ys) {
    return project(plane_point(xr, xs, yr, ys), s);
}

LiftSet lifts_in_window(const SurfacePoint& p, const PlanePoint& center, double radius,
                        const FlatSurface& s) {
    if (radius < 0) throw std::invalid_argument("radius must be nonnegative");
    LiftSet out{p, {}, radius};
    double cx = center.x.eval(s);
    double cy = center.y.eval(s);
    double px = p.rep.x.eval(s);
    long long m_lo = static_cast<long long>(std::floor((cx - px - radius) / s.a_num)) - 1;
    long long m_hi = static_cast<long long>(std::ceil((cx - px + radius) / s.a_num)) + 1;
    const double eps = 1e-12 * (1.0 + radius);
    for (long long m = m_lo; m <= m_hi; ++m) {
        PlanePoint horiz = apply_deck({m, 0}, p.rep, s);
        double hy = horiz.y.eval(s);
        long long n_lo = static_cast<long long>(std::floor((cy - hy - radius) / s.b_num)) - 1;
        long long n_hi = static_cast<long long>(std::ceil((cy - hy + radius) / s.b_num)) + 1;
        for (long long n = n_lo; n <= n_hi; ++n) {
            DeckElement g = compose_deck({0, n}, {m, 0}, s);
            PlanePoint lifted = apply_deck(g, p.rep, s);
            double lx = lifted.x.eval(s);
            double ly = lifted.y.eval(s);
            if (std::hypot(lx - cx, ly - cy) <= radius + eps)
                out.elements.push_back({g, lifted, lx, ly});
        }
    }
    std::sort(out.elements.begin(), out.elements.end(),
              [](const Lift& u, const Lift& v) { return u.g < v.g; });
    return out;
}

DistanceResult distance_with_radius(const SurfacePoint& p, const SurfacePoint& q,
                                    const FlatSurface& s, double radius, double margin) {
    LiftSet lifts = lifts_in_window(p, q.rep, radius, s);
    double qx = q.rep.x.eval(s);
    double qy = q.rep.y.eval(s);
    double best = std::numeric_limits<double>::infinity();
    DeckElement best_g;
    for (const Lift& l : lifts.elements) {
        double d = std::hypot(l.px - qx, l.py - qy);
        if (d < best) {
            best = d;
            best_g = l.g;
        }
    }
    int count = 0;
    for (const Lift& l : lifts.elements) {
        double d = std::hypot(l.px - qx, l.py - qy);
        if (d <= best + margin) ++count;
    }
    return {best, count, best_g};
}

namespace {

int lex_compare(const PlanePoint& u, const PlanePoint& v) {
    if (u.x.r != v.x.r) return u.x.r < v.x.r ? -1 : 1;
    if (u.x.s != v.x.s) return u.x.s < v.x.s ? -1 : 1;
    if (u.y.r != v.y.r) return u.y.r < v.y.r ? -1 : 1;
    if (u.y.s != v.y.s) return u.y.s < v.y.s ? -1 : 1;
    return 0;
}

}  // namespace

DistanceResult distance(const SurfacePoint& p, const SurfacePoint& q, const FlatSurface& s,
                        double margin) {
    // Canonical argument order makes the result bitwise symmetric.
    if (lex_compare(q.rep, p.rep) < 0) {
        DistanceResult r = distance(q, p, s, margin);
        r.best = inverse_deck(r.best, s);
        return r;
    }
    double px = p.rep.x.eval(s), py = p.rep.y.eval(s);
    double qx = q.rep.x.eval(s), qy = q.rep.y.eval(s);
    double direct = std::hypot(px - qx, py - qy);
    double radius = direct + s.a_num + s.b_num;  // always contains the true minimizer
    return distance_with_radius(p, q, s, radius, margin);
}

std::string to_string(LiftVerdict v) {
    switch (v) {
        case LiftVerdict::Unique: return "Unique";
        case LiftVerdict::Tie: return "Tie";
        default: return "NotShortest";
    }
}

LiftVerdict is_unique_shortest_lift(const SurfacePoint& p, const DeckElement& g,
                                    const SurfacePoint& q, const FlatSurface& s, double margin) {
    if (margin < 0) throw std::invalid_argument("margin must be nonnegative");
    PlanePoint gp = apply_deck(g, p.rep, s);
    double qx = q.rep.x.eval(s);
    double qy = q.rep.y.eval(s);
    double own = std::hypot(gp.x.eval(s) - qx, gp.y.eval(s) - qy);
    double radius = own + s.a_num + s.b_num;
    LiftSet lifts = lifts_in_window(p, q.rep, radius, s);
    bool tie = false;
    for (const Lift& l : lifts.elements) {
        if (l.g == g) continue;
        double d = std::hypot(l.px - qx, l.py - qy);
        if (d < own - margin) return LiftVerdict::NotShortest;
        if (d < own + margin) tie = true;
    }
    return tie ? LiftVerdict::Tie : LiftVerdict::Unique;
}

ClassRecord classify_deck_element(const DeckElement& g, const FlatSurface& s) {
    ClassRecord rec;
    rec.horizontal_displacement = std::abs(static_cast<double>(g.m)) * s.a_num;
    if (s.kind == SurfaceKind::torus) {
        rec.two_sided = true;
        rec.z2_trivial = (g.m % 2 == 0) && (g.n % 2 == 0);
        rec.z_trivial = g.is_identity();
        return rec;
    }
    // Klein bottle: the element tau^n gamma^m maps to (m, n mod 2) in
    // H1(K;Z) = Z (+) Z/2 and to (m mod 2, n mod 2) in H1(K;Z/2).
    rec.two_sided = g.m % 2 == 0;
    rec.z2_trivial = (g.m % 2 == 0) && (g.n % 2 == 0);
    rec.z_trivial = (g.m == 0) && (g.n % 2 == 0);
    return rec;
}

}  // namespace surfemb::flat
