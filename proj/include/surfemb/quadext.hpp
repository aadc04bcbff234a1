#pragma once

#include "surfemb/rational.hpp"

namespace surfemb {

/// Exact value p + q*sqrt(rad) with rational p, q and a fixed nonnegative
/// rational radicand. Supports the comparisons needed by the obstruction
/// certificate without floating point.
struct QuadExt {
    Rational p;
    Rational q;
    Rational rad;  // radicand; 0 makes the value plain rational

    static QuadExt rational(const Rational& r) { return {r, 0, 0}; }

    double value() const { return to_double(p) + to_double(q) * std::sqrt(to_double(rad)); }

    QuadExt operator+(const QuadExt& o) const {
        check_compatible(o);
        return {p + o.p, q + o.q, rad == 0 ? o.rad : rad};
    }
    QuadExt operator-(const QuadExt& o) const {
        check_compatible(o);
        return {p - o.p, q - o.q, rad == 0 ? o.rad : rad};
    }
    QuadExt operator*(const Rational& c) const { return {p * c, q * c, rad}; }

    /// Exact square, still of the form p' + q'*sqrt(rad).
    QuadExt squared() const { return {p * p + q * q * rad, 2 * p * q, rad}; }

    /// Exact sign of p + q*sqrt(rad).
    int sign() const {
        int sp = p == 0 ? 0 : (p > 0 ? 1 : -1);
        if (q == 0 || rad == 0) return sp;
        int sq = q > 0 ? 1 : -1;
        if (sp == 0) return sq;
        if (sp == sq) return sp;
        // Opposite signs: compare p^2 against q^2*rad.
        Rational lhs = p * p;
        Rational rhs = q * q * rad;
        if (lhs == rhs) return 0;
        return (lhs > rhs) ? sp : sq;
    }

    bool operator<(const QuadExt& o) const { return (*this - o).sign() < 0; }
    bool operator==(const QuadExt& o) const { return (*this - o).sign() == 0; }

  private:
    void check_compatible(const QuadExt& o) const {
        if (rad != 0 && o.rad != 0 && rad != o.rad)
            throw std::invalid_argument("incompatible radicands");
    }
};

}  // namespace surfemb
