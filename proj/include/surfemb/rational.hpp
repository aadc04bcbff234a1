#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace surfemb {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigInt floor_div(const BigInt& num, const BigInt& den) {
    BigInt q = num / den;
    if ((num % den) != 0 && ((num < 0) != (den < 0))) --q;
    return q;
}

/// Largest integer k with k <= r.
inline BigInt rat_floor(const Rational& r) {
    return floor_div(numerator(r), denominator(r));
}

/// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string rat_str(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "p", "p/q", or a plain decimal like "0.25".
inline Rational rat_parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + text);
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        size_t frac_len = text.size() - dot - 1;
        bool neg = false;
        if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) neg = digits[0] == '-';
        BigInt num(digits);
        BigInt den = 1;
        for (size_t i = 0; i < frac_len; ++i) den *= 10;
        (void)neg;
        return Rational(num, den);
    }
    return Rational(BigInt(text));
}

}  // namespace surfemb
