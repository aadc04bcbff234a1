#include "surfemb/klein_obstruction.hpp"

#include <sstream>
#include <stdexcept>

namespace surfemb::klein {

QuadExt horizontal_extent_bound(const Rational& a, const flat::Length& b) {
    if (a <= 0 || b.value() <= 0) throw std::invalid_argument("side lengths must be positive");
    // b = sqrt(rad) + eps  =>  b^2 = (rad + eps^2) + 2 eps sqrt(rad)
    QuadExt b2{b.radicand + b.offset * b.offset,
               b.is_rational() ? Rational(0) : 2 * b.offset, b.radicand};
    Rational inv8a = Rational(1) / (8 * a);
    QuadExt bound = b2 * inv8a;
    bound.p += a / 2;
    return bound;
}

double horizontal_extent_bound(double a, double b) {
    if (a <= 0 || b <= 0) throw std::invalid_argument("side lengths must be positive");
    return a / 2 + b * b / (8 * a);
}

DisplacementResult required_displacement(const flat::DeckElement& cycle_class,
                                         const Rational& a, const flat::FlatSurface& s) {
    flat::ClassRecord rec = flat::classify_deck_element(cycle_class, s);
    if (!rec.two_sided) return {false, QuadExt::rational(0), "not-two-sided"};
    if (!rec.z2_trivial) return {false, QuadExt::rational(0), "z2-nontrivial"};
    if (rec.z_trivial) return {false, QuadExt::rational(0), "z-trivial"};
    long long m = cycle_class.m < 0 ? -cycle_class.m : cycle_class.m;
    return {true, QuadExt::rational(m * a), ""};
}

ObstructionReport certify_obstruction(int k, const Rational& a, const flat::Length& b,
                                      double margin) {
    if (k < 3) throw std::invalid_argument("splitting cycles have length >= 3");
    ObstructionReport rep;
    rep.a = a;
    rep.b = b;
    rep.cycle_length = k;
    rep.per_edge_bound = horizontal_extent_bound(a, b);
    rep.total_bound = rep.per_edge_bound * Rational(k);
    rep.required = QuadExt::rational(2 * a);
    rep.derivation.push_back(
        "two-sided + Z2-trivial + Z-nontrivial cycle class forces horizontal displacement >= 2a");
    rep.derivation.push_back("each unique-shortest edge has horizontal extent < a/2 + b^2/(8a)");

    QuadExt gap = rep.required - rep.total_bound;
    if (margin == 0.0) {
        rep.exact = true;
        rep.verdict =
            gap.sign() > 0 ? ObstructionVerdict::Obstructed : ObstructionVerdict::NoObstruction;
    } else {
        rep.exact = false;
        rep.verdict = gap.value() > margin ? ObstructionVerdict::Obstructed
                                           : ObstructionVerdict::NoObstruction;
    }
    rep.derivation.push_back(rep.verdict == ObstructionVerdict::Obstructed
                                 ? "total horizontal extent falls short of the displacement"
                                 : "bound does not contradict the displacement");
    return rep;
}

ObstructionVerdict certify_obstruction_numeric(int k, double a, double b) {
    if (k < 3) throw std::invalid_argument("splitting cycles have length >= 3");
    double total = k * horizontal_extent_bound(a, b);
    return total < 2 * a ? ObstructionVerdict::Obstructed : ObstructionVerdict::NoObstruction;
}

namespace {
std::string qstr(const QuadExt& v) {
    if (v.q == 0) return rat_str(v.p);
    std::ostringstream os;
    os << rat_str(v.p) << "+" << rat_str(v.q) << "*sqrt(" << rat_str(v.rad) << ")";
    return os.str();
}
}  // namespace

std::string ObstructionReport::to_text() const {
    std::ostringstream os;
    bool obstructed = verdict == ObstructionVerdict::Obstructed;
    os << (obstructed ? "Obstructed" : "NoObstruction") << ": " << cycle_length << " x "
       << qstr(per_edge_bound) << " = " << qstr(total_bound) << (obstructed ? " < " : " >= ")
       << qstr(required) << "\n";
    os << "surface a=" << rat_str(a) << " b=" << b.str() << "\n";
    for (const auto& line : derivation) os << "  - " << line << "\n";
    return os.str();
}

std::string ObstructionReport::to_structured() const {
    std::ostringstream os;
    os << "surfemb-report v1\n";
    os << "kind obstruction\n";
    os << "a " << rat_str(a) << "\n";
    os << "b " << b.str() << "\n";
    os << "k " << cycle_length << "\n";
    os << "per-edge-bound " << qstr(per_edge_bound) << "\n";
    os << "total-bound " << qstr(total_bound) << "\n";
    os << "required-displacement " << qstr(required) << "\n";
    os << "exact " << (exact ? 1 : 0) << "\n";
    os << "verdict "
       << (verdict == ObstructionVerdict::Obstructed ? "Obstructed" : "NoObstruction") << "\n";
    return os.str();
}

}  // namespace surfemb::klein
