#include "surfemb/flat_embedder.hpp"
#include "surfemb/detail/flat_num.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace surfemb::femb {

using detail::Pt;

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

}  // namespace

std::string drawing_to_svg(const FlatDrawing& d, double scale) {
    const auto& s = d.surface;
    double W = s.a_num * scale, H = s.b_num * scale;
    double pad = 10;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(W + 2 * pad) << "\" height=\""
       << fmt(H + 2 * pad) << "\" viewBox=\"0 0 " << fmt(W + 2 * pad) << " " << fmt(H + 2 * pad)
       << "\">\n";
    os << "<defs><clipPath id=\"dom\"><rect x=\"" << fmt(pad) << "\" y=\"" << fmt(pad)
       << "\" width=\"" << fmt(W) << "\" height=\"" << fmt(H) << "\"/></clipPath></defs>\n";
    auto X = [&](double x) { return pad + x * scale; };
    auto Y = [&](double y) { return pad + (s.b_num - y) * scale; };  // y up

    os << "<g clip-path=\"url(#dom)\" stroke=\"black\" stroke-width=\"1\">\n";
    for (int e = 0; e < static_cast<int>(d.map.edge_sign.size()); ++e) {
        if (!d.map.edge_alive(e)) continue;
        int u = d.map.origin[2 * e], v = d.map.origin[2 * e + 1];
        Pt a{d.positions[u].rep.x.eval(s), d.positions[u].rep.y.eval(s)};
        auto lifted = flat::apply_deck(d.edge_lifts[e], d.positions[v].rep, s);
        Pt b{lifted.x.eval(s), lifted.y.eval(s)};
        // draw all deck translates meeting the domain
        long long m_lo = static_cast<long long>(std::floor(-std::max(a.x, b.x) / s.a_num)) - 1;
        long long m_hi = static_cast<long long>(std::ceil((s.a_num - std::min(a.x, b.x)) / s.a_num)) + 1;
        for (long long mm = m_lo; mm <= m_hi; ++mm) {
            Pt a1 = detail::deck_apply_num(s, mm, 0, a);
            Pt b1 = detail::deck_apply_num(s, mm, 0, b);
            long long n_lo =
                static_cast<long long>(std::floor(-std::max(a1.y, b1.y) / s.b_num)) - 1;
            long long n_hi = static_cast<long long>(
                                 std::ceil((s.b_num - std::min(a1.y, b1.y)) / s.b_num)) + 1;
            for (long long nn = n_lo; nn <= n_hi; ++nn) {
                double ax = a1.x, ay = a1.y + nn * s.b_num;
                double bx = b1.x, by = b1.y + nn * s.b_num;
                if (std::max(ax, bx) < 0 || std::min(ax, bx) > s.a_num) continue;
                if (std::max(ay, by) < 0 || std::min(ay, by) > s.b_num) continue;
                os << "<line x1=\"" << fmt(X(ax)) << "\" y1=\"" << fmt(Y(ay)) << "\" x2=\""
                   << fmt(X(bx)) << "\" y2=\"" << fmt(Y(by)) << "\"/>\n";
            }
        }
    }
    os << "</g>\n";
    for (int v : d.map.alive_vertices()) {
        double x = d.positions[v].rep.x.eval(s), y = d.positions[v].rep.y.eval(s);
        os << "<circle cx=\"" << fmt(X(x)) << "\" cy=\"" << fmt(Y(y))
           << "\" r=\"2.5\" fill=\"black\"/>\n";
    }
    os << "<rect x=\"" << fmt(pad) << "\" y=\"" << fmt(pad) << "\" width=\"" << fmt(W)
       << "\" height=\"" << fmt(H)
       << "\" fill=\"none\" stroke=\"green\" stroke-width=\"3\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace surfemb::femb
