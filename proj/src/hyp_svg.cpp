#include "surfemb/hyperbolic_core.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace surfemb::hyp {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

// Path for the geodesic between two Poincare-disk points: a circular arc
// orthogonal to the unit circle, or a straight chord through the origin.
std::string geodesic_path(DiskPoint p, DiskPoint q, double cx, double cy, double scale) {
    auto X = [&](double x) { return cx + x * scale; };
    auto Y = [&](double y) { return cy - y * scale; };
    double det = 2 * (p.x * q.y - p.y * q.x);
    std::ostringstream os;
    if (std::abs(det) < 1e-9) {
        os << "M " << fmt(X(p.x)) << " " << fmt(Y(p.y)) << " L " << fmt(X(q.x)) << " "
           << fmt(Y(q.y));
        return os.str();
    }
    double rp = p.x * p.x + p.y * p.y + 1;
    double rq = q.x * q.x + q.y * q.y + 1;
    double ox = (rp * q.y - rq * p.y) / det;
    double oy = (rq * p.x - rp * q.x) / det;
    double r = std::sqrt(std::max(0.0, ox * ox + oy * oy - 1.0));
    // sweep: keep the arc on the side of the chord containing the disk origin
    double cross = (q.x - p.x) * (oy - p.y) - (q.y - p.y) * (ox - p.x);
    int sweep = cross > 0 ? 0 : 1;
    os << "M " << fmt(X(p.x)) << " " << fmt(Y(p.y)) << " A " << fmt(r * scale) << " "
       << fmt(r * scale) << " 0 0 " << sweep << " " << fmt(X(q.x)) << " " << fmt(Y(q.y));
    return os.str();
}

}  // namespace

std::string hyperbolic_svg(const Hexagon& hex, const std::vector<HSegment>& segments,
                           const std::vector<std::string>& labels, double scale) {
    double W = 2.2 * scale, cx = W / 2, cy = W / 2;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(W) << "\" height=\""
       << fmt(W) << "\" viewBox=\"0 0 " << fmt(W) << " " << fmt(W) << "\">\n";
    os << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"" << fmt(scale)
       << "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
    for (int k = 0; k < 6; ++k) {
        auto s = hex.side(k);
        os << "<path d=\"" << geodesic_path(to_poincare(s.a), to_poincare(s.b), cx, cy, scale)
           << "\" fill=\"none\" stroke=\"green\" stroke-width=\"2.5\"/>\n";
    }
    for (const auto& s : segments) {
        os << "<path d=\"" << geodesic_path(to_poincare(s.a), to_poincare(s.b), cx, cy, scale)
           << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    }
    for (size_t i = 0; i < labels.size() && i < 6; ++i) {
        auto p = to_poincare(hex.vertices[i]);
        os << "<text x=\"" << fmt(cx + p.x * scale * 1.07) << "\" y=\""
           << fmt(cy - p.y * scale * 1.07) << "\" font-size=\"11\">" << labels[i] << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace surfemb::hyp
