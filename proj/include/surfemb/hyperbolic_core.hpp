#pragma once

#include "surfemb/maps.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace surfemb::hyp {

/// Point on the upper sheet of the hyperboloid x0^2 - x1^2 - x2^2 = 1.
struct HPoint {
    std::array<double, 3> c{1, 0, 0};

    double operator[](int i) const { return c[i]; }
    double& operator[](int i) { return c[i]; }
};

/// Tangent vector at some base point (Minkowski-orthogonal to it).
struct HTangent {
    std::array<double, 3> c{0, 0, 0};
};

double minkowski(const HPoint& x, const HPoint& y);
HPoint normalize_to_sheet(HPoint x);

double h_distance(const HPoint& x, const HPoint& y);
double tangent_norm(const HTangent& v);
HPoint exp_map(const HPoint& x, const HTangent& v);
HTangent log_map(const HPoint& x, const HPoint& y);

/// Point at parameter t in [0,1] along the geodesic from x to y.
HPoint geodesic_point(const HPoint& x, const HPoint& y, double t);

/// Interior angle at x between directions toward y and z.
double angle_at(const HPoint& x, const HPoint& y, const HPoint& z);

/// 3x3 Minkowski isometry (for tests and pairings).
struct HIsometry {
    std::array<std::array<double, 3>, 3> m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    HPoint apply(const HPoint& p) const;
    static HIsometry rotation(double theta);
    static HIsometry boost_x(double t);
    HIsometry compose(const HIsometry& other) const;  // this after other
};

struct HSegment {
    HPoint a, b;
};

enum class IntersectKind { None, Point, Overlap };

struct IntersectResult {
    IntersectKind kind;
    HPoint point;  // valid when kind == Point
};

IntersectResult segments_intersect(const HSegment& s1, const HSegment& s2, double eps = 1e-12);

struct Hexagon {
    std::array<HPoint, 6> vertices;
    double side_length;
    double circumradius;

    HSegment side(int k) const { return {vertices[k % 6], vertices[(k + 1) % 6]}; }
    /// Constant-speed point at parameter t along side k.
    HPoint side_point(int k, double t) const;
};

/// The equilateral right-angled hyperbolic hexagon centered at the origin,
/// circumradius arccosh(sqrt(3)), side 2*arccosh(cos(pi/6)/sin(pi/4)).
Hexagon regular_right_angled_hexagon();

/// Distance from p to the closest point of the hexagon boundary; also reports
/// which side and which parameter along it.
struct BoundaryLocation {
    int side;
    double t;
    double dist;
};
BoundaryLocation locate_on_boundary(const Hexagon& hex, const HPoint& p);

/// Edges joining two non-consecutive vertices of the given boundary cycle.
std::vector<std::pair<int, int>> check_dividing_edges(
    const std::vector<std::pair<int, int>>& edges, const std::vector<int>& boundary_cycle);

struct BoundaryAssignment {
    /// Per vertex id: fixed position on the hexagon boundary, or unset = free.
    std::vector<std::optional<HPoint>> fixed;
    /// Per edge id: positive spring stiffness (default 1).
    std::vector<double> weights;
};

struct TutteDiagnostics {
    int sweeps = 0;
    double final_energy = 0;
    double max_gradient = 0;      // max over free vertices of ||sum c log||
    std::vector<double> energy_history;  // one entry per sweep
    bool converged = false;
    bool crossing_free = false;
    bool oriented = false;
    bool rotations_ok = false;
    bool certificate() const { return crossing_free && oriented && rotations_ok; }
    std::string to_text() const;
};

struct TutteResult {
    std::vector<HPoint> positions;  // per vertex id
    TutteDiagnostics diag;
};

/// Hyperbolic Tutte embedding: minimizes sum c_ij d(x_i,x_j)^2 over free
/// vertices by Gauss-Seidel sweeps of weighted Karcher means; boundary
/// positions are returned bit-identical to the input. Throws on precondition
/// violations; certificate failures are reported in the diagnostics.
TutteResult tutte_embed(const Hexagon& hexagon, const maps::DiskMap& disk,
                        const BoundaryAssignment& assignment, double tol = 1e-8,
                        int max_sweeps = 200000);

/// Energy of a configuration (test/diagnostic helper).
double spring_energy(const maps::CombinatorialMap& m, const std::vector<double>& weights,
                     const std::vector<HPoint>& pos);

// -- Poincare disk rendering -------------------------------------------------

struct DiskPoint {
    double x, y;
};
DiskPoint to_poincare(const HPoint& p);

/// SVG of the hexagon plus drawn segments, geodesics as circular arcs.
std::string hyperbolic_svg(const Hexagon& hex,
                           const std::vector<HSegment>& segments,
                           const std::vector<std::string>& labels = {},
                           double scale = 220.0);

}  // namespace surfemb::hyp
