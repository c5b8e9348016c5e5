#pragma once

#include <vector>

#include "wfield/cmatrix.hpp"
#include "wfield/geometry.hpp"

namespace wfield {

/// Three-valued membership verdict with tolerance semantics.
enum class Verdict { In, Out, Borderline };
const char* to_string(Verdict v);

/// Discretized numerical range: support values on a uniform angle grid,
/// boundary points <A x_theta, x_theta>, and the two polygonal enclosures
/// inner (hull of true range points) <= W(A) <= outer (half-plane
/// intersection).
struct RangeApprox {
    int m = 0;
    std::vector<double> angles;
    std::vector<double> support_values;
    std::vector<cplx> boundary_points;
    ConvexPolygon inner;
    ConvexPolygon outer;
    double hausdorff_gap = 0.0; // distance between the enclosures
};

struct RadiiReport {
    double w = 0.0;    // numerical radius
    double r = 0.0;    // spectral radius
    double norm = 0.0; // operator norm
    bool radialoid = false;
    double tol = 0.0;
};

struct SupportPoint {
    double h = 0.0; // support value
    CVector x;      // maximizing unit vector
    cplx boundary;  // <A x, x>
};

/// h(theta) = lambda_max of (e^{-i theta}A + e^{i theta}A*)/2 and its
/// maximizer.
SupportPoint support_value(const CMatrix& a, double theta);

RangeApprox compute_range(const CMatrix& a, int m = 720);

/// Numerical radius (grid max + golden-section refinement), spectral radius,
/// operator norm, radialoid flag (|r - norm| <= tol).
RadiiReport radii(const CMatrix& a, int m = 720, double tol = 1e-8);

/// In: within tol of the inner enclosure. Out: violates an outer support
/// inequality by more than tol. The two cannot both hold.
Verdict contains_point(const RangeApprox& r, cplx p, double tol);

struct CornerReport {
    int count = 0;       // 0 = interior, 1 = unique support line, 2 = corner
    double width = 0.0;  // angular measure of the attaining normal cone
};

/// Counts support lines through a boundary point mu (Theorem-style corner
/// test). eps_lin <= 0 selects the default 1e-7 * scale.
CornerReport corner_support_lines(const CMatrix& a, cplx mu, int m = 720,
                                  double eps_corner = 0.02, double eps_lin = -1.0);

/// Projection onto W(A) through the exact support oracle: starts from the
/// inner polygon and adds true boundary points in the direction of the
/// current projection until the gap is below machine-level tolerance.
/// Returned points are certified members of W(A) (convex combinations of
/// exact quadratic-form values).
class RangeRefiner {
public:
    RangeRefiner(const CMatrix& a, const RangeApprox& base);

    cplx project(cplx q, double rel_tol = 1e-12);
    const CMatrix& matrix() const { return a_; }
    const ConvexPolygon& poly() const { return poly_; }

private:
    const CMatrix& a_;
    ConvexPolygon poly_;
    double scale_;
};

} // namespace wfield
