#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "wfield/numrange.hpp"

namespace wfield {

/// Certified membership result for lambda vs closure(W(A)W(B)).
///  - In carries a witness pair (z, b), z in W(A), b in W(B), |z b - lambda|
///    within the scale-aware tolerance.
///  - Out carries certificate_margin > 0, a certified lower bound on the
///    distance from lambda to the product set.
struct ProductVerdict {
    Verdict verdict = Verdict::Borderline;
    double distance_estimate = 0.0;
    std::optional<std::pair<cplx, cplx>> witness;
    double certificate_margin = 0.0;
};

struct EigenProductVerdict {
    cplx lambda;
    ProductVerdict verdict;
};

struct ContainmentReport {
    enum class Overall { Contained, Violated, Inconclusive };
    std::vector<EigenProductVerdict> eigen_verdicts;
    Overall overall = Overall::Inconclusive;
    double max_violation_distance = 0.0;
};
const char* to_string(ContainmentReport::Overall o);

/// Shared precomputation for repeated membership queries against one (A, B)
/// pair: both ranges at the working angle resolution plus the closed
/// polylines handed to the SIMD kernels.
class ProductSetCtx {
public:
    ProductSetCtx(CMatrix a, CMatrix b, int m = 720);
    /// Reuse a precomputed range for A (repeated queries with varying B).
    ProductSetCtx(CMatrix a, RangeApprox ra, CMatrix b, int m_b);

    const CMatrix& a() const { return a_; }
    const CMatrix& b() const { return b_; }
    const RangeApprox& range_a() const { return ra_; }
    const RangeApprox& range_b() const { return rb_; }
    double radius_a() const { return wa_outer_; }
    double radius_b() const { return wb_outer_; }

    /// Membership of lambda. z_hints seed the witness search; cert_only
    /// skips the In phase (used by randomized witness scans).
    ProductVerdict membership(cplx lambda, double tol = 1e-6, int grid = 128,
                              std::span<const cplx> z_hints = {},
                              bool cert_only = false) const;

private:
    CMatrix a_, b_;
    RangeApprox ra_, rb_;
    std::vector<cplx> closed_outer_a_, closed_outer_b_, closed_inner_b_;
    double wa_outer_ = 0.0, wb_outer_ = 0.0;
    double diam_a_ = 0.0;
};

ProductVerdict product_membership(const CMatrix& a, const CMatrix& b, cplx lambda,
                                  double tol = 1e-6, int grid = 128);

ContainmentReport containment_check(const CMatrix& a, const CMatrix& b, double tol = 1e-6,
                                    int grid = 128, int m = 720);

struct ConvexityProbe {
    bool convex = true;
    double worst_midpoint_gap = 0.0;
    int midpoints_checked = 0;
};

/// Midpoint convexity test over sampled product points. convex=false only
/// on an Out-certified midpoint.
ConvexityProbe product_convexity_probe(const CMatrix& a, const CMatrix& b, int samples = 200,
                                       double tol = 1e-6, int grid = 96);

/// Product cloud {z_j b_k} over boundary+interior samples of both ranges.
std::vector<cplx> sample_product_set(const CMatrix& a, const CMatrix& b, int density = 16);

} // namespace wfield
