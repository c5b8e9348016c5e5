#pragma once

#include <optional>

#include "wfield/cmatrix.hpp"
#include "wfield/numrange.hpp"

namespace wfield {

enum class CornerHypothesis { Holds, Fails, Borderline };
const char* to_string(CornerHypothesis c);

struct ClassificationReport {
    bool is_psd_multiple = false;
    std::optional<double> phase;      // e^{-i phase} A is PSD, when flagged
    double normality_residual = 0.0;  // ||A*A - AA*||_F / ||A||_F^2
    RadiiReport radii;
    std::optional<cplx> w_attaining_mu;
    CornerHypothesis corner_hypothesis = CornerHypothesis::Fails;
    bool polygon_case = false;
    bool isolated_peak_case = false;
};

/// UAU* = mu I_k (+) A1 with the full eigenspace of the peak extracted.
struct Decomposition {
    cplx mu;
    CMatrix u; // unitary
    int k = 0; // peak multiplicity
    CMatrix a1;
    double offblock_residual = 0.0;
};

/// (A1): A = c P with P positive semi-definite. True iff A is normal within
/// tol and all eigenvalues sit on one ray from the origin; the returned
/// phase is the ray angle.
std::pair<bool, std::optional<double>> is_psd_multiple(const CMatrix& a, double tol = 1e-8);

double normality_residual(const CMatrix& a);

/// radii() plus the report short-circuit: non-radialoid matrices cannot
/// satisfy the rank-one containment condition.
RadiiReport radialoid_check(const CMatrix& a, double tol = 1e-8);

/// Split off the full eigenspace of the numerical-radius-attaining
/// eigenvalue. Throws NotRadialoid / PeakNotAttained.
Decomposition decompose_at_peak(const CMatrix& a, double tol = 1e-8, int m = 720);

/// Rebuild U* (mu I (+) A1) U; inverse of decompose_at_peak up to roundoff.
CMatrix reassemble(const Decomposition& d);

struct LemmaDiskReport {
    bool holds = true;
    double worst_excess = 0.0; // max |mu - nu| - w over boundary points of W(A1)
};

/// W(A1) vs the disk |mu - nu| <= w.
LemmaDiskReport check_lemma_disk(const CMatrix& a1, cplx mu, double w, int m = 720,
                                 double tol = 1e-9);

ClassificationReport theorem_hypotheses(const CMatrix& a, int m = 720, double tol = 1e-8);

} // namespace wfield
