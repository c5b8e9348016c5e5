#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wfield/classify.hpp"
#include "wfield/productset.hpp"

namespace wfield {

enum class Construction { LemmaDisk, CornerSupportLine, RandomSearch };
const char* to_string(Construction c);

struct WitnessParams {
    std::optional<cplx> mu;  // peak eigenvalue of the original matrix
    std::optional<double> alpha1, r1, theta;
    bool adjoint_flip = false;
    std::uint64_t seed = 0;
    int trial = -1;
};

/// A rank-one B together with the nonzero eigenvalue lambda = tr(AB) of AB,
/// certified outside closure(W(A)W(B)).
struct WitnessCertificate {
    CMatrix b;
    cplx lambda;
    ProductVerdict verdict; // Out, margin > 0
    Construction construction = Construction::RandomSearch;
    WitnessParams params;
};

struct FalsifyOutcome {
    enum class Status { NoWitnessPsdMultiple, Found, Inconclusive };
    Status status = Status::Inconclusive;
    std::optional<WitnessCertificate> certificate;
    std::vector<std::string> notes;
};
const char* to_string(FalsifyOutcome::Status s);

struct FalsifyConfig {
    int m = 720;
    int grid = 128;
    double tol = 1e-6;
    std::uint64_t seed = 0;
    int trials = 200;
};

/// Disk construction: requires A normalized (||A|| = w(A) = 1, peak
/// eigenvalue 1; throws NotNormalized otherwise). Succeeds when some
/// boundary point nu of W(A1) escapes the disk |1 - nu| <= 1.
std::optional<WitnessCertificate> witness_lemma_disk(const CMatrix& a, int m = 720,
                                                     double tol = 1e-6, int grid = 128);

/// Support-line construction at a corner of W(A) at the peak. Same
/// normalization contract as witness_lemma_disk.
std::optional<WitnessCertificate> witness_corner(const CMatrix& a, int m = 720, double tol = 1e-6,
                                                 int grid = 128);

/// Randomized scan over rank-one B = x (x) y; the deterministic top
/// singular pair is tried first. Returns the first Out-certified hit.
std::optional<WitnessCertificate> random_rank_one_search(const CMatrix& a, int trials,
                                                         std::uint64_t seed, double tol = 1e-6,
                                                         int grid = 96);

/// Strategy dispatcher: normalize, then lemma-disk, corner, random search.
/// Certificates are reported in the ORIGINAL scale of A.
FalsifyOutcome falsify(const CMatrix& a, const FalsifyConfig& cfg = {});

} // namespace wfield
