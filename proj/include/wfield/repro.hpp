#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wfield/cmatrix.hpp"

namespace wfield {

struct ReproClaim {
    std::string description;
    std::string expected;
    std::string observed;
    double tolerance = 0.0;
    bool pass = false;
};

struct ReproResult {
    std::string example_id;
    std::vector<ReproClaim> claims;
    bool overall_pass = false; // conjunction of claim passes

    void finish(); // recompute overall_pass
};

/// diag(1,-1) against the symmetric flip: sigma(AB) = {+-i} escapes the
/// real product interval [-1, 1].
ReproResult repro_intro_hermitian();

/// sigma(A+B) = {+-sqrt(M eps)} for the nilpotent pair, plus the Minkowski
/// support containment.
ReproResult repro_additive_perturbation(double big_m, double eps);

/// Finite truncation of the dense-unit-circle diagonal example:
/// A_n = I + diag(n-th roots of unity). Measures how the violation margin
/// decays as the truncation grows.
ReproResult repro_truncated_example_1_3(int n, int trials, std::uint64_t seed);

/// A_n (+) [[1,d],[0,1]]: non-normality, the block disk swallowed by the
/// truncated range, and the same margin decay.
ReproResult repro_example_1_4(int n, double d);

/// Random-instance checks of the two cited inclusions: the quotient
/// containment for 0 not in W(A), and hull containment for PSD A.
ReproResult repro_cited_inclusions(int trials, std::uint64_t seed);

/// Matrix of the truncated diagonal example (shared with tests and the CLI).
CMatrix truncation_matrix(int n);

} // namespace wfield
