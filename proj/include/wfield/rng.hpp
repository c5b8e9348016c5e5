#pragma once

#include <cstdint>
#include <random>

#include "wfield/cmatrix.hpp"

namespace wfield {

/// Seeded sampler for matrices and vectors. Hand-rolled Box-Muller so that
/// streams are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(); // [0, 1)
    double gaussian();
    cplx cgaussian(); // re, im ~ N(0,1)

    CVector unit_vector(int n);              // uniform on the complex sphere
    CMatrix matrix(int n);                   // iid complex Gaussian entries
    CMatrix hermitian(int n);                // (G + G*)/2
    CMatrix unitary(int n);                  // Gram-Schmidt of a Gaussian matrix
    CMatrix normal_matrix(int n, CVector* eigenvalues = nullptr); // U diag U*
    CMatrix psd_multiple(int n);             // e^{i phi} U diag(nonneg) U*

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace wfield
