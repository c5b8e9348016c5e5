#include "wfield/rng.hpp"

#include <cmath>
#include <numbers>

namespace wfield {

double Rng::uniform() {
    // 53-bit mantissa from the top bits of the 64-bit state
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

cplx Rng::cgaussian() { return {gaussian(), gaussian()}; }

CVector Rng::unit_vector(int n) {
    CVector x(n);
    for (cplx& v : x) v = cgaussian();
    normalize(x);
    return x;
}

CMatrix Rng::matrix(int n) {
    CMatrix m(n);
    for (cplx& v : m.data()) v = cgaussian();
    return m;
}

CMatrix Rng::hermitian(int n) {
    return hermitian_part(matrix(n));
}

CMatrix Rng::unitary(int n) {
    CMatrix g = matrix(n);
    // modified Gram-Schmidt on columns
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < j; ++k) {
            cplx proj = 0.0;
            for (int i = 0; i < n; ++i) proj += g(i, j) * std::conj(g(i, k));
            for (int i = 0; i < n; ++i) g(i, j) -= proj * g(i, k);
        }
        double nrm = 0.0;
        for (int i = 0; i < n; ++i) nrm += std::norm(g(i, j));
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) { // essentially impossible for Gaussian input
            g(j, j) = 1.0;
            nrm = 1.0;
        }
        for (int i = 0; i < n; ++i) g(i, j) /= nrm;
    }
    return g;
}

CMatrix Rng::normal_matrix(int n, CVector* eigenvalues) {
    CVector d(n);
    for (cplx& v : d) v = cgaussian();
    const CMatrix u = unitary(n);
    if (eigenvalues) *eigenvalues = d;
    return u * CMatrix::diagonal(d) * u.adjoint();
}

CMatrix Rng::psd_multiple(int n) {
    CVector d(n);
    for (cplx& v : d) v = std::abs(gaussian());
    const CMatrix u = unitary(n);
    const cplx phase = std::polar(1.0, 2.0 * std::numbers::pi * uniform());
    return phase * (u * CMatrix::diagonal(d) * u.adjoint());
}

} // namespace wfield
