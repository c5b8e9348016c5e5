#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include "wfield/errors.hpp"

namespace wfield {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Dense square complex matrix, row-major. The universal operand of the
/// toolkit; dimension 0 is allowed internally (empty compressions).
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}
    CMatrix(int n, std::vector<cplx> entries);

    static CMatrix identity(int n);
    static CMatrix diagonal(std::span<const cplx> d);
    static CMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

    int n() const { return n_; }
    bool empty() const { return n_ == 0; }

    cplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    std::span<const cplx> data() const { return a_; }
    std::span<cplx> data() { return a_; }

    CMatrix adjoint() const;
    CMatrix transpose() const;
    cplx trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool is_finite() const;

    CVector apply(std::span<const cplx> x) const; // y = A x

    CMatrix& operator+=(const CMatrix& rhs);
    CMatrix& operator-=(const CMatrix& rhs);
    CMatrix& operator*=(cplx s);

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

private:
    int n_ = 0;
    std::vector<cplx> a_;
};

/// Entrywise comparison within an explicit tolerance.
bool approx_equal(const CMatrix& a, const CMatrix& b, double tol);

/// (e^{-i theta} A + e^{i theta} A*)/2; Hermitian exactly by construction.
CMatrix hermitian_part(const CMatrix& a, double theta = 0.0);

/// Block-diagonal sum A (+) B.
CMatrix direct_sum(const CMatrix& a, const CMatrix& b);

/// The rank-one operator z -> <z,y> x, i.e. B = x y*. Throws ZeroVector
/// unless both arguments are unit vectors (within 1e-12).
CMatrix rank_one(std::span<const cplx> x, std::span<const cplx> y);

/// U A U*. Throws NonUnitary when ||U*U - I||_F exceeds 1e-10 * sqrt(n).
CMatrix unitary_conjugate(const CMatrix& a, const CMatrix& u);

/// <x,y> = sum_i x_i conj(y_i)   (linear in the first argument)
cplx inner(std::span<const cplx> x, std::span<const cplx> y);
double vec_norm(std::span<const cplx> x);
void normalize(std::span<cplx> x); // throws ZeroVector on (near-)zero input

/// <Ax, x> for unit-or-not x.
cplx quadratic_form(const CMatrix& a, std::span<const cplx> x);

} // namespace wfield
