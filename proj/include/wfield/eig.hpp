#pragma once

#include <optional>
#include <vector>

#include "wfield/cmatrix.hpp"

namespace wfield {

struct EigenPair {
    double value = 0.0;
    CVector vector; // unit norm
};

/// Spectrum with multiplicity, sorted lexicographically by (re, im), plus a
/// backward-error estimate per eigenvalue (sigma_min(A - lambda I)/||A||_F).
struct SpectrumSet {
    CVector values;
    std::vector<double> residuals;
    double tol = 0.0; // solver tolerance the residuals were checked against

    double spectral_radius() const;
};

/// Cyclic complex Jacobi. Convergence: off-diagonal Frobenius norm below
/// 1e-13 * ||H||_F, at most 100 sweeps. Values ascending, vectors orthonormal.
/// Throws NonHermitianInput when ||H - H*||_F > 1e-12 * ||H||_F.
std::vector<EigenPair> eig_hermitian(const CMatrix& h);

/// Hessenberg reduction + Wilkinson-shifted QR, iteration cap 100*n.
SpectrumSet eig_general(const CMatrix& a);

/// Largest singular value, via eig_hermitian(A*A).
double operator_norm(const CMatrix& a);

/// ||B - sigma_1 u v*||_F for the top singular triple: an upper bound on the
/// second singular value (Weyl), accurate to machine roundoff where forming
/// B*B alone would square the noise floor.
double rank_one_defect(const CMatrix& b);

/// Greedy minimal-cost bipartite matching between two eigenvalue multisets.
/// Returns the largest matched distance, or +inf when the sizes differ.
double multiset_distance(std::span<const cplx> a, std::span<const cplx> b);

/// Solve A x = b by LU with partial pivoting (complex, dense).
CVector lu_solve(const CMatrix& a, std::span<const cplx> b);

/// A^{-1} computed column-by-column via LU.
CMatrix inverse(const CMatrix& a);

/// Extend k orthonormal columns to a full orthonormal basis (MGS against
/// canonical vectors). Returns an n x n matrix whose columns are the basis,
/// the given vectors first.
CMatrix complete_basis(const std::vector<CVector>& cols, int n);

} // namespace wfield
