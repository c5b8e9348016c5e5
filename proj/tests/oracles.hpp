#pragma once

// Test-only oracles, deliberately independent of the library's solver paths:
// characteristic-polynomial roots via Durand-Kerner, and plain double-loop
// brute-force scans over product sets.

#include <vector>

#include "wfield/cmatrix.hpp"
#include "wfield/geometry.hpp"

namespace oracle {

using wfield::cplx;
using wfield::CMatrix;

/// Monic characteristic polynomial coefficients c so that
/// p(x) = x^n + c[0] x^{n-1} + ... + c[n-1]   (Faddeev-LeVerrier).
std::vector<cplx> char_poly(const CMatrix& a);

/// Durand-Kerner roots of the monic polynomial with the given coefficients.
std::vector<cplx> durand_kerner(const std::vector<cplx>& coeffs, int max_iter = 500);

/// Eigenvalues via char_poly + durand_kerner; usable up to n ~ 6.
std::vector<cplx> eig_oracle(const CMatrix& a);

/// ~count points covering the polygon: vertices, edge subdivisions, and an
/// interior grid.
std::vector<cplx> cover_polygon(const wfield::ConvexPolygon& p, int count);

/// min |z w - lambda| over two point sets, plain loops.
double brute_min_product_dist(const std::vector<cplx>& zs, const std::vector<cplx>& ws,
                              cplx lambda);

} // namespace oracle
