#pragma once

// Internal: per-backend kernel entry points shared between the dispatch TU
// and the ISA-specific TUs.

#include "wfield/kernels.hpp"

namespace wfield::kernels {

MinIndex min_abs_diff_scalar(std::span<const cplx> pts, cplx q);
MinPair min_product_dist_scalar(std::span<const cplx> a, std::span<const cplx> b, cplx q);
double scaled_polygon_dist_scalar(cplx z, std::span<const cplx> poly, cplx q);
MinIndex support_max_scalar(std::span<const cplx> pts, cplx dir);

#if defined(__x86_64__) || defined(_M_X64)
#define WFIELD_HAVE_AVX2_TU 1
MinIndex min_abs_diff_avx2(std::span<const cplx> pts, cplx q);
MinPair min_product_dist_avx2(std::span<const cplx> a, std::span<const cplx> b, cplx q);
double scaled_polygon_dist_avx2(cplx z, std::span<const cplx> poly, cplx q);
MinIndex support_max_avx2(std::span<const cplx> pts, cplx dir);
#endif

} // namespace wfield::kernels
