#pragma once

#include <cstddef>
#include <span>

#include "wfield/cmatrix.hpp"

namespace wfield::kernels {

/// Data-parallel inner loops behind the set-distance machinery. Every kernel
/// has a scalar reference implementation and an AVX2 variant; the active one
/// is picked at runtime (cpuid), overridable with WFIELD_KERNELS=scalar|avx2
/// or force(). Values agree across backends to within reduction roundoff;
/// argmin/argmax tie-breaks may differ.
enum class Backend { scalar, avx2 };

Backend active();
bool supported(Backend b);
void force(Backend b); // throws InvalidInput when unsupported
const char* name(Backend b);

struct MinIndex {
    double value;
    std::size_t index;
};

struct MinPair {
    double value;
    std::size_t i;
    std::size_t j;
};

/// min_i |pts[i] - q|
MinIndex min_abs_diff(std::span<const cplx> pts, cplx q);

/// min_{i,j} |a[i]*b[j] - q|
MinPair min_product_dist(std::span<const cplx> a, std::span<const cplx> b, cplx q);

/// Distance from q to the scaled convex polygon z*P. P is a CCW closed
/// polyline (first vertex repeated at the end); degenerate (collinear,
/// segment, point) inputs fall back to boundary distance.
double scaled_polygon_dist(cplx z, std::span<const cplx> closed_poly, cplx q);

/// max_i Re(conj(dir) * pts[i])
MinIndex support_max(std::span<const cplx> pts, cplx dir);

} // namespace wfield::kernels
