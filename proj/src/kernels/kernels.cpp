#include "kernels_impl.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <mutex>

namespace wfield::kernels {

// ---- scalar reference kernels ----------------------------------------
// Kept free of FMA contraction (see CMake flags) so the AVX2 variants,
// which use explicit mul/add, reproduce the same values.

MinIndex min_abs_diff_scalar(std::span<const cplx> pts, cplx q) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double dr = pts[i].real() - q.real();
        const double di = pts[i].imag() - q.imag();
        const double d2 = dr * dr + di * di;
        if (d2 < best) {
            best = d2;
            bi = i;
        }
    }
    return {std::sqrt(best), bi};
}

MinPair min_product_dist_scalar(std::span<const cplx> a, std::span<const cplx> b, cplx q) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        for (std::size_t j = 0; j < b.size(); ++j) {
            const double pr = ar * b[j].real() - ai * b[j].imag() - q.real();
            const double pi = ar * b[j].imag() + ai * b[j].real() - q.imag();
            const double d2 = pr * pr + pi * pi;
            if (d2 < best) {
                best = d2;
                bi = i;
                bj = j;
            }
        }
    }
    return {std::sqrt(best), bi, bj};
}

double scaled_polygon_dist_scalar(cplx z, std::span<const cplx> poly, cplx q) {
    const std::size_t m = poly.size();
    if (m == 0) return std::numeric_limits<double>::infinity();
    const double zr = z.real(), zi = z.imag();
    if (m == 1) {
        const double pr = zr * poly[0].real() - zi * poly[0].imag() - q.real();
        const double pi = zr * poly[0].imag() + zi * poly[0].real() - q.imag();
        return std::sqrt(pr * pr + pi * pi);
    }
    double mind2 = std::numeric_limits<double>::infinity();
    double mincross = std::numeric_limits<double>::infinity();
    double maxcross = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < m; ++k) {
        const double p0r = zr * poly[k].real() - zi * poly[k].imag();
        const double p0i = zr * poly[k].imag() + zi * poly[k].real();
        const double p1r = zr * poly[k + 1].real() - zi * poly[k + 1].imag();
        const double p1i = zr * poly[k + 1].imag() + zi * poly[k + 1].real();
        const double ur = p1r - p0r, ui = p1i - p0i;
        const double wr = q.real() - p0r, wi = q.imag() - p0i;
        const double uu = ur * ur + ui * ui;
        double t = 0.0;
        if (uu > 0.0) {
            t = (ur * wr + ui * wi) / uu;
            if (t < 0.0) t = 0.0;
            if (t > 1.0) t = 1.0;
        }
        const double dr = wr - t * ur, di = wi - t * ui;
        const double d2 = dr * dr + di * di;
        if (d2 < mind2) mind2 = d2;
        const double cross = ur * wi - ui * wr;
        if (cross < mincross) mincross = cross;
        if (cross > maxcross) maxcross = cross;
    }
    if (mincross >= 0.0 && maxcross > 0.0) return 0.0; // interior
    return std::sqrt(mind2);
}

MinIndex support_max_scalar(std::span<const cplx> pts, cplx dir) {
    double best = -std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double s = pts[i].real() * dir.real() + pts[i].imag() * dir.imag();
        if (s > best) {
            best = s;
            bi = i;
        }
    }
    return {best, bi};
}

// ---- dispatch ----------------------------------------------------------

namespace {

struct Table {
    MinIndex (*min_abs_diff)(std::span<const cplx>, cplx);
    MinPair (*min_product_dist)(std::span<const cplx>, std::span<const cplx>, cplx);
    double (*scaled_polygon_dist)(cplx, std::span<const cplx>, cplx);
    MinIndex (*support_max)(std::span<const cplx>, cplx);
};

constexpr Table kScalar{min_abs_diff_scalar, min_product_dist_scalar,
                        scaled_polygon_dist_scalar, support_max_scalar};

#ifdef WFIELD_HAVE_AVX2_TU
const Table kAvx2{min_abs_diff_avx2, min_product_dist_avx2,
                  scaled_polygon_dist_avx2, support_max_avx2};
#endif

Backend g_backend = Backend::scalar;
const Table* g_table = &kScalar;
std::once_flag g_once;

void init_backend() {
    Backend pick = supported(Backend::avx2) ? Backend::avx2 : Backend::scalar;
    if (const char* env = std::getenv("WFIELD_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) pick = Backend::scalar;
        else if (std::strcmp(env, "avx2") == 0 && supported(Backend::avx2)) pick = Backend::avx2;
    }
    g_backend = pick;
#ifdef WFIELD_HAVE_AVX2_TU
    g_table = (pick == Backend::avx2) ? &kAvx2 : &kScalar;
#else
    g_table = &kScalar;
#endif
}

const Table& table() {
    std::call_once(g_once, init_backend);
    return *g_table;
}

} // namespace

bool supported(Backend b) {
    if (b == Backend::scalar) return true;
#ifdef WFIELD_HAVE_AVX2_TU
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

Backend active() {
    std::call_once(g_once, init_backend);
    return g_backend;
}

void force(Backend b) {
    std::call_once(g_once, init_backend);
    if (!supported(b)) throw InvalidInput("kernels::force: backend not supported on this CPU");
    g_backend = b;
#ifdef WFIELD_HAVE_AVX2_TU
    g_table = (b == Backend::avx2) ? &kAvx2 : &kScalar;
#else
    g_table = &kScalar;
#endif
}

const char* name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

MinIndex min_abs_diff(std::span<const cplx> pts, cplx q) { return table().min_abs_diff(pts, q); }

MinPair min_product_dist(std::span<const cplx> a, std::span<const cplx> b, cplx q) {
    return table().min_product_dist(a, b, q);
}

double scaled_polygon_dist(cplx z, std::span<const cplx> poly, cplx q) {
    return table().scaled_polygon_dist(z, poly, q);
}

MinIndex support_max(std::span<const cplx> pts, cplx dir) { return table().support_max(pts, dir); }

} // namespace wfield::kernels
