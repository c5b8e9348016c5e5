// AVX2 variants of the set-distance kernels. Compiled with -mavx2 only;
// callers reach these through the runtime dispatch table. No FMA is used so
// results match the scalar reference bit-for-bit (same per-element ops).
#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "kernels_impl.hpp"

namespace wfield::kernels {

namespace {

// Deinterleave 4 complex doubles starting at p into re/im registers.
inline void load4(const cplx* p, __m256d& re, __m256d& im) {
    const __m256d a = _mm256_loadu_pd(reinterpret_cast<const double*>(p));
    const __m256d b = _mm256_loadu_pd(reinterpret_cast<const double*>(p + 2));
    const __m256d t0 = _mm256_permute2f128_pd(a, b, 0x20);
    const __m256d t1 = _mm256_permute2f128_pd(a, b, 0x31);
    re = _mm256_unpacklo_pd(t0, t1);
    im = _mm256_unpackhi_pd(t0, t1);
}

inline double hmin(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d m = _mm_min_pd(lo, hi);
    return std::min(_mm_cvtsd_f64(m), _mm_cvtsd_f64(_mm_unpackhi_pd(m, m)));
}

inline double hmax(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d m = _mm_max_pd(lo, hi);
    return std::max(_mm_cvtsd_f64(m), _mm_cvtsd_f64(_mm_unpackhi_pd(m, m)));
}

} // namespace

MinIndex min_abs_diff_avx2(std::span<const cplx> pts, cplx q) {
    const std::size_t n = pts.size();
    __m256d vbest = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    __m256d vidx = _mm256_setzero_pd();
    const __m256d qr = _mm256_set1_pd(q.real());
    const __m256d qi = _mm256_set1_pd(q.imag());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d re, im;
        load4(pts.data() + i, re, im);
        const __m256d dr = _mm256_sub_pd(re, qr);
        const __m256d di = _mm256_sub_pd(im, qi);
        const __m256d d2 =
            _mm256_add_pd(_mm256_mul_pd(dr, dr), _mm256_mul_pd(di, di));
        const __m256d cur = _mm256_set_pd(double(i + 3), double(i + 2), double(i + 1), double(i));
        const __m256d lt = _mm256_cmp_pd(d2, vbest, _CMP_LT_OQ);
        vbest = _mm256_blendv_pd(vbest, d2, lt);
        vidx = _mm256_blendv_pd(vidx, cur, lt);
    }
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    alignas(32) double bs[4], is[4];
    _mm256_store_pd(bs, vbest);
    _mm256_store_pd(is, vidx);
    for (int k = 0; k < 4; ++k) {
        if (bs[k] < best) {
            best = bs[k];
            bi = static_cast<std::size_t>(is[k]);
        }
    }
    for (; i < n; ++i) {
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

MinPair min_product_dist_avx2(std::span<const cplx> a, std::span<const cplx> b, cplx q) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    const std::size_t nb = b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double arv = a[i].real(), aiv = a[i].imag();
        const __m256d ar = _mm256_set1_pd(arv);
        const __m256d ai = _mm256_set1_pd(aiv);
        const __m256d qr = _mm256_set1_pd(q.real());
        const __m256d qi = _mm256_set1_pd(q.imag());
        __m256d vbest = _mm256_set1_pd(std::numeric_limits<double>::infinity());
        __m256d vidx = _mm256_setzero_pd();
        std::size_t j = 0;
        for (; j + 4 <= nb; j += 4) {
            __m256d br, bim;
            load4(b.data() + j, br, bim);
            const __m256d pr = _mm256_sub_pd(
                _mm256_sub_pd(_mm256_mul_pd(ar, br), _mm256_mul_pd(ai, bim)), qr);
            const __m256d pi = _mm256_sub_pd(
                _mm256_add_pd(_mm256_mul_pd(ar, bim), _mm256_mul_pd(ai, br)), qi);
            const __m256d d2 =
                _mm256_add_pd(_mm256_mul_pd(pr, pr), _mm256_mul_pd(pi, pi));
            const __m256d cur =
                _mm256_set_pd(double(j + 3), double(j + 2), double(j + 1), double(j));
            const __m256d lt = _mm256_cmp_pd(d2, vbest, _CMP_LT_OQ);
            vbest = _mm256_blendv_pd(vbest, d2, lt);
            vidx = _mm256_blendv_pd(vidx, cur, lt);
        }
        alignas(32) double bs[4], is[4];
        _mm256_store_pd(bs, vbest);
        _mm256_store_pd(is, vidx);
        for (int k = 0; k < 4; ++k) {
            if (bs[k] < best) {
                best = bs[k];
                bi = i;
                bj = static_cast<std::size_t>(is[k]);
            }
        }
        for (; j < nb; ++j) {
            const double pr = arv * b[j].real() - aiv * b[j].imag() - q.real();
            const double pi = arv * b[j].imag() + aiv * b[j].real() - q.imag();
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

double scaled_polygon_dist_avx2(cplx z, std::span<const cplx> poly, cplx q) {
    const std::size_t m = poly.size();
    if (m < 6) return scaled_polygon_dist_scalar(z, poly, q); // short inputs: scalar
    const __m256d zr = _mm256_set1_pd(z.real());
    const __m256d zi = _mm256_set1_pd(z.imag());
    const __m256d qr = _mm256_set1_pd(q.real());
    const __m256d qi = _mm256_set1_pd(q.imag());
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d vmind2 = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    __m256d vminc = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    __m256d vmaxc = _mm256_set1_pd(-std::numeric_limits<double>::infinity());

    const std::size_t edges = m - 1;
    std::size_t k = 0;
    for (; k + 4 <= edges; k += 4) {
        __m256d v0r, v0i, v1r, v1i;
        load4(poly.data() + k, v0r, v0i);
        load4(poly.data() + k + 1, v1r, v1i);
        const __m256d p0r = _mm256_sub_pd(_mm256_mul_pd(zr, v0r), _mm256_mul_pd(zi, v0i));
        const __m256d p0i = _mm256_add_pd(_mm256_mul_pd(zr, v0i), _mm256_mul_pd(zi, v0r));
        const __m256d p1r = _mm256_sub_pd(_mm256_mul_pd(zr, v1r), _mm256_mul_pd(zi, v1i));
        const __m256d p1i = _mm256_add_pd(_mm256_mul_pd(zr, v1i), _mm256_mul_pd(zi, v1r));
        const __m256d ur = _mm256_sub_pd(p1r, p0r);
        const __m256d ui = _mm256_sub_pd(p1i, p0i);
        const __m256d wr = _mm256_sub_pd(qr, p0r);
        const __m256d wi = _mm256_sub_pd(qi, p0i);
        const __m256d uu = _mm256_add_pd(_mm256_mul_pd(ur, ur), _mm256_mul_pd(ui, ui));
        const __m256d dot = _mm256_add_pd(_mm256_mul_pd(ur, wr), _mm256_mul_pd(ui, wi));
        const __m256d okay = _mm256_cmp_pd(uu, zero, _CMP_GT_OQ);
        const __m256d safe = _mm256_blendv_pd(one, uu, okay);
        __m256d t = _mm256_div_pd(dot, safe);
        t = _mm256_min_pd(_mm256_max_pd(t, zero), one);
        t = _mm256_and_pd(t, okay);
        const __m256d dr = _mm256_sub_pd(wr, _mm256_mul_pd(t, ur));
        const __m256d di = _mm256_sub_pd(wi, _mm256_mul_pd(t, ui));
        const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dr, dr), _mm256_mul_pd(di, di));
        vmind2 = _mm256_min_pd(vmind2, d2);
        const __m256d cross = _mm256_sub_pd(_mm256_mul_pd(ur, wi), _mm256_mul_pd(ui, wr));
        vminc = _mm256_min_pd(vminc, cross);
        vmaxc = _mm256_max_pd(vmaxc, cross);
    }
    double mind2 = hmin(vmind2);
    double mincross = hmin(vminc);
    double maxcross = hmax(vmaxc);
    for (; k < edges; ++k) {
        const double p0r = z.real() * poly[k].real() - z.imag() * poly[k].imag();
        const double p0i = z.real() * poly[k].imag() + z.imag() * poly[k].real();
        const double p1r = z.real() * poly[k + 1].real() - z.imag() * poly[k + 1].imag();
        const double p1i = z.real() * poly[k + 1].imag() + z.imag() * poly[k + 1].real();
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
    if (mincross >= 0.0 && maxcross > 0.0) return 0.0;
    return std::sqrt(mind2);
}

MinIndex support_max_avx2(std::span<const cplx> pts, cplx dir) {
    const std::size_t n = pts.size();
    __m256d vbest = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
    __m256d vidx = _mm256_setzero_pd();
    const __m256d dr = _mm256_set1_pd(dir.real());
    const __m256d di = _mm256_set1_pd(dir.imag());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d re, im;
        load4(pts.data() + i, re, im);
        const __m256d s = _mm256_add_pd(_mm256_mul_pd(re, dr), _mm256_mul_pd(im, di));
        const __m256d cur = _mm256_set_pd(double(i + 3), double(i + 2), double(i + 1), double(i));
        const __m256d gt = _mm256_cmp_pd(s, vbest, _CMP_GT_OQ);
        vbest = _mm256_blendv_pd(vbest, s, gt);
        vidx = _mm256_blendv_pd(vidx, cur, gt);
    }
    double best = -std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    alignas(32) double bs[4], is[4];
    _mm256_store_pd(bs, vbest);
    _mm256_store_pd(is, vidx);
    for (int k = 0; k < 4; ++k) {
        if (bs[k] > best) {
            best = bs[k];
            bi = static_cast<std::size_t>(is[k]);
        }
    }
    for (; i < n; ++i) {
        const double s = pts[i].real() * dir.real() + pts[i].imag() * dir.imag();
        if (s > best) {
            best = s;
            bi = i;
        }
    }
    return {best, bi};
}

} // namespace wfield::kernels

#endif // x86-64
