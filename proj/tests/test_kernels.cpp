#include <doctest.h>

#include <cmath>

#include "wfield/geometry.hpp"
#include "wfield/kernels.hpp"
#include "wfield/rng.hpp"

using namespace wfield;

namespace {

std::vector<cplx> random_points(Rng& rng, std::size_t n) {
    std::vector<cplx> v(n);
    for (cplx& z : v) z = rng.cgaussian();
    return v;
}

std::vector<cplx> random_closed_hull(Rng& rng, std::size_t n) {
    const ConvexPolygon h = convex_hull(random_points(rng, n));
    return h.closed();
}

} // namespace

TEST_CASE("kernel backends agree: min_abs_diff / support_max / min_product_dist") {
    if (!kernels::supported(kernels::Backend::avx2)) {
        MESSAGE("AVX2 not available; scalar-only run");
        return;
    }
    Rng rng(41);
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 33u, 257u}) {
        const auto pts = random_points(rng, n);
        const cplx q = rng.cgaussian();
        kernels::force(kernels::Backend::scalar);
        const auto s1 = kernels::min_abs_diff(pts, q);
        const auto s2 = kernels::support_max(pts, q);
        kernels::force(kernels::Backend::avx2);
        const auto v1 = kernels::min_abs_diff(pts, q);
        const auto v2 = kernels::support_max(pts, q);
        CHECK(s1.value == doctest::Approx(v1.value).epsilon(1e-14));
        CHECK(s2.value == doctest::Approx(v2.value).epsilon(1e-14));
    }
    for (std::size_t n : {2u, 5u, 17u}) {
        const auto a = random_points(rng, n);
        const auto b = random_points(rng, 2 * n + 1);
        const cplx q = rng.cgaussian();
        kernels::force(kernels::Backend::scalar);
        const auto s = kernels::min_product_dist(a, b, q);
        kernels::force(kernels::Backend::avx2);
        const auto v = kernels::min_product_dist(a, b, q);
        CHECK(s.value == doctest::Approx(v.value).epsilon(1e-14));
    }
    kernels::force(kernels::supported(kernels::Backend::avx2) ? kernels::Backend::avx2
                                                              : kernels::Backend::scalar);
}

TEST_CASE("kernel backends agree: scaled_polygon_dist, including degenerates") {
    if (!kernels::supported(kernels::Backend::avx2)) return;
    Rng rng(42);
    for (int t = 0; t < 40; ++t) {
        std::vector<cplx> poly;
        switch (t % 4) {
            case 0: poly = random_closed_hull(rng, 24); break;
            case 1: poly = random_closed_hull(rng, 5); break;
            case 2: poly = ConvexPolygon{{cplx(-1, 0), cplx(1, 0)}}.closed(); break; // segment
            default: poly = ConvexPolygon{{cplx(0.5, 0.5)}}.closed(); break;         // point
        }
        const cplx z = rng.cgaussian();
        const cplx q = rng.cgaussian();
        kernels::force(kernels::Backend::scalar);
        const double s = kernels::scaled_polygon_dist(z, poly, q);
        kernels::force(kernels::Backend::avx2);
        const double v = kernels::scaled_polygon_dist(z, poly, q);
        CHECK(s == doctest::Approx(v).epsilon(1e-13));
    }
    kernels::force(kernels::Backend::avx2);
}

TEST_CASE("kernels match plain geometry") {
    Rng rng(43);
    const ConvexPolygon h = convex_hull(random_points(rng, 16));
    const auto closed = h.closed();
    for (int t = 0; t < 30; ++t) {
        const cplx z = rng.cgaussian();
        const cplx q = rng.cgaussian();
        // scale the polygon by hand and use the scalar geometry path
        std::vector<cplx> scaled;
        for (const cplx& v : h.v) scaled.push_back(z * v);
        ConvexPolygon sp = convex_hull(scaled);
        const double expect = dist_point_polygon(q, sp);
        const double got = kernels::scaled_polygon_dist(z, closed, q);
        CHECK(got == doctest::Approx(expect).epsilon(1e-10));
    }
    // brute pairwise product distance
    const auto a = random_points(rng, 37);
    const auto b = random_points(rng, 23);
    const cplx q = rng.cgaussian();
    double brute = 1e300;
    for (const cplx& x : a)
        for (const cplx& y : b) brute = std::min(brute, std::abs(x * y - q));
    CHECK(kernels::min_product_dist(a, b, q).value == doctest::Approx(brute).epsilon(1e-13));
}

TEST_CASE("scaled_polygon_dist: collinear points beyond a segment are not inside") {
    const std::vector<cplx> seg = ConvexPolygon{{cplx(0, 0), cplx(1, 0)}}.closed();
    CHECK(kernels::scaled_polygon_dist(1.0, seg, cplx(2.0, 0.0)) == doctest::Approx(1.0));
    CHECK(kernels::scaled_polygon_dist(1.0, seg, cplx(0.5, 0.0)) == doctest::Approx(0.0));
    // zero scale collapses to the origin
    CHECK(kernels::scaled_polygon_dist(0.0, seg, cplx(3.0, 4.0)) == doctest::Approx(5.0));
}
