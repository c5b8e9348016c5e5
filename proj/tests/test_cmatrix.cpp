#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wfield/cmatrix.hpp"
#include "wfield/eig.hpp"
#include "wfield/numrange.hpp"
#include "wfield/rng.hpp"

using namespace wfield;

namespace {
const cplx I(0.0, 1.0);
}

TEST_CASE("hermitian_part: direct arithmetic") {
    const CMatrix a = CMatrix::from_rows({{0.0, 2.0}, {0.0, 0.0}});
    CHECK(approx_equal(hermitian_part(a, 0.0), CMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}),
                       1e-15));
    CHECK(approx_equal(hermitian_part(a, std::numbers::pi / 2),
                       CMatrix::from_rows({{0.0, -I}, {I, 0.0}}), 1e-15));
    const CMatrix d = CMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
    CHECK(approx_equal(hermitian_part(d, 0.0), d, 1e-15)); // Hermitian fixed point
}

TEST_CASE("hermitian_part is exactly Hermitian by construction") {
    Rng rng(11);
    for (int t = 0; t < 10; ++t) {
        const CMatrix h = hermitian_part(rng.matrix(5), rng.uniform() * 6.28);
        CHECK(approx_equal(h, h.adjoint(), 0.0));
    }
}

TEST_CASE("direct_sum: diagonal blocks and spectrum union") {
    const cplx one[] = {cplx(1.0)};
    const cplx two[] = {cplx(2.0)};
    CHECK(approx_equal(direct_sum(CMatrix::diagonal(one), CMatrix::diagonal(two)),
                       CMatrix::from_rows({{1.0, 0.0}, {0.0, 2.0}}), 0.0));

    Rng rng(12);
    const CMatrix a = rng.matrix(3);
    const CMatrix padded = direct_sum(a, CMatrix(1)); // A (+) O_1
    SpectrumSet sa = eig_general(a);
    sa.values.push_back(0.0);
    const SpectrumSet sp = eig_general(padded);
    CHECK(multiset_distance(sa.values, sp.values) <= 1e-10);
}

TEST_CASE("direct_sum: the range is the hull of both ranges") {
    Rng rng(16);
    for (int t = 0; t < 3; ++t) {
        const CMatrix a = rng.matrix(3), b = rng.matrix(3);
        const RangeApprox rs = compute_range(direct_sum(a, b), 256);
        const RangeApprox ra = compute_range(a, 256), rb = compute_range(b, 256);
        std::vector<cplx> both = ra.outer.v;
        both.insert(both.end(), rb.outer.v.begin(), rb.outer.v.end());
        const ConvexPolygon hull = convex_hull(both);
        const double scale = std::max(1.0, hull.diameter());
        CHECK(hausdorff(rs.outer, hull) <= 1e-3 * scale);
    }
}

TEST_CASE("rank_one: unit frame and trace identity") {
    const cplx e1[] = {cplx(1.0), cplx(0.0)};
    CHECK(approx_equal(rank_one(e1, e1), CMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}}), 0.0));

    Rng rng(13);
    for (int t = 0; t < 20; ++t) {
        const int n = 2 + t % 4;
        const CVector x = rng.unit_vector(n), y = rng.unit_vector(n);
        const CMatrix b = rank_one(x, y);
        CHECK(operator_norm(b) == doctest::Approx(1.0).epsilon(1e-12));
        const CMatrix a = rng.matrix(n);
        // the nonzero eigenvalue of A (x (x) y) is <Ax, y>
        const cplx expect = inner(a.apply(x), y);
        const SpectrumSet s = eig_general(a * b);
        double best = 1e300;
        for (const cplx& v : s.values) best = std::min(best, std::abs(v - expect));
        CHECK(best <= 1e-9 * (1.0 + std::abs(expect)));
        // tr(AB) = <Ax, y>
        CHECK(std::abs((a * b).trace() - expect) <= 1e-12 * (1.0 + std::abs(expect)));
    }
    CHECK_THROWS_AS(rank_one(CVector{cplx(0.5), cplx(0.0)}, CVector{cplx(1.0), cplx(0.0)}),
                    ZeroVector);
}

TEST_CASE("unitary_conjugate: identity, the proof's 2x2 block, guards") {
    Rng rng(14);
    const CMatrix a = rng.matrix(4);
    CHECK(approx_equal(unitary_conjugate(a, CMatrix::identity(4)), a, 1e-14));

    // U0 = (1/sqrt 2) [[i, -i], [1, 1]] applied to diag(1, c):
    // (1/2) [[1+c, i(1-c)], [-i(1-c), 1+c]]
    const double r1 = std::hypot(0.5, 0.4);
    const double a1 = std::numbers::pi - std::atan(0.8);
    const cplx c = 1.0 + std::polar(r1, a1);
    const CMatrix u0 = (1.0 / std::numbers::sqrt2) * CMatrix::from_rows({{I, -I}, {1.0, 1.0}});
    const CMatrix got = unitary_conjugate(CMatrix::diagonal(CVector{cplx(1.0), c}), u0);
    const CMatrix expect =
        0.5 * CMatrix::from_rows({{1.0 + c, I * (1.0 - c)}, {-I * (1.0 - c), 1.0 + c}});
    CHECK(approx_equal(got, expect, 1e-14));

    CHECK_THROWS_AS(unitary_conjugate(a, 2.0 * CMatrix::identity(4)), NonUnitary);
}

TEST_CASE("unitary conjugation preserves the numerical radius") {
    Rng rng(17);
    for (int t = 0; t < 4; ++t) {
        const int n = 2 + t;
        const CMatrix a = rng.matrix(n);
        // Householder reflector from a random unit vector
        const CVector v = rng.unit_vector(n);
        CMatrix u = CMatrix::identity(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) u(i, j) -= 2.0 * v[i] * std::conj(v[j]);
        const CMatrix conj = unitary_conjugate(a, u);
        CHECK(radii(conj, 128).w == doctest::Approx(radii(a, 128).w).epsilon(1e-9));
    }
}

TEST_CASE("sigma(AB) and sigma(BA) share nonzero elements") {
    Rng rng(15);
    for (int t = 0; t < 12; ++t) {
        const int n = 2 + t % 7; // up to 8
        const CMatrix a = rng.matrix(n), b = rng.matrix(n);
        const SpectrumSet sab = eig_general(a * b);
        const SpectrumSet sba = eig_general(b * a);
        CHECK(multiset_distance(sab.values, sba.values) <= 1e-8);
    }
}

TEST_CASE("matrix JSON-facing invariants: finiteness and equality tolerance") {
    CMatrix a = CMatrix::identity(2);
    CHECK(a.is_finite());
    a(0, 1) = cplx(std::nan(""), 0.0);
    CHECK(!a.is_finite());
    CHECK(approx_equal(CMatrix::identity(3), CMatrix::identity(3), 0.0));
    CMatrix b = CMatrix::identity(3);
    b(2, 2) += 1e-12;
    CHECK(approx_equal(CMatrix::identity(3), b, 1e-10));
    CHECK(!approx_equal(CMatrix::identity(3), b, 1e-14));
}
