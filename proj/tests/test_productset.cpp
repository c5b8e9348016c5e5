#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wfield/eig.hpp"
#include "wfield/productset.hpp"
#include "wfield/rng.hpp"

using namespace wfield;

namespace {
const CMatrix kIntroA = CMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
const CMatrix kIntroB = CMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
}

TEST_CASE("membership: the Hermitian counterexample pair") {
    ProductSetCtx ctx(kIntroA, kIntroB);

    const ProductVerdict out = ctx.membership(cplx(0.0, 1.0), 1e-6, 128);
    CHECK(out.verdict == Verdict::Out);
    CHECK(out.certificate_margin > 0.0);
    CHECK(std::abs(out.distance_estimate - 1.0) <= 1e-3);
    CHECK(std::abs(out.certificate_margin - 1.0) <= 1e-3);

    const ProductVerdict in = ctx.membership(cplx(0.5), 1e-6, 128);
    CHECK(in.verdict == Verdict::In);
    REQUIRE(in.witness.has_value());
    const auto [z, b] = *in.witness;
    CHECK(std::abs(z * b - cplx(0.5)) <= 1e-6 * 1.5);
}

TEST_CASE("membership: zero-product shortcut") {
    const CMatrix a = CMatrix::diagonal(CVector{cplx(1.0), cplx(2.0)});
    const CMatrix b = CMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}}); // 0 in W(B)
    const ProductVerdict v = ProductSetCtx(a, b).membership(0.0, 1e-6, 128);
    CHECK(v.verdict == Verdict::In);
    REQUIRE(v.witness.has_value());
    CHECK(std::abs(v.witness->first - cplx(1.0)) <= 1e-9);  // z = 1, nearest member to 0
    CHECK(std::abs(v.witness->second) <= 1e-9);             // b = 0

    // both factors bounded away from zero
    const CMatrix c = CMatrix::diagonal(CVector{cplx(2.0), cplx(3.0)});
    const ProductVerdict w = ProductSetCtx(a, c).membership(0.0, 1e-6, 128);
    CHECK(w.verdict == Verdict::Out);
    CHECK(w.certificate_margin > 1.0); // dist >= 1 * 2
}

TEST_CASE("containment_check: intro pair violated, PSD contained, identity contained") {
    const ContainmentReport rep = containment_check(kIntroA, kIntroB);
    CHECK(rep.overall == ContainmentReport::Overall::Violated);
    CHECK(std::abs(rep.max_violation_distance - 1.0) <= 1e-2);

    Rng rng(61);
    const CMatrix psd = CMatrix::diagonal(CVector{cplx(2.0), cplx(3.0)});
    for (int t = 0; t < 50; ++t) {
        const CMatrix b = rng.matrix(2);
        CHECK(containment_check(psd, b).overall == ContainmentReport::Overall::Contained);
    }
    const CMatrix id = CMatrix::identity(3);
    for (int t = 0; t < 3; ++t) {
        const CMatrix b = rng.matrix(3);
        CHECK(containment_check(id, b).overall == ContainmentReport::Overall::Contained);
    }
}

TEST_CASE("convexity probe: PSD factor keeps the product convex") {
    Rng rng(62);
    const CMatrix a = CMatrix::diagonal(CVector{cplx(1.0), cplx(2.0)});
    const ConvexityProbe p = product_convexity_probe(a, rng.matrix(2), 120);
    CHECK(p.convex);
    CHECK(p.worst_midpoint_gap == 0.0);

    // scalar multiples of PSD inherit convexity
    const CMatrix ar = std::polar(1.7, 0.9) * a;
    const ConvexityProbe pr = product_convexity_probe(ar, rng.matrix(2), 120);
    CHECK(pr.convex);
}

TEST_CASE("convexity probe: the segment pair [1,i] x [1,i] is not convex") {
    const CMatrix a = CMatrix::diagonal(CVector{cplx(1.0), cplx(0.0, 1.0)});
    const ConvexityProbe p = product_convexity_probe(a, a, 150);
    CHECK(!p.convex);
    CHECK(p.worst_midpoint_gap >= 0.05);

    // brute confirmation: the midpoint of 1*1 and i*i is 0, and no product
    // of segment members comes near it
    const std::vector<cplx> seg = [] {
        std::vector<cplx> s;
        for (int i = 0; i <= 400; ++i)
            s.push_back(cplx(1.0) + (static_cast<double>(i) / 400) * (cplx(0.0, 1.0) - cplx(1.0)));
        return s;
    }();
    CHECK(oracle::brute_min_product_dist(seg, seg, 0.0) >= 0.45);
}

TEST_CASE("sample_product_set: degenerate factors and the intro pair") {
    const CMatrix one = CMatrix::diagonal(CVector{cplx(1.0)});
    Rng rng(63);
    const CMatrix b = rng.matrix(2);
    const RangeApprox rb = compute_range(b);
    for (const cplx& p : sample_product_set(one, b, 16))
        CHECK(contains_point(rb, p, 1e-6) != Verdict::Out);

    const CMatrix zero = CMatrix::diagonal(CVector{cplx(0.0)});
    for (const cplx& p : sample_product_set(zero, b, 16)) CHECK(std::abs(p) <= 1e-12);

    double lo = 0.0, hi = 0.0, im = 0.0;
    for (const cplx& p : sample_product_set(kIntroA, kIntroB, 24)) {
        lo = std::min(lo, p.real());
        hi = std::max(hi, p.real());
        im = std::max(im, std::abs(p.imag()));
    }
    CHECK(im <= 1e-9);
    CHECK(lo == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(hi == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("sampled products certify as members") {
    Rng rng(64);
    const CMatrix a = rng.matrix(3), b = rng.matrix(3);
    ProductSetCtx ctx(a, b);
    const std::vector<cplx> cloud = sample_product_set(a, b, 16);
    for (std::size_t i = 0; i < cloud.size(); i += std::max<std::size_t>(1, cloud.size() / 12)) {
        const ProductVerdict v = ctx.membership(cloud[i], 1e-6, 64);
        CHECK(v.verdict == Verdict::In);
    }
}

TEST_CASE("membership: a point in the discretization sandwich is Borderline") {
    // product set = disk(0, w(B)) exactly; the nonzero eigenvalue of AB sits
    // a hair outside it. At a coarse angle grid the enclosure slack swamps
    // the excess (the disk factor rotates every enclosure bump into every
    // direction), so neither side can certify.
    const CMatrix a = CMatrix::from_rows({{0.0, 2.0}, {0.0, 0.0}});
    const double t = 2.0 * std::atan(0.25 * (1.0 + 1e-3));
    const CVector x{cplx(std::cos(t)), cplx(std::sin(t))};
    const CVector y{cplx(1.0), cplx(0.0)};
    const CMatrix b = rank_one(x, y);
    const cplx lambda = inner(a.apply(x), y);
    const ProductVerdict v = ProductSetCtx(a, b, 8).membership(lambda, 1e-6, 64);
    CHECK(v.verdict == Verdict::Borderline);
    // a finer grid resolves the same point as Out
    const ProductVerdict w = ProductSetCtx(a, b, 720).membership(lambda, 1e-6, 64);
    CHECK(w.verdict == Verdict::Out);
}

TEST_CASE("Out certificates are sound against the brute-force oracle") {
    Rng rng(65);
    for (int t = 0; t < 6; ++t) {
        const int n = 2 + t % 3;
        const CMatrix a = rng.matrix(n), b = rng.matrix(n);
        ProductSetCtx ctx(a, b);
        // a point safely outside: radius above the product of numerical radii
        const double w = ctx.radius_a() * ctx.radius_b();
        const cplx lambda = std::polar(1.8 * w + 1.0, rng.uniform() * 6.28);
        const ProductVerdict v = ctx.membership(lambda, 1e-6, 64);
        REQUIRE(v.verdict == Verdict::Out);
        const auto za = oracle::cover_polygon(ctx.range_a().outer, 512);
        const auto zb = oracle::cover_polygon(ctx.range_b().outer, 512);
        CHECK(oracle::brute_min_product_dist(za, zb, lambda) >= 0.5 * v.certificate_margin);
    }
}

TEST_CASE("membership symmetry and scaling equivariance") {
    Rng rng(66);
    const CMatrix a = rng.matrix(3), b = rng.matrix(3);
    ProductSetCtx ab(a, b), ba(b, a);
    for (int t = 0; t < 6; ++t) {
        const cplx lambda = 2.0 * rng.cgaussian();
        CHECK(ab.membership(lambda, 1e-6, 64).verdict == ba.membership(lambda, 1e-6, 64).verdict);
    }
    const cplx c(0.8, -1.1);
    ProductSetCtx scaled(c * a, b);
    for (int t = 0; t < 4; ++t) {
        const cplx lambda = 1.5 * rng.cgaussian();
        const ProductVerdict v1 = ab.membership(lambda, 1e-6, 64);
        const ProductVerdict v2 = scaled.membership(c * lambda, 1e-6, 64);
        if (v1.verdict != Verdict::Borderline && v2.verdict != Verdict::Borderline)
            CHECK(v1.verdict == v2.verdict);
        if (v1.verdict == Verdict::Out && v2.verdict == Verdict::Out)
            CHECK(v2.certificate_margin ==
                  doctest::Approx(std::abs(c) * v1.certificate_margin).epsilon(0.15));
    }
}
