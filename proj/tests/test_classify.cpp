#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wfield/classify.hpp"
#include "wfield/eig.hpp"
#include "wfield/productset.hpp"
#include "wfield/rng.hpp"
#include "wfield/witness.hpp"

using namespace wfield;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("is_psd_multiple: fixed verdicts") {
    auto [t1, p1] = is_psd_multiple(CMatrix::diagonal(CVector{cplx(2.0), cplx(3.0), cplx(0.0)}));
    CHECK(t1);
    CHECK(*p1 == doctest::Approx(0.0).epsilon(1e-10));

    auto [t2, p2] = is_psd_multiple(std::polar(1.0, kPi / 4) *
                                    CMatrix::diagonal(CVector{cplx(1.0), cplx(2.0)}));
    CHECK(t2);
    CHECK(*p2 == doctest::Approx(kPi / 4).epsilon(1e-9));

    CHECK(!is_psd_multiple(CMatrix::diagonal(CVector{cplx(1.0), cplx(-1.0)})).first);
    CHECK(!is_psd_multiple(CMatrix::from_rows({{1.0, 1.0}, {0.0, 1.0}})).first);
    CHECK(is_psd_multiple(CMatrix(2)).first); // zero matrix
}

TEST_CASE("is_psd_multiple is invariant under gamma U A U* and adjoint") {
    Rng rng(71);
    for (int t = 0; t < 8; ++t) {
        const int n = 2 + t % 4;
        const CMatrix a = (t % 2 == 0) ? rng.psd_multiple(n) : rng.matrix(n);
        const bool base = is_psd_multiple(a).first;
        const CMatrix u = rng.unitary(n);
        const cplx gamma = std::polar(0.5 + rng.uniform(), rng.uniform() * 2 * kPi);
        CHECK(is_psd_multiple(gamma * (u * a * u.adjoint())).first == base);
        CHECK(is_psd_multiple(a.adjoint()).first == base);
    }
}

TEST_CASE("radialoid_check: nilpotent, normal, Jordan block") {
    const RadiiReport nil = radialoid_check(CMatrix::from_rows({{0.0, 2.0}, {0.0, 0.0}}));
    CHECK(!nil.radialoid);
    CHECK(nil.w == doctest::Approx(1.0).epsilon(1e-8));

    Rng rng(72);
    const RadiiReport nrm = radialoid_check(rng.normal_matrix(4));
    CHECK(nrm.radialoid);

    const RadiiReport jb = radialoid_check(CMatrix::from_rows({{1.0, 1.0}, {0.0, 1.0}}));
    CHECK(!jb.radialoid);
    // the norm is the golden ratio; cross-check against eig of A*A
    const double golden = 0.5 * (1.0 + std::sqrt(5.0));
    CHECK(jb.norm == doctest::Approx(golden).epsilon(1e-12));
    CHECK(jb.r == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("decompose_at_peak: multiplicity and diagonal tails") {
    const CMatrix a = CMatrix::diagonal(CVector{cplx(1.0), cplx(1.0), cplx(0.0, 0.5)});
    const Decomposition d = decompose_at_peak(a);
    CHECK(d.k == 2);
    CHECK(std::abs(d.mu - cplx(1.0)) <= 1e-10);
    REQUIRE(d.a1.n() == 1);
    CHECK(std::abs(d.a1(0, 0) - cplx(0.0, 0.5)) <= 1e-10);
    CHECK(d.offblock_residual <= 1e-10);

    // truncated roots-of-unity model, halved: peak 1 is simple
    const int n = 8;
    CVector evs(n);
    for (int j = 0; j < n; ++j) evs[j] = 0.5 * (1.0 + std::polar(1.0, 2.0 * kPi * j / n));
    const Decomposition dn = decompose_at_peak(CMatrix::diagonal(evs));
    CHECK(dn.k == 1);
    CHECK(dn.a1.n() == n - 1);

    CHECK_THROWS_AS(decompose_at_peak(CMatrix::from_rows({{0.0, 2.0}, {0.0, 0.0}})),
                    NotRadialoid);
}

TEST_CASE("decompose_at_peak round-trips through unitary conjugation") {
    Rng rng(73);
    for (int t = 0; t < 6; ++t) {
        const CMatrix u = rng.unitary(2);
        const CMatrix a =
            u * CMatrix::diagonal(CVector{cplx(1.0), cplx(0.5, 0.4)}) * u.adjoint();
        const Decomposition d = decompose_at_peak(a);
        CHECK(d.offblock_residual <= 1e-9);
        CHECK((reassemble(d) - a).frobenius_norm() <= 1e-8 * a.frobenius_norm());
        // the tail keeps its numerical radius below the peak's
        if (d.a1.n() > 0) CHECK(radii(d.a1, 64).w <= 1.0 + 1e-8);
    }
}

TEST_CASE("check_lemma_disk: chord lengths against the unit disk") {
    const CMatrix esc = CMatrix::diagonal(CVector{std::polar(1.0, 2.0 * kPi / 3)});
    const LemmaDiskReport r1 = check_lemma_disk(esc, cplx(1.0), 1.0);
    CHECK(!r1.holds);
    CHECK(r1.worst_excess == doctest::Approx(std::sqrt(3.0) - 1.0).epsilon(1e-9));

    const LemmaDiskReport r2 =
        check_lemma_disk(CMatrix::diagonal(CVector{cplx(0.5, 0.4)}), cplx(1.0), 1.0);
    CHECK(r2.holds);
    CHECK(r2.worst_excess == doctest::Approx(std::hypot(0.5, 0.4) - 1.0).epsilon(1e-9));

    const LemmaDiskReport r3 =
        check_lemma_disk(CMatrix::diagonal(CVector{cplx(1.0 - 1e-12)}), cplx(1.0), 1.0);
    CHECK(r3.holds);
}

TEST_CASE("theorem_hypotheses: fixed reports") {
    const ClassificationReport seg =
        theorem_hypotheses(CMatrix::diagonal(CVector{cplx(1.0), cplx(0.5, 0.4)}));
    CHECK(seg.corner_hypothesis == CornerHypothesis::Holds);
    CHECK(seg.polygon_case);
    REQUIRE(seg.w_attaining_mu.has_value());
    CHECK(std::abs(*seg.w_attaining_mu - cplx(1.0)) <= 1e-6);

    const ClassificationReport disk =
        theorem_hypotheses(CMatrix::from_rows({{0.0, 2.0}, {0.0, 0.0}}));
    CHECK(disk.corner_hypothesis == CornerHypothesis::Fails);
    CHECK(!disk.radii.radialoid);

    const ClassificationReport tri =
        theorem_hypotheses(CMatrix::diagonal(CVector{cplx(1.0), cplx(0.0, 1.0), cplx(-1.0)}));
    CHECK(tri.polygon_case);
    // literal gap test: each peak eigenvalue is isolated in the spectrum
    CHECK(tri.isolated_peak_case);
}

TEST_CASE("PSD multiples pass containment for random and rank-one B") {
    Rng rng(74);
    for (int t = 0; t < 6; ++t) {
        const int n = 2 + t % 4;
        const CMatrix a = rng.psd_multiple(n);
        const CMatrix b = rng.matrix(n);
        CHECK(containment_check(a, b, 1e-6, 64).overall ==
              ContainmentReport::Overall::Contained);
        const CMatrix r1 = rank_one(rng.unit_vector(n), rng.unit_vector(n));
        CHECK(containment_check(a, r1, 1e-6, 64).overall ==
              ContainmentReport::Overall::Contained);
    }
}

TEST_CASE("non-radialoid matrices admit a quick random witness") {
    Rng rng(75);
    for (int t = 0; t < 4; ++t) {
        CMatrix a = rng.matrix(3);
        if (radii(a, 128).radialoid) continue; // random non-normal: essentially never
        const auto cert = random_rank_one_search(a, 200, 7 + t);
        REQUIRE(cert.has_value());
        CHECK(cert->verdict.verdict == Verdict::Out);
    }
}
