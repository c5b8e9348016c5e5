#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wfield/eig.hpp"
#include "wfield/rng.hpp"

using namespace wfield;

TEST_CASE("eig_hermitian: fixed spectra") {
    const auto pauli = eig_hermitian(CMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}));
    CHECK(pauli[0].value == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(pauli[1].value == doctest::Approx(1.0).epsilon(1e-14));

    const auto diag = eig_hermitian(CMatrix::diagonal(CVector{cplx(3.0), cplx(1.0), cplx(2.0)}));
    CHECK(diag[0].value == doctest::Approx(1.0));
    CHECK(diag[1].value == doctest::Approx(2.0));
    CHECK(diag[2].value == doctest::Approx(3.0));

    CHECK_THROWS_AS(eig_hermitian(CMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}})),
                    NonHermitianInput);
}

TEST_CASE("eig_hermitian: residuals, orthonormality, reconstruction") {
    Rng rng(21);
    for (int t = 0; t < 15; ++t) {
        const int n = 2 + t % 6;
        const CMatrix h = rng.hermitian(n);
        const auto pairs = eig_hermitian(h);
        const double scale = h.frobenius_norm();
        for (const auto& p : pairs) {
            CHECK(std::abs(vec_norm(p.vector) - 1.0) <= 1e-12);
            CVector r = h.apply(p.vector);
            for (int i = 0; i < n; ++i) r[i] -= p.value * p.vector[i];
            CHECK(vec_norm(r) <= 1e-12 * std::max(scale, 1.0));
        }
        for (std::size_t i = 0; i < pairs.size(); ++i)
            for (std::size_t j = i + 1; j < pairs.size(); ++j)
                CHECK(std::abs(inner(pairs[i].vector, pairs[j].vector)) <= 1e-10);
        // sum of value * (v v*) rebuilds H
        CMatrix rec(n);
        for (const auto& p : pairs)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    rec(i, j) += p.value * p.vector[i] * std::conj(p.vector[j]);
        CHECK((rec - h).frobenius_norm() <= 1e-9 * std::max(scale, 1e-30));
    }
}

TEST_CASE("eig_hermitian matches the characteristic-polynomial oracle") {
    Rng rng(22);
    for (int t = 0; t < 25; ++t) {
        const int n = 2 + t % 5; // up to 6
        const CMatrix h = rng.hermitian(n);
        const auto pairs = eig_hermitian(h);
        CVector got(n);
        for (int i = 0; i < n; ++i) got[i] = pairs[i].value;
        const std::vector<cplx> roots = oracle::eig_oracle(h);
        CHECK(multiset_distance(got, roots) <= 1e-8);
    }
}

TEST_CASE("eig_general: fixed spectra") {
    // the Hermitian counterexample product: sigma = {i, -i}
    const SpectrumSet rot = eig_general(CMatrix::from_rows({{0.0, 1.0}, {-1.0, 0.0}}));
    CHECK(multiset_distance(rot.values, CVector{cplx(0.0, 1.0), cplx(0.0, -1.0)}) <= 1e-12);

    // additive perturbation at (M, eps) = (4, 0.01): sigma = {0.2, -0.2}
    const SpectrumSet pert =
        eig_general(CMatrix::from_rows({{0.0, 4.0}, {0.01, 0.0}}));
    CHECK(multiset_distance(pert.values, CVector{cplx(0.2), cplx(-0.2)}) <= 1e-12);

    const SpectrumSet id = eig_general(CMatrix::identity(3));
    CHECK(multiset_distance(id.values, CVector{cplx(1.0), cplx(1.0), cplx(1.0)}) <= 1e-12);
}

TEST_CASE("eig_general: residual contract and lexicographic order") {
    Rng rng(23);
    for (int t = 0; t < 15; ++t) {
        const int n = 2 + t % 7;
        const CMatrix a = rng.matrix(n);
        const SpectrumSet s = eig_general(a);
        REQUIRE(s.values.size() == static_cast<std::size_t>(n));
        for (double r : s.residuals) CHECK(r <= s.tol);
        for (std::size_t i = 1; i < s.values.size(); ++i) {
            const cplx p = s.values[i - 1], q = s.values[i];
            CHECK((p.real() < q.real() || (p.real() == q.real() && p.imag() <= q.imag())));
        }
    }
}

TEST_CASE("eig_general on companion matrices matches Durand-Kerner") {
    Rng rng(24);
    for (int t = 0; t < 20; ++t) {
        const int deg = 2 + t % 5; // degree up to 6
        std::vector<cplx> coeffs(deg);
        for (cplx& c : coeffs) c = rng.cgaussian();
        CMatrix comp(deg);
        for (int i = 0; i + 1 < deg; ++i) comp(i + 1, i) = 1.0;
        for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -coeffs[deg - 1 - i];
        // companion of x^deg + c0 x^{deg-1} + ... (column convention)
        const SpectrumSet s = eig_general(comp);
        const std::vector<cplx> roots = oracle::durand_kerner(coeffs);
        CHECK(multiset_distance(s.values, roots) <= 1e-8);
    }
}

TEST_CASE("operator_norm and lu_solve basics") {
    CHECK(operator_norm(CMatrix::from_rows({{0.0, 2.0}, {0.0, 0.0}})) ==
          doctest::Approx(2.0).epsilon(1e-14));
    Rng rng(25);
    const CMatrix a = rng.matrix(5);
    const CVector b = rng.unit_vector(5);
    const CVector x = lu_solve(a, b);
    CVector r = a.apply(x);
    for (int i = 0; i < 5; ++i) r[i] -= b[i];
    CHECK(vec_norm(r) <= 1e-10);
    const CMatrix ai = inverse(a);
    CHECK((a * ai - CMatrix::identity(5)).frobenius_norm() <= 1e-10);
}

TEST_CASE("eig_general holds its residual contract at moderate scale") {
    Rng rng(26);
    const int n = 64;
    const CMatrix a = rng.matrix(n);
    const SpectrumSet s = eig_general(a);
    REQUIRE(s.values.size() == static_cast<std::size_t>(n));
    for (double r : s.residuals) CHECK(r <= s.tol);
}

TEST_CASE("multiset_distance is a matching, not positional") {
    const CVector a{cplx(1.0), cplx(2.0)};
    const CVector b{cplx(2.0), cplx(1.0)};
    CHECK(multiset_distance(a, b) <= 1e-15);
    const CVector c{cplx(1.0)};
    CHECK(std::isinf(multiset_distance(a, c)));
}
