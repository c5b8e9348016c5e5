#include "wfield/repro.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "wfield/classify.hpp"
#include "wfield/eig.hpp"
#include "wfield/rng.hpp"
#include "wfield/witness.hpp"

namespace wfield {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string fmt(cplx v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.9g%+.9gi", v.real(), v.imag());
    return buf;
}

ReproClaim claim(std::string desc, std::string expected, std::string observed, double tol,
                 bool pass) {
    return {std::move(desc), std::move(expected), std::move(observed), tol, pass};
}

} // namespace

void ReproResult::finish() {
    overall_pass = true;
    for (const ReproClaim& c : claims) overall_pass = overall_pass && c.pass;
}

CMatrix truncation_matrix(int n) {
    CVector d(n);
    for (int j = 0; j < n; ++j) d[j] = 1.0 + std::polar(1.0, 2.0 * kPi * j / n);
    return CMatrix::diagonal(d);
}

ReproResult repro_intro_hermitian() {
    ReproResult res;
    res.example_id = "intro-hermitian";
    const CMatrix a = CMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
    const CMatrix b = CMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});

    const SpectrumSet sab = eig_general(a * b);
    const cplx expect[] = {cplx(0.0, -1.0), cplx(0.0, 1.0)};
    const double dab = multiset_distance(sab.values, expect);
    res.claims.push_back(
        claim("sigma(AB) = {i, -i}", "{-i, i}", fmt(sab.values[0]) + ", " + fmt(sab.values[1]),
              1e-10, dab <= 1e-10));

    const SpectrumSet sba = eig_general(b * a);
    const double dba = multiset_distance(sba.values, expect);
    res.claims.push_back(claim("sigma(BA) = {i, -i}", "{-i, i}",
                               fmt(sba.values[0]) + ", " + fmt(sba.values[1]), 1e-10,
                               dba <= 1e-10));

    // both ranges are the segment [-1, 1]
    const RangeApprox ra = compute_range(a), rb = compute_range(b);
    const ConvexPolygon segment{{cplx(-1.0), cplx(1.0)}};
    const double ha = hausdorff(ra.outer, segment);
    const double hb = hausdorff(rb.outer, segment);
    res.claims.push_back(claim("W(A) = W(B) = [-1,1]", "0", fmt(std::max(ha, hb)), 1e-6,
                               std::max(ha, hb) <= 1e-6));

    // the product cloud hull stays the same segment
    const std::vector<cplx> cloud = sample_product_set(a, b, 48);
    double lo = 1.0, hi = -1.0, imag_max = 0.0;
    for (const cplx& p : cloud) {
        lo = std::min(lo, p.real());
        hi = std::max(hi, p.real());
        imag_max = std::max(imag_max, std::abs(p.imag()));
    }
    const double hull_err = std::max({std::abs(lo + 1.0), std::abs(hi - 1.0), imag_max});
    res.claims.push_back(
        claim("product-set hull = [-1,1]", "0", fmt(hull_err), 1e-6, hull_err <= 1e-6));

    ProductSetCtx ctx(a, b);
    bool both_out = true;
    double dist_err = 0.0;
    for (const cplx lam : {cplx(0.0, 1.0), cplx(0.0, -1.0)}) {
        const ProductVerdict v = ctx.membership(lam, 1e-6, 128);
        both_out = both_out && v.verdict == Verdict::Out;
        dist_err = std::max(dist_err, std::abs(v.distance_estimate - 1.0));
        dist_err = std::max(dist_err, std::abs(v.certificate_margin - 1.0));
    }
    res.claims.push_back(claim("both eigenvalues Out at distance 1", "Out, dist 1",
                               both_out ? "Out, dist 1" + std::string(" +- ") + fmt(dist_err)
                                        : "not Out",
                               1e-3, both_out && dist_err <= 1e-3));
    res.finish();
    return res;
}

ReproResult repro_additive_perturbation(double big_m, double eps) {
    ReproResult res;
    res.example_id = "additive";
    if (big_m <= 0.0 || eps < 0.0)
        throw InvalidInput("repro_additive_perturbation: need M > 0, eps >= 0");
    const CMatrix a = CMatrix::from_rows({{0.0, big_m}, {0.0, 0.0}});
    const CMatrix b = CMatrix::from_rows({{0.0, 0.0}, {eps, 0.0}});
    const CMatrix s = a + b;

    const double root = std::sqrt(big_m * eps);
    const SpectrumSet spec = eig_general(s);
    const cplx expect[] = {cplx(-root), cplx(root)};
    const double d = multiset_distance(spec.values, expect);
    res.claims.push_back(claim("sigma(A+B) = {+-sqrt(M eps)}",
                               "{+-" + fmt(root) + "}",
                               fmt(spec.values[0]) + ", " + fmt(spec.values[1]), 1e-9,
                               d <= 1e-9));

    // Minkowski containment through support functions
    const RangeApprox ra = compute_range(a), rb = compute_range(b);
    double worst = -1e300;
    for (const cplx lam : {cplx(root), cplx(-root)})
        for (int k = 0; k < ra.m; ++k) {
            const double lhs = (std::polar(1.0, -ra.angles[k]) * lam).real();
            worst = std::max(worst, lhs - (ra.support_values[k] + rb.support_values[k]));
        }
    res.claims.push_back(claim("sigma(A+B) within W(A) + W(B)", "<= 0", fmt(worst), 1e-9,
                               worst <= 1e-9));
    res.finish();
    return res;
}

namespace {

// Worst Out-certified distance over randomized rank-one probes.
double worst_random_violation(const CMatrix& a, int trials, std::uint64_t seed) {
    const int n = a.n();
    const RangeApprox ra = compute_range(a, 720);
    Rng rng(seed);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const CVector x = rng.unit_vector(n), y = rng.unit_vector(n);
        const cplx lambda = inner(a.apply(x), y);
        if (std::abs(lambda) < 1e-12) continue;
        ProductSetCtx ctx(a, ra, rank_one(x, y), 180);
        const ProductVerdict v = ctx.membership(lambda, 1e-6, 64, {}, true);
        if (v.verdict == Verdict::Out) worst = std::max(worst, v.distance_estimate);
    }
    return worst;
}

} // namespace

ReproResult repro_truncated_example_1_3(int n, int trials, std::uint64_t seed) {
    ReproResult res;
    res.example_id = "truncation-1-3";
    if (n < 4) throw InvalidInput("repro_truncated_example_1_3: need n >= 4");
    const CMatrix a = truncation_matrix(n);

    const double nres = normality_residual(a);
    const bool psd = is_psd_multiple(a).first;
    res.claims.push_back(claim("A_n normal, not a PSD multiple", "residual 0, psd false",
                               "residual " + fmt(nres) + ", psd " + (psd ? "true" : "false"),
                               1e-12, nres <= 1e-12 && !psd));

    const FalsifyOutcome fo = falsify(a, {.seed = seed});
    const bool found = fo.status == FalsifyOutcome::Status::Found;
    const double margin = found ? fo.certificate->verdict.certificate_margin : 0.0;
    res.claims.push_back(claim("falsify finds an Out-certified witness", "margin > 0",
                               found ? "margin " + fmt(margin) : "no certificate", 0.0,
                               found && margin > 0.0));

    if (n > 4) {
        const FalsifyOutcome fo4 = falsify(truncation_matrix(4), {.seed = seed});
        const double margin4 =
            fo4.status == FalsifyOutcome::Status::Found ? fo4.certificate->verdict.certificate_margin
                                                        : 0.0;
        res.claims.push_back(claim("margin decays: margin(n) < margin(4)",
                                   "< " + fmt(margin4), fmt(margin), 0.0,
                                   margin4 > 0.0 && margin < margin4));
    } else {
        // W(A_4) is the square centered at 1 with vertices 2, 1+-i, 0
        const RangeApprox r4 = compute_range(a);
        const ConvexPolygon square{{cplx(0.0), cplx(2.0), cplx(1.0, 1.0), cplx(1.0, -1.0)}};
        const double hd = hausdorff(r4.outer, convex_hull(square.v));
        res.claims.push_back(
            claim("W(A_4) = conv{0, 2, 1+-i}", "0", fmt(hd), 1e-4, hd <= 1e-4));
    }

    if (trials > 0 && found) {
        const double worst = worst_random_violation(a, trials, seed + 1);
        const double bound = fo.certificate->verdict.distance_estimate + 1e-3 * (1.0 + margin);
        res.claims.push_back(
            claim("random rank-one violations stay below the constructed one",
                  "<= " + fmt(bound), fmt(worst), 1e-3, worst <= bound));
    }
    res.finish();
    return res;
}

ReproResult repro_example_1_4(int n, double d) {
    ReproResult res;
    res.example_id = "oplus-1-4";
    if (n < 8) throw InvalidInput("repro_example_1_4: need n >= 8");
    if (d <= 0.0 || d > 1.0) throw InvalidInput("repro_example_1_4: need d in (0, 1]");
    const CMatrix a = truncation_matrix(n);
    const CMatrix block = CMatrix::from_rows({{1.0, d}, {0.0, 1.0}});
    const CMatrix ahat = direct_sum(a, block);

    // commutator norm comes entirely from the 2x2 block: sqrt(2) d^2
    const double f2 = std::pow(ahat.frobenius_norm(), 2);
    const double expected_res = std::numbers::sqrt2 * d * d / f2;
    const double nres = normality_residual(ahat);
    res.claims.push_back(claim("A-hat is not normal", fmt(expected_res), fmt(nres), 1e-10,
                               nres > 0.0 && std::abs(nres - expected_res) <= 1e-10));

    // block range is the disk of radius d/2 at 1, well inside W(A_n)
    const RangeApprox rb = compute_range(block);
    double disk_err = 0.0;
    for (int k = 0; k < rb.m; ++k)
        disk_err = std::max(disk_err,
                            std::abs(rb.support_values[k] - (std::cos(rb.angles[k]) + 0.5 * d)));
    res.claims.push_back(claim("W(block) = disk(1, d/2)", "0", fmt(disk_err), 1e-4,
                               disk_err <= 1e-4));

    const RangeApprox ra = compute_range(a);
    double slack = 1e300;
    for (int k = 0; k < ra.m; ++k) slack = std::min(slack, ra.support_values[k] - rb.support_values[k]);
    const double slack_expected = std::cos(kPi / n) - 0.5 * d;
    res.claims.push_back(claim("block range swallowed by W(A_n)",
                               ">= " + fmt(slack_expected - 1e-4), fmt(slack), 1e-4,
                               slack >= slack_expected - 1e-4 && slack > 0.0));

    // margin decay matches the plain truncation
    const FalsifyOutcome fo = falsify(ahat, {});
    const bool found = fo.status == FalsifyOutcome::Status::Found;
    const double margin = found ? fo.certificate->verdict.certificate_margin : 0.0;
    if (n > 8) {
        const CMatrix ref = direct_sum(truncation_matrix(8), block);
        const FalsifyOutcome fo8 = falsify(ref, {});
        const double margin8 = fo8.status == FalsifyOutcome::Status::Found
                                   ? fo8.certificate->verdict.certificate_margin
                                   : 0.0;
        res.claims.push_back(claim("margins decay with n", "< " + fmt(margin8), fmt(margin), 0.0,
                                   found && margin8 > 0.0 && margin < margin8));
    } else {
        res.claims.push_back(claim("finite truncation still violated", "margin > 0",
                                   found ? fmt(margin) : "no certificate", 0.0,
                                   found && margin > 0.0));
    }
    res.finish();
    return res;
}

ReproResult repro_cited_inclusions(int trials, std::uint64_t seed) {
    ReproResult res;
    res.example_id = "cited-inclusions";
    if (trials < 10) throw InvalidInput("repro_cited_inclusions: need trials >= 10");
    Rng rng(seed);

    // quotient containment: 0 outside W(A) -> sigma(A^{-1}B) in W(B)/W(A)
    double worst_q = 0.0;
    for (int t = 0; t < trials; ++t) {
        const int n = 2 + (t % 5);
        CMatrix a = rng.matrix(n);
        const double w = radii(a, 256).w;
        for (int i = 0; i < n; ++i) a(i, i) += 2.0 * w + 1.0;
        const CMatrix b = rng.matrix(n);
        const CMatrix quot = inverse(a) * b;
        const SpectrumSet spec = eig_general(quot);

        const RangeApprox ra = compute_range(a, 360);
        const RangeApprox rbr = compute_range(b, 360);
        for (const cplx& lam : spec.values) {
            RangeRefiner pa(a, ra), pb(b, rbr);
            cplx av = ra.inner.centroid();
            double best = 1e300;
            for (int it = 0; it < 40; ++it) {
                const cplx bv = pb.project(lam * av);
                if (std::abs(lam) > 1e-14) av = pa.project(bv / lam);
                const double q = std::abs(lam - bv / av);
                if (q < best) best = q;
                if (best <= 1e-8) break;
            }
            worst_q = std::max(worst_q, best);
        }
    }
    res.claims.push_back(claim("sigma(A^{-1}B) within W(B)/W(A), 0 outside W(A)", "<= 1e-6",
                               fmt(worst_q), 1e-6, worst_q <= 1e-6));

    // hull containment for PSD A: conv sigma(AB) inside the product set
    bool all_in = true;
    double worst_d = 0.0;
    for (int t = 0; t < trials; ++t) {
        const int n = 2 + (t % 5);
        CVector diag(n);
        for (cplx& v : diag) v = std::abs(rng.gaussian());
        const CMatrix u = rng.unitary(n);
        const CMatrix a = u * CMatrix::diagonal(diag) * u.adjoint();
        const CMatrix b = rng.matrix(n);
        const SpectrumSet spec = eig_general(a * b);
        const ConvexPolygon hull = convex_hull(spec.values);
        ProductSetCtx ctx(a, b);
        for (const cplx& vtx : hull.v) {
            const ProductVerdict v = ctx.membership(vtx, 1e-6, 128);
            if (v.verdict != Verdict::In) {
                all_in = false;
                worst_d = std::max(worst_d, v.distance_estimate);
            }
        }
    }
    res.claims.push_back(claim("conv sigma(AB) inside the product set for PSD A", "all In",
                               all_in ? "all In" : "worst distance " + fmt(worst_d), 1e-6,
                               all_in));
    res.finish();
    return res;
}

} // namespace wfield
