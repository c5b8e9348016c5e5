#include "wfield/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wfield/eig.hpp"
#include "wfield/kernels.hpp"
#include "wfield/rng.hpp"

namespace wfield {

const char* to_string(Construction c) {
    switch (c) {
        case Construction::LemmaDisk: return "LemmaDisk";
        case Construction::CornerSupportLine: return "CornerSupportLine";
        default: return "RandomSearch";
    }
}

const char* to_string(FalsifyOutcome::Status s) {
    switch (s) {
        case FalsifyOutcome::Status::NoWitnessPsdMultiple: return "NoWitnessPsdMultiple";
        case FalsifyOutcome::Status::Found: return "Found";
        default: return "Inconclusive";
    }
}

namespace {

constexpr double kPi = std::numbers::pi;

// B = sum_{r,s} M[r][s] e_r e_s* over the frame {f0, f1}.
CMatrix two_frame_operator(const CVector& f0, const CVector& f1, const cplx m[2][2]) {
    const int n = static_cast<int>(f0.size());
    CMatrix b(n);
    const CVector* frame[2] = {&f0, &f1};
    for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) {
            if (m[r][s] == cplx(0.0)) continue;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    b(i, j) += m[r][s] * (*frame[r])[i] * std::conj((*frame[s])[j]);
        }
    return b;
}

// trace of A restricted against the two-frame operator: tr(A B)
cplx frame_trace(const CMatrix& a, const CVector& f0, const CVector& f1, const cplx m[2][2]) {
    // tr(A f_r f_s*) = <A f_r, f_s>
    const CVector af0 = a.apply(f0), af1 = a.apply(f1);
    cplx t = 0.0;
    t += m[0][0] * inner(af0, f0);
    t += m[0][1] * inner(af0, f1);
    t += m[1][0] * inner(af1, f0);
    t += m[1][1] * inner(af1, f1);
    return t;
}

void require_normalized(const CMatrix& a, const char* who) {
    const double nrm = operator_norm(a);
    if (std::abs(nrm - 1.0) > 1e-6)
        throw NotNormalized(std::string(who) + ": expected ||A|| = 1 (rescale first)");
}

// Peak eigenvector of the normalized, decomposed matrix, in A-coordinates.
CVector peak_vector(const Decomposition& dec) {
    const int n = dec.u.n();
    CVector v(n);
    for (int i = 0; i < n; ++i) v[i] = std::conj(dec.u(0, i));
    return v;
}

struct PartialWitness {
    CMatrix b;
    cplx lambda;
    WitnessParams params;
};

// ---- Lemma-style disk construction -------------------------------------

std::optional<PartialWitness> lemma_disk_partial(const CMatrix& a, const Decomposition& dec,
                                                 int m) {
    if (dec.a1.n() == 0) return std::nullopt;
    const RangeApprox r1 = compute_range(dec.a1, m);

    // farthest boundary point of W(A1) from the peak at 1
    int kbest = 0;
    double fbest = -1.0;
    for (int k = 0; k < r1.m; ++k) {
        const double f = std::abs(cplx(1.0) - r1.boundary_points[k]);
        if (f > fbest) {
            fbest = f;
            kbest = k;
        }
    }
    // local golden refinement of |1 - p(theta)|
    const double step = 2.0 * kPi / r1.m;
    double lo = (kbest - 1) * step, hi = (kbest + 1) * step;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    auto eval = [&](double th) {
        const SupportPoint sp = support_value(dec.a1, th);
        return std::make_pair(std::abs(cplx(1.0) - sp.boundary), sp);
    };
    double tbest = kbest * step;
    for (int it = 0; it < 24; ++it) {
        const double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
        if (eval(x1).first < eval(x2).first) {
            lo = x1;
            tbest = x2;
        } else {
            hi = x2;
            tbest = x1;
        }
    }
    SupportPoint sp = support_value(dec.a1, tbest);
    if (std::abs(cplx(1.0) - sp.boundary) < fbest) sp = support_value(dec.a1, kbest * step);
    const cplx nu = sp.boundary;
    if (std::abs(cplx(1.0) - nu) <= 1.0 + 1e-9) return std::nullopt; // disk condition holds

    // frame in A-coordinates: peak vector and the lifted maximizer of nu
    const int n = dec.u.n();
    const CVector e = peak_vector(dec);
    CVector flift(n, 0.0);
    {
        // lift [0 ; x_nu] through U*: f = U* (0 .. 0, x_nu)
        CVector xd(n, 0.0);
        for (int i = 0; i < dec.a1.n(); ++i) xd[dec.k + i] = sp.x[i];
        for (int i = 0; i < n; ++i) {
            cplx s = 0.0;
            for (int j = 0; j < n; ++j) s += std::conj(dec.u(j, i)) * xd[j];
            flift[i] = s;
        }
    }

    // (U (+) I)* ([[0,0],[2,0]] (+) O) (U (+) I) with U the 2x2 Hadamard
    const double inv2 = 0.5;
    const cplx m2[2][2] = {{inv2 * 2.0, inv2 * 2.0}, {inv2 * -2.0, inv2 * -2.0}};
    // m2 = U2* [[0,0],[2,0]] U2 = [[1,1],[-1,-1]]

    PartialWitness pw;
    pw.b = two_frame_operator(e, flift, m2);
    pw.lambda = frame_trace(a, e, flift, m2);
    // the proof's trace value: tr(AB) = 1 - nu
    if (std::abs(pw.lambda - (cplx(1.0) - nu)) > 1e-7) return std::nullopt;
    return pw;
}

// ---- Corner support-line construction ----------------------------------

struct EdgeContact {
    double alpha = 0.0; // direction of (contact - 1)
    double r = 0.0;     // |contact - 1|
    CVector u;          // attaining unit vector, orthogonal to the peak vector
    bool valid = false;
};

// Contact point of the support line at one edge of the normal cone of W(A)
// at 1. `upper` scans counterclockwise (contact direction alpha = theta+pi/2),
// otherwise clockwise (alpha = theta - pi/2, taken mod 2pi).
EdgeContact edge_contact(const CMatrix& a, const CVector& vpeak, int m, bool upper) {
    EdgeContact ec;
    const double step = 2.0 * kPi / m;
    const double eps_lin = 1e-7;
    auto gap = [&](double th) {
        return eig_hermitian(hermitian_part(a, th)).back().value - std::cos(th);
    };
    // walk the attaining cone from theta = 0
    int k = 0;
    const int kmax = m / 2;
    while (std::abs(k) < kmax && gap((upper ? k + 1 : k - 1) * step) <= eps_lin)
        k += upper ? 1 : -1;
    const double theta_edge = k * step;
    const double theta_next = theta_edge + (upper ? step : -step);

    // initial contact direction from the boundary point just past the cone
    const SupportPoint past = support_value(a, theta_next);
    cplx contact = past.boundary;
    if (std::abs(contact - cplx(1.0)) < 1e-9) return ec; // degenerate tangency
    double alpha = std::arg(contact - cplx(1.0));
    if (alpha < 0.0) alpha += 2.0 * kPi;

    // polish: at the self-consistent edge angle the top eigenspace holds both
    // the peak and the second contact; extract the far endpoint there
    CVector uvec;
    for (int it = 0; it < 6; ++it) {
        const double theta = alpha + (upper ? -0.5 * kPi : -1.5 * kPi);
        const auto pairs = eig_hermitian(hermitian_part(a, theta));
        const double top = pairs.back().value;
        double gap_tol = 1e-7;
        std::vector<CVector> basis;
        for (int widen = 0; widen < 3 && basis.size() < 2; ++widen) {
            basis.clear();
            for (const auto& p : pairs)
                if (top - p.value <= gap_tol) basis.push_back(p.vector);
            gap_tol *= 100.0;
        }
        if (basis.size() < 2) return ec; // no second contact on this line
        const int d = static_cast<int>(basis.size());
        const int n = a.n();
        // compression onto the top eigenspace
        CMatrix comp(d);
        std::vector<CVector> abasis(d);
        for (int c = 0; c < d; ++c) abasis[c] = a.apply(basis[c]);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) comp(r, c) = inner(abasis[c], basis[r]);
        // peak coordinates inside the eigenspace
        CVector cpeak(d);
        for (int c = 0; c < d; ++c) cpeak[c] = inner(vpeak, basis[c]);
        const double cn = vec_norm(cpeak);
        // support of the compression in the contact direction
        const SupportPoint far = support_value(comp, alpha);
        CVector xi = far.x;
        if (cn > 1e-6) {
            for (cplx& v : cpeak) v /= cn;
            const cplx proj = inner(xi, cpeak);
            for (int c = 0; c < d; ++c) xi[c] -= proj * cpeak[c];
        }
        const double xin = vec_norm(xi);
        if (xin < 1e-6) return ec; // endpoint collapses onto the peak
        for (cplx& v : xi) v /= xin;
        uvec.assign(n, 0.0);
        for (int c = 0; c < d; ++c)
            for (int i = 0; i < n; ++i) uvec[i] += xi[c] * basis[c][i];
        normalize(uvec);
        contact = quadratic_form(a, uvec);
        const cplx delta = contact - cplx(1.0);
        if (std::abs(delta) < 1e-9) return ec;
        double alpha_new = std::arg(delta);
        if (alpha_new < 0.0) alpha_new += 2.0 * kPi;
        const bool done = std::abs(alpha_new - alpha) < 1e-13;
        alpha = alpha_new;
        if (done) break;
    }
    ec.alpha = alpha;
    ec.r = std::abs(contact - cplx(1.0));
    ec.u = std::move(uvec);
    ec.valid = ec.r > 1e-9;
    return ec;
}

std::optional<PartialWitness> corner_partial(const CMatrix& a, const Decomposition& dec, int m) {
    const CornerReport corner = corner_support_lines(a, 1.0, m);
    if (corner.count < 2) return std::nullopt;
    const CVector vpeak = peak_vector(dec);

    // pick an edge whose contact direction lands in (pi/2, pi) -- flipping
    // to A* mirrors the directions when only the lower edge qualifies
    bool flip = false;
    EdgeContact ec = edge_contact(a, vpeak, m, /*upper=*/true);
    const double delta = 1e-7;
    if (!(ec.valid && ec.alpha > 0.5 * kPi + delta && ec.alpha < kPi - delta)) {
        EdgeContact lower = edge_contact(a, vpeak, m, /*upper=*/false);
        if (lower.valid && lower.alpha > kPi + delta && lower.alpha < 1.5 * kPi - delta) {
            flip = true;
            ec = std::move(lower);
        } else {
            return std::nullopt;
        }
    }

    const CMatrix awork = flip ? a.adjoint() : a;
    const double alpha1 = flip ? 2.0 * kPi - ec.alpha : ec.alpha;
    const double r1 = ec.r;
    // same vector attains the conjugate contact for A*
    const CVector& uvec = ec.u;

    if (2.0 * r1 * std::sin(alpha1) <= 1e-9) return std::nullopt; // degenerate tangency
    const double theta = std::min(0.25 * kPi, std::atan(r1 * std::sin(alpha1)));

    // B0 = 2 e^{i(pi/2 - alpha1)} [[cos t, 0], [sin t, 0]], conjugated by
    // U0 = (1/sqrt 2) [[i, -i], [1, 1]]; assemble M = U0* B0 U0.
    const cplx u0[2][2] = {{cplx(0.0, 1.0) / std::numbers::sqrt2, cplx(0.0, -1.0) / std::numbers::sqrt2},
                           {cplx(1.0) / std::numbers::sqrt2, cplx(1.0) / std::numbers::sqrt2}};
    const cplx pre = 2.0 * std::polar(1.0, 0.5 * kPi - alpha1);
    const cplx b0[2][2] = {{pre * std::cos(theta), 0.0}, {pre * std::sin(theta), 0.0}};
    cplx mb[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s)
            for (int p = 0; p < 2; ++p)
                for (int q = 0; q < 2; ++q)
                    mb[r][s] += std::conj(u0[p][r]) * b0[p][q] * u0[q][s];

    PartialWitness pw;
    CMatrix bwork = two_frame_operator(vpeak, uvec, mb);
    cplx lwork = frame_trace(awork, vpeak, uvec, mb);

    const cplx closed(2.0 * std::sin(alpha1) * std::cos(theta) + r1 * std::sin(theta),
                      2.0 * std::cos(alpha1) * std::cos(theta) + r1 * std::cos(theta));
    if (std::abs(lwork - closed) > 1e-7) return std::nullopt; // frame drifted; bail out

    if (flip) {
        bwork = bwork.adjoint();
        lwork = std::conj(lwork);
    }
    pw.b = std::move(bwork);
    pw.lambda = lwork;
    pw.params.alpha1 = alpha1;
    pw.params.r1 = r1;
    pw.params.theta = theta;
    pw.params.adjoint_flip = flip;
    return pw;
}

// ---- certificate assembly ----------------------------------------------

std::optional<WitnessCertificate> finalize(const CMatrix& a_original, PartialWitness pw,
                                           Construction how, double tol, int grid,
                                           std::string* why_not) {
    WitnessCertificate cert;
    cert.construction = how;
    cert.params = pw.params;
    cert.b = std::move(pw.b);
    cert.lambda = (a_original * cert.b).trace(); // exact trace at original scale

    // rank-one check: residual against the top singular dyad
    const double s1 = operator_norm(cert.b);
    if (s1 <= 0.0 || rank_one_defect(cert.b) > 1e-10 * s1) {
        if (why_not) *why_not = "witness is not numerically rank one";
        return std::nullopt;
    }
    // lambda must be in sigma(AB)
    const SpectrumSet spec = eig_general(a_original * cert.b);
    const double din = kernels::min_abs_diff(spec.values, cert.lambda).value;
    if (din > 1e-6 * (1.0 + std::abs(cert.lambda))) {
        if (why_not) *why_not = "trace value is not an eigenvalue of AB";
        return std::nullopt;
    }
    cert.verdict =
        ProductSetCtx(a_original, cert.b).membership(cert.lambda, tol, grid, {}, true);
    if (cert.verdict.verdict != Verdict::Out || cert.verdict.certificate_margin <= 0.0) {
        if (why_not) *why_not = "membership did not certify Out";
        return std::nullopt;
    }
    return cert;
}

} // namespace

std::optional<WitnessCertificate> witness_lemma_disk(const CMatrix& a, int m, double tol,
                                                     int grid) {
    require_normalized(a, "witness_lemma_disk");
    const Decomposition dec = decompose_at_peak(a);
    if (std::abs(dec.mu - cplx(1.0)) > 1e-6)
        throw NotNormalized("witness_lemma_disk: peak eigenvalue must be rotated to 1");
    auto pw = lemma_disk_partial(a, dec, m);
    if (!pw) return std::nullopt;
    pw->params.mu = dec.mu;
    return finalize(a, std::move(*pw), Construction::LemmaDisk, tol, grid, nullptr);
}

std::optional<WitnessCertificate> witness_corner(const CMatrix& a, int m, double tol, int grid) {
    require_normalized(a, "witness_corner");
    if (is_psd_multiple(a).first) return std::nullopt;
    const Decomposition dec = decompose_at_peak(a);
    if (std::abs(dec.mu - cplx(1.0)) > 1e-6)
        throw NotNormalized("witness_corner: peak eigenvalue must be rotated to 1");
    auto pw = corner_partial(a, dec, m);
    if (!pw) return std::nullopt;
    pw->params.mu = dec.mu;
    return finalize(a, std::move(*pw), Construction::CornerSupportLine, tol, grid, nullptr);
}

std::optional<WitnessCertificate> random_rank_one_search(const CMatrix& a, int trials,
                                                         std::uint64_t seed, double tol,
                                                         int grid) {
    if (trials < 1) throw InvalidInput("random_rank_one_search: trials must be >= 1");
    const int n = a.n();
    if (n == 0 || a.frobenius_norm() == 0.0) return std::nullopt;
    const double scale = operator_norm(a);
    const RangeApprox ra = compute_range(a, 720);

    // subsampled true members of W(A) for the pairwise prescreen
    std::vector<cplx> za;
    for (int k = 0; k < ra.m; k += 8) za.push_back(ra.boundary_points[k]);

    Rng rng(seed);
    for (int trial = 0; trial <= trials; ++trial) {
        CVector x, y;
        if (trial == 0) {
            // deterministic hint: the top singular pair (the proof of the
            // radialoid necessity builds exactly this rank-one operator)
            const auto sv = eig_hermitian(a.adjoint() * a);
            x = sv.back().vector;
            y = a.apply(x);
            if (vec_norm(y) < 1e-12 * scale) continue;
            normalize(y);
        } else {
            x = rng.unit_vector(n);
            y = rng.unit_vector(n);
        }
        const cplx lambda = inner(a.apply(x), y);
        if (std::abs(lambda) <= 1e-12 * scale) continue; // 0 is always attainable
        const CMatrix b = rank_one(x, y);
        ProductSetCtx ctx(a, ra, b, 256);
        // prescreen: a product of true members already reaching lambda rules
        // out any Out certificate
        std::vector<cplx> zb;
        for (int k = 0; k < ctx.range_b().m; k += 4)
            zb.push_back(ctx.range_b().boundary_points[k]);
        if (kernels::min_product_dist(za, zb, lambda).value <= tol) continue;
        ProductVerdict v = ctx.membership(lambda, tol, grid, {}, true);
        if (v.verdict == Verdict::Out && v.certificate_margin > 0.0) {
            WitnessCertificate cert;
            cert.b = b;
            cert.lambda = lambda;
            cert.verdict = std::move(v);
            cert.construction = Construction::RandomSearch;
            cert.params.seed = seed;
            cert.params.trial = trial;
            return cert;
        }
    }
    return std::nullopt;
}

FalsifyOutcome falsify(const CMatrix& a, const FalsifyConfig& cfg) {
    FalsifyOutcome out;
    if (a.n() == 0 || a.frobenius_norm() == 0.0) {
        out.status = FalsifyOutcome::Status::NoWitnessPsdMultiple;
        out.notes.push_back("zero matrix is a PSD multiple");
        return out;
    }
    if (is_psd_multiple(a).first) {
        out.status = FalsifyOutcome::Status::NoWitnessPsdMultiple;
        out.notes.push_back("A is a multiple of a positive semi-definite matrix");
        return out;
    }

    const RadiiReport rad = radii(a, cfg.m);
    // scale-aware radialoid test; the report's flag is absolute-tol
    const bool radialoid = std::abs(rad.r - rad.norm) <= 1e-8 * std::max(1.0, rad.norm);
    cplx mu_peak = 0.0;
    Decomposition dec;
    bool have_dec = false;
    if (radialoid) {
        const SpectrumSet spec = eig_general(a);
        for (const cplx& v : spec.values)
            if (std::abs(v) > std::abs(mu_peak)) mu_peak = v;
        if (std::abs(mu_peak) > 0.0) {
            const CMatrix an = (cplx(1.0) / mu_peak) * a;
            try {
                dec = decompose_at_peak(an);
                have_dec = true;
            } catch (const NumericError& e) {
                out.notes.push_back(std::string("decomposition failed: ") + e.what());
            }
            if (have_dec) {
                std::string why;
                if (auto pw = lemma_disk_partial(an, dec, cfg.m)) {
                    pw->params.mu = mu_peak;
                    if (auto cert = finalize(a, std::move(*pw), Construction::LemmaDisk, cfg.tol,
                                             cfg.grid, &why)) {
                        out.status = FalsifyOutcome::Status::Found;
                        out.certificate = std::move(cert);
                        return out;
                    }
                    out.notes.push_back("lemma-disk construction rejected: " + why);
                } else {
                    out.notes.push_back("lemma-disk condition holds (no escape from the disk)");
                }
                if (auto pw = corner_partial(an, dec, cfg.m)) {
                    pw->params.mu = mu_peak;
                    if (auto cert = finalize(a, std::move(*pw), Construction::CornerSupportLine,
                                             cfg.tol, cfg.grid, &why)) {
                        out.status = FalsifyOutcome::Status::Found;
                        out.certificate = std::move(cert);
                        return out;
                    }
                    out.notes.push_back("corner construction rejected: " + why);
                } else {
                    out.notes.push_back("corner construction not applicable");
                }
            }
        }
    } else {
        out.notes.push_back("not radialoid; going directly to the randomized search");
    }

    if (auto cert = random_rank_one_search(a, cfg.trials, cfg.seed, cfg.tol,
                                           std::min(cfg.grid, 96))) {
        out.status = FalsifyOutcome::Status::Found;
        out.certificate = std::move(cert);
        return out;
    }
    out.notes.push_back("randomized rank-one search exhausted " + std::to_string(cfg.trials) +
                        " trials");
    out.status = FalsifyOutcome::Status::Inconclusive;
    return out;
}

} // namespace wfield
