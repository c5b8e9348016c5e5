#include "wfield/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wfield/eig.hpp"

namespace wfield {

const char* to_string(CornerHypothesis c) {
    switch (c) {
        case CornerHypothesis::Holds: return "Holds";
        case CornerHypothesis::Fails: return "Fails";
        default: return "Borderline";
    }
}

double normality_residual(const CMatrix& a) {
    const double f = a.frobenius_norm();
    if (f == 0.0) return 0.0;
    const CMatrix comm = a.adjoint() * a - a * a.adjoint();
    return comm.frobenius_norm() / (f * f);
}

namespace {

double dist_to_ray(cplx z, double phi) {
    // distance to e^{i phi} [0, inf)
    const cplx rot = std::polar(1.0, -phi) * z;
    if (rot.real() >= 0.0) return std::abs(rot.imag());
    return std::abs(z);
}

double wrap_angle(double a) {
    const double twopi = 2.0 * std::numbers::pi;
    a = std::fmod(a, twopi);
    if (a < 0.0) a += twopi;
    return a;
}

} // namespace

std::pair<bool, std::optional<double>> is_psd_multiple(const CMatrix& a, double tol) {
    if (a.n() == 0 || a.frobenius_norm() == 0.0) return {true, 0.0};
    if (normality_residual(a) > std::max(tol, 1e-9)) return {false, std::nullopt};

    const SpectrumSet spec = eig_general(a);
    const double scale = operator_norm(a);
    // candidate ray angles: each significantly nonzero eigenvalue, the
    // dominant one first (it fixes the phase of a true PSD multiple stably)
    std::size_t dom = 0;
    for (std::size_t i = 1; i < spec.values.size(); ++i)
        if (std::abs(spec.values[i]) > std::abs(spec.values[dom])) dom = i;
    std::vector<double> candidates{std::arg(spec.values[dom])};
    for (const cplx& v : spec.values)
        if (std::abs(v) > tol * scale) candidates.push_back(std::arg(v));

    double best_phi = candidates.front();
    double best_dev = std::numeric_limits<double>::infinity();
    for (double phi : candidates) {
        double dev = 0.0;
        for (const cplx& v : spec.values) dev = std::max(dev, dist_to_ray(v, phi));
        if (dev < best_dev) {
            best_dev = dev;
            best_phi = phi;
        }
    }
    if (best_dev <= tol * scale) return {true, wrap_angle(best_phi)};
    return {false, std::nullopt};
}

RadiiReport radialoid_check(const CMatrix& a, double tol) {
    return radii(a, 720, tol);
}

Decomposition decompose_at_peak(const CMatrix& a, double tol, int m) {
    const RadiiReport rad = radii(a, std::max(m, 64), tol);
    if (!rad.radialoid) throw NotRadialoid("decompose_at_peak: r(A) != ||A|| within tol");
    const double scale = std::max(rad.norm, 1e-30);

    const SpectrumSet spec = eig_general(a);
    std::vector<cplx> peaks;
    for (const cplx& v : spec.values)
        if (std::abs(v) >= rad.w - tol * scale) peaks.push_back(v);
    if (peaks.empty()) throw PeakNotAttained("decompose_at_peak: no eigenvalue attains w(A)");
    // group equal peaks, then take the distinct value of smallest argument
    cplx mu = peaks.front();
    double best_arg = wrap_angle(std::arg(mu));
    for (const cplx& v : peaks) {
        const double va = wrap_angle(std::arg(v));
        if (va < best_arg - 1e-12) {
            best_arg = va;
            mu = v;
        }
    }

    // eigenspace of mu = near-null space of (A - mu I)* (A - mu I)
    const int n = a.n();
    CMatrix shifted = a;
    for (int i = 0; i < n; ++i) shifted(i, i) -= mu;
    const CMatrix nmat = shifted.adjoint() * shifted;
    const auto pairs = eig_hermitian(nmat);
    const double thresh = std::pow(tol * scale, 2) * 4.0 + 1e-28 * scale * scale;
    std::vector<CVector> basis;
    for (const auto& p : pairs)
        if (p.value <= thresh) basis.push_back(p.vector);
    if (basis.empty()) throw PeakNotAttained("decompose_at_peak: defective peak eigenvalue");
    const int k = static_cast<int>(basis.size());

    const CMatrix v = complete_basis(basis, n); // columns: eigenspace first
    const CMatrix u = v.adjoint();
    const CMatrix d = u * a * u.adjoint(); // = V* A V

    Decomposition dec;
    dec.mu = mu;
    dec.u = u;
    dec.k = k;
    double off = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const bool in_peak = i < k && j < k;
            const bool in_tail = i >= k && j >= k;
            if (!in_peak && !in_tail) off += std::norm(d(i, j));
            if (in_peak) off += std::norm(d(i, j) - (i == j ? mu : cplx(0.0)));
        }
    dec.offblock_residual = std::sqrt(off);
    if (dec.offblock_residual > 1e-8 * scale)
        throw PeakNotAttained("decompose_at_peak: peak eigenspace is not reducing");

    dec.a1 = CMatrix(n - k);
    for (int i = k; i < n; ++i)
        for (int j = k; j < n; ++j) dec.a1(i - k, j - k) = d(i, j);
    return dec;
}

CMatrix reassemble(const Decomposition& d) {
    const int n = d.u.n();
    CMatrix block(n);
    for (int i = 0; i < d.k; ++i) block(i, i) = d.mu;
    for (int i = d.k; i < n; ++i)
        for (int j = d.k; j < n; ++j) block(i, j) = d.a1(i - d.k, j - d.k);
    return d.u.adjoint() * block * d.u;
}

LemmaDiskReport check_lemma_disk(const CMatrix& a1, cplx mu, double w, int m, double tol) {
    LemmaDiskReport rep;
    if (a1.n() == 0) {
        rep.holds = true;
        rep.worst_excess = -w;
        return rep;
    }
    const RangeApprox r = compute_range(a1, m);
    double worst = 0.0;
    for (const cplx& nu : r.boundary_points) worst = std::max(worst, std::abs(mu - nu));
    rep.worst_excess = worst - w;
    rep.holds = worst <= w + tol;
    return rep;
}

ClassificationReport theorem_hypotheses(const CMatrix& a, int m, double tol) {
    ClassificationReport rep;
    auto [psd, phase] = is_psd_multiple(a, tol);
    rep.is_psd_multiple = psd;
    rep.phase = phase;
    rep.normality_residual = normality_residual(a);
    rep.radii = radii(a, m, tol);

    const double scale = std::max(rep.radii.norm, 1e-30);
    const RangeApprox range = compute_range(a, m);

    // w-attaining boundary points, clustered
    std::vector<cplx> peaks;
    for (const cplx& p : range.boundary_points) {
        if (std::abs(p) < rep.radii.w - 1e-6 * scale) continue;
        bool dup = false;
        for (const cplx& q : peaks)
            if (std::abs(p - q) <= 1e-6 * scale) dup = true;
        if (!dup) peaks.push_back(p);
    }
    if (!peaks.empty()) {
        rep.w_attaining_mu = peaks.front();
        double best = 0.0;
        for (const cplx& p : peaks)
            if (std::abs(p) > best) {
                best = std::abs(p);
                rep.w_attaining_mu = p;
            }
    }

    const double eps_corner = 0.02;
    rep.corner_hypothesis = CornerHypothesis::Fails;
    for (const cplx& p : peaks) {
        const CornerReport cr = corner_support_lines(a, p, m, eps_corner);
        if (cr.count >= 2) {
            rep.corner_hypothesis = CornerHypothesis::Holds;
            rep.w_attaining_mu = p;
            break;
        }
        if (cr.width >= 0.5 * eps_corner) rep.corner_hypothesis = CornerHypothesis::Borderline;
    }

    const bool normal = rep.normality_residual <= std::max(tol, 1e-9);
    rep.polygon_case = normal; // finite spectrum is automatic for matrices

    rep.isolated_peak_case = false;
    if (normal) {
        const SpectrumSet spec = eig_general(a);
        const double r = spec.spectral_radius();
        const double gap_tol = 1e-6 * scale;
        // cluster distinct eigenvalues, then gap-test the peak-modulus ones
        std::vector<cplx> distinct;
        for (const cplx& v : spec.values) {
            bool dup = false;
            for (const cplx& q : distinct)
                if (std::abs(v - q) <= 1e-9 * scale) dup = true;
            if (!dup) distinct.push_back(v);
        }
        for (const cplx& v : distinct) {
            if (std::abs(v) < r - gap_tol) continue;
            double gap = std::numeric_limits<double>::infinity();
            for (const cplx& q : distinct)
                if (std::abs(v - q) > 1e-9 * scale) gap = std::min(gap, std::abs(v - q));
            if (gap >= gap_tol) {
                rep.isolated_peak_case = true;
                break;
            }
        }
    }
    return rep;
}

} // namespace wfield
