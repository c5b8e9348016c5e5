#include "wfield/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace wfield {

namespace {

double offdiag_norm(const CMatrix& m) {
    double s = 0.0;
    const int n = m.n();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

// One complex Jacobi rotation zeroing m(p,q). Updates m in place and
// accumulates the rotation into v (columns are eigenvector candidates).
void jacobi_rotate(CMatrix& m, CMatrix& v, int p, int q) {
    const cplx g = m(p, q);
    const double ag = std::abs(g);
    if (ag == 0.0) return;
    const cplx phase = g / ag; // e^{i phi}
    const double alpha = m(p, p).real();
    const double beta = m(q, q).real();
    const double tau = (beta - alpha) / (2.0 * ag);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    // J = D R with D = diag(1, conj(phase)), R = [[c, s], [-s, c]];
    // columns of the 2x2 block: (c, -s*conj(phase)) and (s, c*conj(phase)).
    const cplx jpq_p = c, jpq_s = s;
    const cplx jq_p = -s * std::conj(phase), jq_c = c * std::conj(phase);

    const int n = m.n();
    // M <- M J (columns p, q)
    for (int i = 0; i < n; ++i) {
        const cplx mip = m(i, p), miq = m(i, q);
        m(i, p) = mip * jpq_p + miq * jq_p;
        m(i, q) = mip * jpq_s + miq * jq_c;
    }
    // M <- J* M (rows p, q)
    for (int j = 0; j < n; ++j) {
        const cplx mpj = m(p, j), mqj = m(q, j);
        m(p, j) = std::conj(jpq_p) * mpj + std::conj(jq_p) * mqj;
        m(q, j) = std::conj(jpq_s) * mpj + std::conj(jq_c) * mqj;
    }
    // V <- V J
    for (int i = 0; i < n; ++i) {
        const cplx vip = v(i, p), viq = v(i, q);
        v(i, p) = vip * jpq_p + viq * jq_p;
        v(i, q) = vip * jpq_s + viq * jq_c;
    }
    m(p, q) = 0.0;
    m(q, p) = 0.0;
    m(p, p) = cplx(m(p, p).real(), 0.0);
    m(q, q) = cplx(m(q, q).real(), 0.0);
}

} // namespace

std::vector<EigenPair> eig_hermitian(const CMatrix& h) {
    const int n = h.n();
    const double scale = h.frobenius_norm();
    if (n == 0) return {};
    {
        double dev = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) dev += std::norm(h(i, j) - std::conj(h(j, i)));
        if (std::sqrt(dev) > 1e-12 * std::max(scale, 1e-300) * 2.0)
            throw NonHermitianInput("eig_hermitian: input is not Hermitian");
    }

    CMatrix m = hermitian_part(h); // symmetrize exactly
    CMatrix v = CMatrix::identity(n);
    const double target = 1e-13 * scale;
    const double skip = target / std::max(1.0, static_cast<double>(n));

    bool converged = (scale == 0.0) || (offdiag_norm(m) <= target);
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q)
                if (std::abs(m(p, q)) > skip) jacobi_rotate(m, v, p, q);
        converged = offdiag_norm(m) <= target;
    }
    if (!converged) throw ConvergenceFailure("eig_hermitian: sweep cap exceeded");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return m(a, a).real() < m(b, b).real(); });

    std::vector<EigenPair> out(n);
    for (int k = 0; k < n; ++k) {
        out[k].value = m(order[k], order[k]).real();
        out[k].vector.resize(n);
        for (int i = 0; i < n; ++i) out[k].vector[i] = v(i, order[k]);
    }
    return out;
}

double operator_norm(const CMatrix& a) {
    if (a.n() == 0) return 0.0;
    const CMatrix ata = a.adjoint() * a;
    const auto ev = eig_hermitian(ata);
    return std::sqrt(std::max(0.0, ev.back().value));
}

double SpectrumSet::spectral_radius() const {
    double r = 0.0;
    for (const cplx& v : values) r = std::max(r, std::abs(v));
    return r;
}

double rank_one_defect(const CMatrix& b) {
    const int n = b.n();
    if (n == 0) return 0.0;
    const auto sv = eig_hermitian(b.adjoint() * b);
    const CVector& v = sv.back().vector;
    CVector u = b.apply(v);
    const double s1 = vec_norm(u);
    if (s1 < 1e-300) return b.frobenius_norm();
    for (cplx& z : u) z /= s1;
    CMatrix res = b;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) res(i, j) -= s1 * u[i] * std::conj(v[j]);
    return res.frobenius_norm();
}

namespace {

// Householder reduction to upper Hessenberg form, in place.
void hessenberg_reduce(CMatrix& h) {
    const int n = h.n();
    for (int k = 0; k + 2 < n; ++k) {
        double colnorm = 0.0;
        for (int i = k + 1; i < n; ++i) colnorm += std::norm(h(i, k));
        colnorm = std::sqrt(colnorm);
        if (colnorm == 0.0) continue;
        cplx x0 = h(k + 1, k);
        const cplx phase = (std::abs(x0) > 0.0) ? x0 / std::abs(x0) : cplx(1.0);
        const cplx alpha = -phase * colnorm;
        // v = x - alpha e1, normalized
        CVector v(n, 0.0);
        v[k + 1] = x0 - alpha;
        for (int i = k + 2; i < n; ++i) v[i] = h(i, k);
        double vn = vec_norm(std::span<const cplx>(v.data() + k + 1, n - k - 1));
        if (vn < 1e-300) continue;
        for (int i = k + 1; i < n; ++i) v[i] /= vn;
        // H <- (I - 2 v v*) H
        for (int j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (int i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
            s *= 2.0;
            for (int i = k + 1; i < n; ++i) h(i, j) -= s * v[i];
        }
        // H <- H (I - 2 v v*)
        for (int i = 0; i < n; ++i) {
            cplx s = 0.0;
            for (int j = k + 1; j < n; ++j) s += h(i, j) * v[j];
            s *= 2.0;
            for (int j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j]);
        }
        for (int i = k + 2; i < n; ++i) h(i, k) = 0.0;
        h(k + 1, k) = alpha;
    }
}

// Eigenvalue of [[a,b],[c,d]] closest to d (Wilkinson shift).
cplx wilkinson_shift(cplx a, cplx b, cplx c, cplx d) {
    const cplx tr = a + d;
    const cplx det = a * d - b * c;
    const cplx disc = std::sqrt(tr * tr - 4.0 * det);
    const cplx l1 = 0.5 * (tr + disc);
    const cplx l2 = 0.5 * (tr - disc);
    return (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
}

// Explicit single-shift QR step on the active Hessenberg block [lo, hi].
void qr_step(CMatrix& h, int lo, int hi, cplx shift) {
    const int n = h.n();
    struct Rot {
        cplx c;
        cplx s;
    };
    std::vector<Rot> rots(hi - lo);
    for (int k = lo; k <= hi; ++k) h(k, k) -= shift;
    // QR by Givens on the subdiagonal
    for (int k = lo; k < hi; ++k) {
        const cplx a = h(k, k), b = h(k + 1, k);
        const double r = std::sqrt(std::norm(a) + std::norm(b));
        Rot g;
        if (r == 0.0) {
            g = {1.0, 0.0};
        } else {
            g = {std::conj(a) / r, std::conj(b) / r};
        }
        rots[k - lo] = g;
        for (int j = k; j <= std::min(hi, n - 1); ++j) {
            const cplx t1 = h(k, j), t2 = h(k + 1, j);
            h(k, j) = g.c * t1 + g.s * t2;
            h(k + 1, j) = -std::conj(g.s) * t1 + std::conj(g.c) * t2;
        }
    }
    // R Q
    for (int k = lo; k < hi; ++k) {
        const Rot g = rots[k - lo];
        for (int i = lo; i <= std::min(k + 1, hi); ++i) {
            const cplx t1 = h(i, k), t2 = h(i, k + 1);
            h(i, k) = t1 * std::conj(g.c) + t2 * std::conj(g.s);
            h(i, k + 1) = -t1 * g.s + t2 * g.c;
        }
    }
    for (int k = lo; k <= hi; ++k) h(k, k) += shift;
}

// sigma_min estimate for a Hessenberg matrix shifted by lambda, via a Givens
// QR factorization and two steps of inverse iteration on R* R.
double sigma_min_hessenberg(const CMatrix& h0, cplx lambda, double scale) {
    const int n = h0.n();
    CMatrix r = h0;
    for (int k = 0; k < n; ++k) r(k, k) -= lambda;
    // QR: rotate away the subdiagonal; R overwrites the upper triangle.
    for (int k = 0; k + 1 < n; ++k) {
        const cplx a = r(k, k), b = r(k + 1, k);
        const double rad = std::sqrt(std::norm(a) + std::norm(b));
        if (rad == 0.0) continue;
        const cplx c = std::conj(a) / rad, s = std::conj(b) / rad;
        for (int j = k; j < n; ++j) {
            const cplx t1 = r(k, j), t2 = r(k + 1, j);
            r(k, j) = c * t1 + s * t2;
            r(k + 1, j) = -std::conj(s) * t1 + std::conj(c) * t2;
        }
    }
    const double floor = 1e-15 * std::max(scale, 1e-300);
    for (int k = 0; k < n; ++k)
        if (std::abs(r(k, k)) < floor) r(k, k) = floor;

    CVector x(n, cplx(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
    double sigma = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 2; ++iter) {
        // solve R* y = x (forward), then R z = y (backward)
        CVector y(n);
        for (int i = 0; i < n; ++i) {
            cplx s = x[i];
            for (int k = 0; k < i; ++k) s -= std::conj(r(k, i)) * y[k];
            y[i] = s / std::conj(r(i, i));
        }
        CVector z(n);
        for (int i = n - 1; i >= 0; --i) {
            cplx s = y[i];
            for (int k = i + 1; k < n; ++k) s -= r(i, k) * z[k];
            z[i] = s / r(i, i);
        }
        const double zn = vec_norm(z);
        if (!(zn > 0.0) || !std::isfinite(zn)) return 0.0;
        sigma = 1.0 / std::sqrt(zn);
        for (int i = 0; i < n; ++i) z[i] /= zn;
        x = std::move(z);
    }
    return sigma;
}

} // namespace

SpectrumSet eig_general(const CMatrix& a) {
    const int n = a.n();
    SpectrumSet out;
    out.tol = 1e-10;
    if (n == 0) return out;
    if (!a.is_finite()) throw InvalidInput("eig_general: non-finite entries");
    const double scale = a.frobenius_norm();
    if (scale == 0.0) {
        out.values.assign(n, 0.0);
        out.residuals.assign(n, 0.0);
        return out;
    }

    CMatrix h = a;
    hessenberg_reduce(h);
    const CMatrix h0 = h; // kept for residual estimation

    const double eps = std::numeric_limits<double>::epsilon();
    int hi = n - 1;
    int iter = 0, stall = 0;
    const int cap = 100 * n;
    while (hi > 0) {
        // deflate negligible subdiagonals
        int lo = hi;
        while (lo > 0) {
            const double sub = std::abs(h(lo, lo - 1));
            if (sub <= eps * (std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo)) + eps * scale)) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            --hi;
            stall = 0;
            continue;
        }
        if (++iter > cap) throw ConvergenceFailure("eig_general: QR iteration cap exceeded");
        cplx shift;
        if (++stall % 12 == 0) {
            // exceptional shift to break symmetric stalls
            shift = h(hi, hi) + cplx(std::abs(h(hi, hi - 1)), std::abs(h(hi - 1, hi - 2 >= 0 ? hi - 2 : 0)));
        } else {
            shift = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
        }
        qr_step(h, lo, hi, shift);
    }

    out.values.resize(n);
    for (int i = 0; i < n; ++i) out.values[i] = h(i, i);
    std::sort(out.values.begin(), out.values.end(), [](cplx x, cplx y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    out.residuals.resize(n);
    for (int i = 0; i < n; ++i)
        out.residuals[i] = sigma_min_hessenberg(h0, out.values[i], scale) / scale;
    return out;
}

double multiset_distance(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    const int n = static_cast<int>(a.size());
    std::vector<bool> ua(n, false), ub(n, false);
    double worst = 0.0;
    for (int round = 0; round < n; ++round) {
        double best = std::numeric_limits<double>::infinity();
        int bi = -1, bj = -1;
        for (int i = 0; i < n; ++i) {
            if (ua[i]) continue;
            for (int j = 0; j < n; ++j) {
                if (ub[j]) continue;
                const double d = std::abs(a[i] - b[j]);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        ua[bi] = ub[bj] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

CVector lu_solve(const CMatrix& a, std::span<const cplx> b) {
    const int n = a.n();
    if (static_cast<int>(b.size()) != n) throw InvalidInput("lu_solve: dimension mismatch");
    CMatrix lu = a;
    std::vector<int> piv(n);
    std::iota(piv.begin(), piv.end(), 0);
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
            std::swap(piv[k], piv[p]);
        }
        const cplx d = lu(k, k);
        if (std::abs(d) < 1e-300) throw NumericError("lu_solve: singular matrix");
        for (int i = k + 1; i < n; ++i) {
            const cplx f = lu(i, k) / d;
            lu(i, k) = f;
            for (int j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
        }
    }
    CVector x(n);
    for (int i = 0; i < n; ++i) x[i] = b[piv[i]];
    for (int i = 1; i < n; ++i)
        for (int k = 0; k < i; ++k) x[i] -= lu(i, k) * x[k];
    for (int i = n - 1; i >= 0; --i) {
        for (int k = i + 1; k < n; ++k) x[i] -= lu(i, k) * x[k];
        x[i] /= lu(i, i);
    }
    return x;
}

CMatrix inverse(const CMatrix& a) {
    const int n = a.n();
    CMatrix inv(n);
    CVector e(n, 0.0);
    for (int j = 0; j < n; ++j) {
        e[j] = 1.0;
        const CVector col = lu_solve(a, e);
        for (int i = 0; i < n; ++i) inv(i, j) = col[i];
        e[j] = 0.0;
    }
    return inv;
}

CMatrix complete_basis(const std::vector<CVector>& cols, int n) {
    std::vector<CVector> basis = cols;
    for (int c = 0; static_cast<int>(basis.size()) < n && c < n; ++c) {
        CVector v(n, 0.0);
        v[c] = 1.0;
        for (const CVector& u : basis) {
            const cplx proj = inner(v, u);
            for (int i = 0; i < n; ++i) v[i] -= proj * u[i];
        }
        const double nv = vec_norm(v);
        if (nv > 1e-8) {
            for (cplx& z : v) z /= nv;
            // second orthogonalization pass for stability
            for (const CVector& u : basis) {
                const cplx proj = inner(v, u);
                for (int i = 0; i < n; ++i) v[i] -= proj * u[i];
            }
            normalize(v);
            basis.push_back(std::move(v));
        }
    }
    if (static_cast<int>(basis.size()) != n)
        throw NumericError("complete_basis: could not complete the basis");
    CMatrix q(n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) q(i, j) = basis[j][i];
    return q;
}

} // namespace wfield
