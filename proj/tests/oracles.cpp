#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace oracle {

std::vector<cplx> char_poly(const CMatrix& a) {
    const int n = a.n();
    std::vector<cplx> c(n);
    CMatrix m = a;
    cplx ck = -m.trace();
    c[0] = ck;
    for (int k = 2; k <= n; ++k) {
        CMatrix shifted = m;
        for (int i = 0; i < n; ++i) shifted(i, i) += c[k - 2];
        m = a * shifted;
        ck = -m.trace() / static_cast<double>(k);
        c[k - 1] = ck;
    }
    return c;
}

std::vector<cplx> durand_kerner(const std::vector<cplx>& coeffs, int max_iter) {
    const int n = static_cast<int>(coeffs.size());
    if (n == 0) return {};
    // scale so roots are O(1): Cauchy bound
    double radius = 0.0;
    for (const cplx& c : coeffs) radius = std::max(radius, std::abs(c));
    radius = 1.0 + radius;
    std::vector<cplx> scaled(coeffs);
    double pw = radius;
    for (int i = 0; i < n; ++i) {
        scaled[i] /= pw;
        pw *= radius;
    }
    auto eval = [&](cplx x) {
        cplx r = 1.0;
        for (int i = 0; i < n; ++i) r = r * x + scaled[i];
        return r;
    };
    std::vector<cplx> z(n);
    const cplx seed(0.4, 0.9);
    cplx p = 1.0;
    for (int i = 0; i < n; ++i) {
        p *= seed;
        z[i] = p;
    }
    for (int iter = 0; iter < max_iter; ++iter) {
        double step = 0.0;
        for (int i = 0; i < n; ++i) {
            cplx denom = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= z[i] - z[j];
            if (std::abs(denom) < 1e-300) denom = 1e-300;
            const cplx delta = eval(z[i]) / denom;
            z[i] -= delta;
            step = std::max(step, std::abs(delta));
        }
        if (step < 1e-14) break;
    }
    for (cplx& r : z) r *= radius;
    return z;
}

std::vector<cplx> eig_oracle(const CMatrix& a) { return durand_kerner(char_poly(a)); }

std::vector<cplx> cover_polygon(const wfield::ConvexPolygon& p, int count) {
    std::vector<cplx> out = p.v;
    if (p.v.empty()) return out;
    const std::size_t n = p.v.size();
    // edge subdivision
    const int per_edge = std::max<int>(1, count / (4 * std::max<std::size_t>(n, 1)));
    for (std::size_t i = 0; i < n; ++i) {
        const cplx a0 = p.v[i], b0 = p.v[(i + 1) % n];
        for (int t = 1; t <= per_edge; ++t)
            out.push_back(a0 + (static_cast<double>(t) / (per_edge + 1)) * (b0 - a0));
        if (n <= 2 && i + 1 == n) break;
    }
    // interior grid
    double xlo = p.v[0].real(), xhi = xlo, ylo = p.v[0].imag(), yhi = ylo;
    for (const cplx& z : p.v) {
        xlo = std::min(xlo, z.real());
        xhi = std::max(xhi, z.real());
        ylo = std::min(ylo, z.imag());
        yhi = std::max(yhi, z.imag());
    }
    const int side = std::max(2, static_cast<int>(std::sqrt(static_cast<double>(count))));
    for (int i = 0; i <= side; ++i)
        for (int j = 0; j <= side; ++j) {
            const cplx z(xlo + (xhi - xlo) * i / side, ylo + (yhi - ylo) * j / side);
            if (wfield::dist_point_polygon(z, p) == 0.0) out.push_back(z);
        }
    return out;
}

double brute_min_product_dist(const std::vector<cplx>& zs, const std::vector<cplx>& ws,
                              cplx lambda) {
    double best = 1e300;
    for (const cplx& z : zs)
        for (const cplx& w : ws) best = std::min(best, std::abs(z * w - lambda));
    return best;
}

} // namespace oracle
