#include "wfield/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wfield/kernels.hpp"

namespace wfield {

namespace {

double cross(cplx o, cplx a, cplx b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

double dist_point_segment(cplx q, cplx a, cplx b) {
    const cplx u = b - a;
    const double uu = std::norm(u);
    if (uu == 0.0) return std::abs(q - a);
    double t = ((q.real() - a.real()) * u.real() + (q.imag() - a.imag()) * u.imag()) / uu;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(q - (a + t * u));
}

cplx closest_point_segment(cplx q, cplx a, cplx b) {
    const cplx u = b - a;
    const double uu = std::norm(u);
    if (uu == 0.0) return a;
    double t = ((q.real() - a.real()) * u.real() + (q.imag() - a.imag()) * u.imag()) / uu;
    t = std::clamp(t, 0.0, 1.0);
    return a + t * u;
}

} // namespace

std::vector<cplx> ConvexPolygon::closed() const {
    std::vector<cplx> c = v;
    if (!c.empty()) c.push_back(c.front());
    return c;
}

double ConvexPolygon::area() const {
    const std::size_t n = v.size();
    if (n < 3) return 0.0;
    double a = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx& p = v[i];
        const cplx& q = v[(i + 1) % n];
        a += p.real() * q.imag() - q.real() * p.imag();
    }
    return 0.5 * a;
}

cplx ConvexPolygon::centroid() const {
    if (v.empty()) return 0.0;
    cplx s = 0.0;
    for (const cplx& p : v) s += p;
    return s / static_cast<double>(v.size());
}

double ConvexPolygon::diameter() const {
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            d = std::max(d, std::abs(v[i] - v[j]));
    return d;
}

double ConvexPolygon::support(double theta) const {
    if (v.empty()) return -std::numeric_limits<double>::infinity();
    return kernels::support_max(v, std::polar(1.0, theta)).value;
}

ConvexPolygon convex_hull(std::span<const cplx> pts) {
    std::vector<cplx> p(pts.begin(), pts.end());
    std::sort(p.begin(), p.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    p.erase(std::unique(p.begin(), p.end()), p.end());
    const std::size_t n = p.size();
    if (n <= 2) return {p};
    std::vector<cplx> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) { // lower chain
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p[i]) <= 0.0) --k;
        hull[k++] = p[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) { // upper chain
        while (k >= lower && cross(hull[k - 2], hull[k - 1], p[i]) <= 0.0) --k;
        hull[k++] = p[i];
    }
    hull.resize(k - 1);
    return {hull};
}

ConvexPolygon clip_halfplane(const ConvexPolygon& poly, cplx normal, double h) {
    const std::size_t n = poly.v.size();
    if (n == 0) return poly;
    auto val = [&](cplx z) { return z.real() * normal.real() + z.imag() * normal.imag() - h; };
    std::vector<cplx> out;
    out.reserve(n + 2);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx a = poly.v[i];
        const cplx b = poly.v[(i + 1) % n];
        const double va = val(a), vb = val(b);
        if (va <= 0.0) out.push_back(a);
        if ((va < 0.0 && vb > 0.0) || (va > 0.0 && vb < 0.0)) {
            const double t = va / (va - vb);
            out.push_back(a + t * (b - a));
        }
        if (n == 1) break; // a point has no edges
    }
    // collapse near-duplicate vertices introduced by clipping
    std::vector<cplx> dedup;
    const double eps = 1e-14 * (1.0 + std::abs(h)) + 1e-300;
    for (const cplx& z : out) {
        if (dedup.empty() || std::abs(z - dedup.back()) > eps) dedup.push_back(z);
    }
    while (dedup.size() > 1 && std::abs(dedup.front() - dedup.back()) <= eps) dedup.pop_back();
    return {dedup};
}

double dist_point_polygon(cplx q, const ConvexPolygon& p) {
    const std::size_t n = p.v.size();
    if (n == 0) return std::numeric_limits<double>::infinity();
    if (n == 1) return std::abs(q - p.v[0]);
    if (n == 2) return dist_point_segment(q, p.v[0], p.v[1]);
    bool inside = true;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const cplx a = p.v[i], b = p.v[(i + 1) % n];
        if (cross(a, b, q) < 0.0) inside = false;
        best = std::min(best, dist_point_segment(q, a, b));
    }
    return inside ? 0.0 : best;
}

cplx closest_point_polygon(cplx q, const ConvexPolygon& p) {
    const std::size_t n = p.v.size();
    if (n == 0) return q;
    if (n == 1) return p.v[0];
    if (n == 2) return closest_point_segment(q, p.v[0], p.v[1]);
    bool inside = true;
    double best = std::numeric_limits<double>::infinity();
    cplx bp = p.v[0];
    for (std::size_t i = 0; i < n; ++i) {
        const cplx a = p.v[i], b = p.v[(i + 1) % n];
        if (cross(a, b, q) < 0.0) inside = false;
        const cplx c = closest_point_segment(q, a, b);
        const double d = std::abs(q - c);
        if (d < best) {
            best = d;
            bp = c;
        }
    }
    return inside ? q : bp;
}

bool point_in_polygon(cplx q, const ConvexPolygon& p, double tol) {
    return dist_point_polygon(q, p) <= tol;
}

double hausdorff_directed(const ConvexPolygon& p, const ConvexPolygon& q) {
    double d = 0.0;
    for (const cplx& z : p.v) d = std::max(d, dist_point_polygon(z, q));
    return d;
}

double hausdorff(const ConvexPolygon& p, const ConvexPolygon& q) {
    return std::max(hausdorff_directed(p, q), hausdorff_directed(q, p));
}

std::vector<cplx> interior_samples(const ConvexPolygon& p, double spacing) {
    std::vector<cplx> out = p.v;
    if (p.v.empty() || spacing <= 0.0) return out;
    if (p.v.size() == 2) {
        const cplx a = p.v[0], b = p.v[1];
        const int steps = std::max(1, static_cast<int>(std::abs(b - a) / spacing));
        for (int i = 1; i < steps; ++i)
            out.push_back(a + (static_cast<double>(i) / steps) * (b - a));
        return out;
    }
    double xlo = p.v[0].real(), xhi = xlo, ylo = p.v[0].imag(), yhi = ylo;
    for (const cplx& z : p.v) {
        xlo = std::min(xlo, z.real());
        xhi = std::max(xhi, z.real());
        ylo = std::min(ylo, z.imag());
        yhi = std::max(yhi, z.imag());
    }
    for (double x = xlo; x <= xhi; x += spacing)
        for (double y = ylo; y <= yhi; y += spacing) {
            const cplx z(x, y);
            if (dist_point_polygon(z, p) == 0.0) out.push_back(z);
        }
    return out;
}

bool is_convex_ccw(const ConvexPolygon& p, double tol) {
    const std::size_t n = p.v.size();
    if (n < 3) return true;
    for (std::size_t i = 0; i < n; ++i) {
        if (cross(p.v[i], p.v[(i + 1) % n], p.v[(i + 2) % n]) < -tol) return false;
    }
    return true;
}

} // namespace wfield
