#include "wfield/numrange.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "wfield/eig.hpp"

namespace wfield {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::In: return "In";
        case Verdict::Out: return "Out";
        default: return "Borderline";
    }
}

SupportPoint support_value(const CMatrix& a, double theta) {
    if (a.n() == 0) throw InvalidInput("support_value: empty matrix");
    const auto pairs = eig_hermitian(hermitian_part(a, theta));
    SupportPoint sp;
    sp.h = pairs.back().value;
    sp.x = pairs.back().vector;
    sp.boundary = quadratic_form(a, sp.x);
    return sp;
}

namespace {

struct SupportLine {
    double theta;
    double h;
    cplx contact;
};

} // namespace

RangeApprox compute_range(const CMatrix& a, int m) {
    if (m < 8) throw InvalidInput("compute_range: need m >= 8");
    RangeApprox r;
    r.m = m;
    r.angles.resize(m);
    r.support_values.resize(m);
    r.boundary_points.resize(m);
    const double step = 2.0 * std::numbers::pi / m;
    std::vector<SupportLine> lines;
    lines.reserve(2 * m);
    double scale = 1e-300;
    for (int k = 0; k < m; ++k) {
        const double theta = k * step;
        const SupportPoint sp = support_value(a, theta);
        r.angles[k] = theta;
        r.support_values[k] = sp.h;
        r.boundary_points[k] = sp.boundary;
        lines.push_back({theta, sp.h, sp.boundary});
        scale = std::max(scale, std::abs(sp.boundary));
    }

    // Between grid angles a support-line switch across a flat boundary piece
    // lets the circumscribed polygon overshoot by up to |jump| * dtheta / 4.
    // Refine angles until every junction is within the O(scale/m^2) budget.
    const double target = 2.0 * scale / (static_cast<double>(m) * m);
    std::vector<SupportLine> extra;
    const std::function<void(const SupportLine&, const SupportLine&, int)> refine =
        [&](const SupportLine& lo, const SupportLine& hi, int depth) {
            if (depth >= 14) return;
            if (std::abs(hi.contact - lo.contact) * (hi.theta - lo.theta) <= 4.0 * target) return;
            const double tm = 0.5 * (lo.theta + hi.theta);
            const SupportPoint sp = support_value(a, tm);
            const SupportLine mid{tm, sp.h, sp.boundary};
            extra.push_back(mid);
            refine(lo, mid, depth + 1);
            refine(mid, hi, depth + 1);
        };
    for (int k = 0; k < m; ++k) {
        SupportLine next = lines[(k + 1) % m];
        if (k + 1 == m) next.theta += 2.0 * std::numbers::pi;
        refine(lines[k], next, 0);
    }
    lines.insert(lines.end(), extra.begin(), extra.end());
    std::sort(lines.begin(), lines.end(),
              [](const SupportLine& x, const SupportLine& y) { return x.theta < y.theta; });

    // outer: intersections of consecutive tangent lines (well-conditioned:
    // the determinant is sin of the angle gap), then the hull
    std::vector<cplx> vertices;
    vertices.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const SupportLine& l1 = lines[i];
        SupportLine l2 = lines[(i + 1) % lines.size()];
        if (i + 1 == lines.size()) l2.theta += 2.0 * std::numbers::pi;
        const double det = std::sin(l2.theta - l1.theta);
        if (std::abs(det) < 1e-14) continue;
        const double x = (l1.h * std::sin(l2.theta) - l2.h * std::sin(l1.theta)) / det;
        const double y = (l2.h * std::cos(l1.theta) - l1.h * std::cos(l2.theta)) / det;
        vertices.emplace_back(x, y);
    }
    r.outer = convex_hull(vertices);

    // inner: hull of true range points, refined contacts included
    std::vector<cplx> members = r.boundary_points;
    for (const SupportLine& l : extra) members.push_back(l.contact);
    r.inner = convex_hull(members);

    r.hausdorff_gap = hausdorff_directed(r.outer, r.inner);
    return r;
}

namespace {

// Golden-section maximization of f over [lo, hi] (f smooth, locally concave).
double golden_max(const std::function<double(double)>& f, double lo, double hi, int iters) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    double best = std::max(f1, f2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
        best = std::max({best, f1, f2});
    }
    return best;
}

} // namespace

RadiiReport radii(const CMatrix& a, int m, double tol) {
    if (m < 64) throw InvalidInput("radii: need m >= 64");
    RadiiReport rep;
    rep.tol = tol;
    if (a.n() == 0) return rep;

    const double step = 2.0 * std::numbers::pi / m;
    double w = -std::numeric_limits<double>::infinity();
    int kbest = 0;
    for (int k = 0; k < m; ++k) {
        const auto pairs = eig_hermitian(hermitian_part(a, k * step));
        const double h = pairs.back().value;
        if (h > w) {
            w = h;
            kbest = k;
        }
    }
    // one refinement pass over the bracketing interval; h is smooth in theta
    auto h_of = [&](double th) { return eig_hermitian(hermitian_part(a, th)).back().value; };
    w = std::max(w, golden_max(h_of, (kbest - 1) * step, (kbest + 1) * step, 40));

    rep.w = w;
    rep.r = eig_general(a).spectral_radius();
    rep.norm = operator_norm(a);
    rep.radialoid = std::abs(rep.r - rep.norm) <= tol;
    return rep;
}

Verdict contains_point(const RangeApprox& r, cplx p, double tol) {
    if (dist_point_polygon(p, r.inner) <= tol) return Verdict::In;
    double viol = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < r.m; ++k) {
        const cplx w = std::polar(1.0, -r.angles[k]);
        viol = std::max(viol, (w * p).real() - r.support_values[k]);
    }
    if (viol > tol) return Verdict::Out;
    return Verdict::Borderline;
}

CornerReport corner_support_lines(const CMatrix& a, cplx mu, int m, double eps_corner,
                                  double eps_lin) {
    if (m < 8) throw InvalidInput("corner_support_lines: need m >= 8");
    const double scale = std::max(operator_norm(a), 1e-30);
    if (eps_lin <= 0.0) eps_lin = 1e-7 * scale;
    const double step = 2.0 * std::numbers::pi / m;
    // curvature allowance: a smooth boundary point may miss the support
    // equality by O(scale / m^2) between grid angles
    const double allowance = std::max(10.0 * scale / (static_cast<double>(m) * m), 2.0 * eps_lin);

    int attained = 0;
    double min_gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k < m; ++k) {
        const double theta = k * step;
        const double h = eig_hermitian(hermitian_part(a, theta)).back().value;
        const double gap = h - (std::polar(1.0, -theta) * mu).real();
        min_gap = std::min(min_gap, gap);
        if (gap <= eps_lin) ++attained;
    }
    CornerReport rep;
    rep.width = attained * step;
    if (min_gap > allowance) {
        rep.count = 0; // interior point
    } else if (rep.width >= eps_corner) {
        rep.count = 2;
    } else {
        rep.count = 1;
    }
    return rep;
}

RangeRefiner::RangeRefiner(const CMatrix& a, const RangeApprox& base)
    : a_(a), poly_(base.inner) {
    scale_ = 1.0;
    for (const cplx& p : base.boundary_points) scale_ = std::max(scale_, std::abs(p));
}

cplx RangeRefiner::project(cplx q, double rel_tol) {
    cplx p = closest_point_polygon(q, poly_);
    for (int iter = 0; iter < 24; ++iter) {
        const cplx d = q - p;
        const double dist = std::abs(d);
        if (dist <= rel_tol * scale_) return p; // q is (numerically) a member
        const double theta = std::atan2(d.imag(), d.real());
        const SupportPoint sp = support_value(a_, theta);
        // support gap between the polygon and the true range along theta
        const double gap = sp.h - poly_.support(theta);
        if (gap <= 1e-13 * scale_) break;
        std::vector<cplx> pts = poly_.v;
        pts.push_back(sp.boundary);
        poly_ = convex_hull(pts);
        const cplx p2 = closest_point_polygon(q, poly_);
        if (std::abs(p2 - p) <= 1e-15 * scale_) {
            p = p2;
            break;
        }
        p = p2;
    }
    return p;
}

} // namespace wfield
