#include "wfield/productset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include "wfield/eig.hpp"
#include "wfield/kernels.hpp"
#include "wfield/rng.hpp"

namespace wfield {

const char* to_string(ContainmentReport::Overall o) {
    switch (o) {
        case ContainmentReport::Overall::Contained: return "Contained";
        case ContainmentReport::Overall::Violated: return "Violated";
        default: return "Inconclusive";
    }
}

namespace {

double max_abs_vertex(const ConvexPolygon& p) {
    double r = 0.0;
    for (const cplx& v : p.v) r = std::max(r, std::abs(v));
    return r;
}

struct Cell {
    cplx center;
    double half; // half side length
    double lb;   // certified lower bound of g over cell /\ W(A)
};

struct CellCmp {
    bool operator()(const Cell& a, const Cell& b) const { return a.lb > b.lb; }
};

} // namespace

ProductSetCtx::ProductSetCtx(CMatrix a, CMatrix b, int m)
    : ProductSetCtx(std::move(a), RangeApprox{}, std::move(b), m) {
    ra_ = compute_range(a_, m);
    if (ra_.outer.empty()) ra_.outer = ra_.inner;
    closed_outer_a_ = ra_.outer.closed();
    wa_outer_ = max_abs_vertex(ra_.outer);
    diam_a_ = std::max(ra_.outer.diameter(), 1e-12 * (1.0 + wa_outer_));
}

ProductSetCtx::ProductSetCtx(CMatrix a, RangeApprox ra, CMatrix b, int m_b)
    : a_(std::move(a)), b_(std::move(b)), ra_(std::move(ra)) {
    rb_ = compute_range(b_, m_b);
    // A degenerate range can lose its outer polygon to clipping roundoff;
    // the inner hull is then the faithful enclosure.
    if (ra_.outer.empty()) ra_.outer = ra_.inner;
    if (rb_.outer.empty()) rb_.outer = rb_.inner;
    closed_outer_a_ = ra_.outer.closed();
    closed_outer_b_ = rb_.outer.closed();
    closed_inner_b_ = rb_.inner.closed();
    wa_outer_ = max_abs_vertex(ra_.outer);
    wb_outer_ = max_abs_vertex(rb_.outer);
    diam_a_ = std::max(ra_.outer.diameter(), 1e-12 * (1.0 + wa_outer_));
}

ProductVerdict ProductSetCtx::membership(cplx lambda, double tol, int grid,
                                         std::span<const cplx> z_hints, bool cert_only) const {
    if (tol <= 0.0) throw InvalidInput("membership: tol must be positive");
    if (grid < 32) throw InvalidInput("membership: grid must be >= 32");
    const double tol_in = tol * (1.0 + std::abs(lambda));
    const double prod_scale = std::max(wa_outer_ * wb_outer_, 1e-30);

    ProductVerdict out;

    // lambda = 0: the product vanishes iff one factor set reaches 0.
    if (std::abs(lambda) <= 1e-15 * prod_scale) {
        const Verdict va = contains_point(ra_, 0.0, tol);
        const Verdict vb = contains_point(rb_, 0.0, tol);
        if (va == Verdict::In || vb == Verdict::In) {
            const cplx z = closest_point_polygon(0.0, ra_.inner);
            const cplx bb = closest_point_polygon(0.0, rb_.inner);
            const double f = std::abs(z * bb - lambda);
            if (f <= tol_in) {
                out.verdict = Verdict::In;
                out.witness = {z, bb};
                out.distance_estimate = f;
                return out;
            }
        } else if (va == Verdict::Out && vb == Verdict::Out) {
            const double da = dist_point_polygon(0.0, ra_.outer);
            const double db = dist_point_polygon(0.0, rb_.outer);
            const double margin = da * db;
            if (margin > tol) {
                out.verdict = Verdict::Out;
                out.certificate_margin = margin;
                out.distance_estimate =
                    dist_point_polygon(0.0, ra_.inner) * dist_point_polygon(0.0, rb_.inner);
                return out;
            }
        }
        // fall through to the generic search
    }

    RangeRefiner refine_a(a_, ra_);
    RangeRefiner refine_b(b_, rb_);
    const double tiny_a = 1e-12 * (1.0 + wa_outer_);
    const double tiny_b = 1e-12 * (1.0 + wb_outer_);

    double best_f = std::numeric_limits<double>::infinity();
    std::pair<cplx, cplx> best_pair;

    auto polish = [&](cplx z0) {
        cplx z = closest_point_polygon(z0, ra_.inner);
        cplx bb = 0.0;
        double prev = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 40; ++it) {
            if (std::abs(z) <= tiny_a) {
                // a vanishing z only helps when lambda itself is tiny
                bb = closest_point_polygon(0.0, rb_.inner);
                const double f = std::abs(z * bb - lambda);
                if (f < best_f) {
                    best_f = f;
                    best_pair = {z, bb};
                }
                return;
            }
            bb = refine_b.project(lambda / z);
            double f = std::abs(z * bb - lambda);
            if (f < best_f) {
                best_f = f;
                best_pair = {z, bb};
            }
            if (best_f <= 0.25 * tol_in) return;
            if (std::abs(bb) <= tiny_b) return;
            z = refine_a.project(lambda / bb);
            f = std::abs(z * bb - lambda);
            if (f < best_f) {
                best_f = f;
                best_pair = {z, bb};
            }
            if (best_f <= 0.25 * tol_in) return;
            if (f > prev * (1.0 - 1e-4)) return; // stalled
            prev = f;
        }
    };

    if (!cert_only) {
        // starting points: hints, a coarse sweep of true boundary points
        std::vector<std::pair<double, cplx>> starts;
        auto add_start = [&](cplx z) {
            const double g = kernels::scaled_polygon_dist(z, closed_inner_b_, lambda);
            starts.push_back({g, z});
        };
        for (const cplx& z : z_hints) add_start(closest_point_polygon(z, ra_.inner));
        const int stride = std::max(1, ra_.m / 90);
        for (int k = 0; k < ra_.m; k += stride) add_start(ra_.boundary_points[k]);
        add_start(ra_.inner.centroid());
        std::sort(starts.begin(), starts.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        const int tries = std::min<int>(3 + static_cast<int>(z_hints.size()), starts.size());
        for (int t = 0; t < tries && best_f > 0.25 * tol_in; ++t) polish(starts[t].second);
        if (best_f <= tol_in) {
            out.verdict = Verdict::In;
            out.witness = best_pair;
            out.distance_estimate = best_f;
            return out;
        }
    }

    // Out certification: quadtree branch-and-bound over W(A) with the
    // Lipschitz bound g(z) >= g(z0) - |z - z0| * max|W(B)|.
    const double lips = std::max(wb_outer_, 1e-30);
    double best_ub = std::numeric_limits<double>::infinity();
    cplx best_z = ra_.inner.centroid();

    double xlo = closed_outer_a_[0].real(), xhi = xlo;
    double ylo = closed_outer_a_[0].imag(), yhi = ylo;
    for (const cplx& v : closed_outer_a_) {
        xlo = std::min(xlo, v.real());
        xhi = std::max(xhi, v.real());
        ylo = std::min(ylo, v.imag());
        yhi = std::max(yhi, v.imag());
    }
    const double span = std::max({xhi - xlo, yhi - ylo, 1e-12 * (1.0 + wa_outer_)});
    const cplx bbox_center(0.5 * (xlo + xhi), 0.5 * (ylo + yhi));

    auto eval_cell = [&](cplx center, double half) -> std::optional<Cell> {
        // discard cells fully outside the outer enclosure of W(A)
        const double da = kernels::scaled_polygon_dist(1.0, closed_outer_a_, center);
        const double rad = half * std::numbers::sqrt2;
        if (da > rad) return std::nullopt;
        const double g = kernels::scaled_polygon_dist(center, closed_outer_b_, lambda);
        // upper bound from a point certainly inside the enclosure; thin sets
        // almost never contain a raw cell center
        if (da == 0.0) {
            if (g < best_ub) {
                best_ub = g;
                best_z = center;
            }
        } else {
            const cplx zin = closest_point_polygon(center, ra_.outer);
            const double gin = kernels::scaled_polygon_dist(zin, closed_outer_b_, lambda);
            if (gin < best_ub) {
                best_ub = gin;
                best_z = zin;
            }
        }
        return Cell{center, half, g - rad * lips};
    };

    std::priority_queue<Cell, std::vector<Cell>, CellCmp> heap;
    {
        const int g0 = 16;
        const double h0 = 0.5 * span / g0;
        for (int i = 0; i < g0; ++i)
            for (int j = 0; j < g0; ++j) {
                const cplx c = bbox_center + cplx((i - g0 / 2 + 0.5) * 2.0 * h0,
                                                  (j - g0 / 2 + 0.5) * 2.0 * h0);
                if (auto cell = eval_cell(c, h0)) heap.push(*cell);
            }
    }

    const double size_floor = span * 1e-12;
    const long eval_budget = 300000;
    long evals = 256;
    bool certified = false;
    double margin = -std::numeric_limits<double>::infinity();
    while (!heap.empty()) {
        const Cell top = heap.top();
        const bool tight =
            !std::isfinite(best_ub) ||
            top.lb >= best_ub - std::max(1e-3 * best_ub, 1e-12 * (1.0 + std::abs(lambda)));
        if (top.lb > tol && tight) {
            certified = true;
            margin = top.lb;
            break;
        }
        if (best_ub <= tol) break; // some admissible z already reaches lambda
        if (top.half < size_floor || evals > eval_budget) break;
        heap.pop();
        const double h2 = 0.5 * top.half;
        for (int sx = -1; sx <= 1; sx += 2)
            for (int sy = -1; sy <= 1; sy += 2) {
                const cplx c = top.center + cplx(sx * h2, sy * h2);
                if (auto cell = eval_cell(c, h2)) heap.push(*cell);
                ++evals;
            }
    }
    if (heap.empty() && !certified) {
        // every cell was pruned as outside-W(A); degenerate but certifiable
        certified = true;
        margin = kernels::scaled_polygon_dist(bbox_center, closed_outer_b_, lambda) -
                 (0.5 * span * std::numbers::sqrt2 + diam_a_) * lips;
    }

    if (certified && margin > tol) {
        out.verdict = Verdict::Out;
        out.certificate_margin = margin;
        out.distance_estimate = std::isfinite(best_ub) ? best_ub : margin;
        return out;
    }

    if (!cert_only) {
        polish(best_z);
        if (best_f <= tol_in) {
            out.verdict = Verdict::In;
            out.witness = best_pair;
            out.distance_estimate = best_f;
            return out;
        }
    }

    out.verdict = Verdict::Borderline;
    out.distance_estimate = std::isfinite(best_ub) ? best_ub : best_f;
    return out;
}

ProductVerdict product_membership(const CMatrix& a, const CMatrix& b, cplx lambda, double tol,
                                  int grid) {
    return ProductSetCtx(a, b).membership(lambda, tol, grid);
}

ContainmentReport containment_check(const CMatrix& a, const CMatrix& b, double tol, int grid,
                                    int m) {
    if (a.n() != b.n()) throw InvalidInput("containment_check: dimension mismatch");
    ProductSetCtx ctx(a, b, m);
    const SpectrumSet spec = eig_general(a * b);
    ContainmentReport rep;
    bool all_in = true, any_out = false;
    for (const cplx& lambda : spec.values) {
        ProductVerdict v = ctx.membership(lambda, tol, grid);
        if (v.verdict != Verdict::In) all_in = false;
        if (v.verdict == Verdict::Out) {
            any_out = true;
            rep.max_violation_distance = std::max(rep.max_violation_distance, v.distance_estimate);
        }
        rep.eigen_verdicts.push_back({lambda, std::move(v)});
    }
    rep.overall = any_out  ? ContainmentReport::Overall::Violated
                  : all_in ? ContainmentReport::Overall::Contained
                           : ContainmentReport::Overall::Inconclusive;
    return rep;
}

ConvexityProbe product_convexity_probe(const CMatrix& a, const CMatrix& b, int samples,
                                       double tol, int grid) {
    if (samples < 100) throw InvalidInput("product_convexity_probe: need samples >= 100");
    ProductSetCtx ctx(a, b);
    const auto& bp_a = ctx.range_a().boundary_points;
    const auto& bp_b = ctx.range_b().boundary_points;

    ConvexityProbe probe;
    auto check_mid = [&](cplx z1, cplx b1, cplx z2, cplx b2) {
        const cplx mid = 0.5 * (z1 * b1 + z2 * b2);
        const cplx hints[] = {z1, z2, 0.5 * (z1 + z2)};
        const ProductVerdict v = ctx.membership(mid, tol, grid, hints);
        ++probe.midpoints_checked;
        if (v.verdict == Verdict::Out) {
            probe.convex = false;
            probe.worst_midpoint_gap = std::max(probe.worst_midpoint_gap, v.certificate_margin);
        }
    };

    // Phase 1: midpoints between extreme product points; non-convexity, when
    // present, shows up between hull vertices of the product cloud.
    const int stride = std::max(1, ctx.range_a().m / 48);
    std::vector<cplx> cloud;
    std::vector<std::pair<cplx, cplx>> factors;
    for (std::size_t i = 0; i < bp_a.size(); i += stride)
        for (std::size_t j = 0; j < bp_b.size(); j += stride) {
            cloud.push_back(bp_a[i] * bp_b[j]);
            factors.push_back({bp_a[i], bp_b[j]});
        }
    const ConvexPolygon hull = convex_hull(cloud);
    std::vector<std::pair<cplx, cplx>> hull_factors;
    for (const cplx& hv : hull.v) {
        for (std::size_t k = 0; k < cloud.size(); ++k)
            if (cloud[k] == hv) {
                hull_factors.push_back(factors[k]);
                break;
            }
    }
    for (std::size_t i = 0; i < hull_factors.size() && probe.midpoints_checked < samples; ++i)
        for (std::size_t j = i + 1; j < hull_factors.size() && probe.midpoints_checked < samples;
             ++j)
            check_mid(hull_factors[i].first, hull_factors[i].second, hull_factors[j].first,
                      hull_factors[j].second);

    // Phase 2: random member pairs, fixed stream
    Rng rng(0x77AB32F1u + static_cast<std::uint64_t>(samples));
    while (probe.midpoints_checked < samples) {
        const cplx z1 = bp_a[static_cast<std::size_t>(rng.uniform() * bp_a.size()) % bp_a.size()];
        const cplx z2 = bp_a[static_cast<std::size_t>(rng.uniform() * bp_a.size()) % bp_a.size()];
        const cplx b1 = bp_b[static_cast<std::size_t>(rng.uniform() * bp_b.size()) % bp_b.size()];
        const cplx b2 = bp_b[static_cast<std::size_t>(rng.uniform() * bp_b.size()) % bp_b.size()];
        check_mid(z1, b1, z2, b2);
    }
    return probe;
}

std::vector<cplx> sample_product_set(const CMatrix& a, const CMatrix& b, int density) {
    if (density < 16) throw InvalidInput("sample_product_set: need density >= 16");
    ProductSetCtx ctx(a, b);
    auto members = [&](const RangeApprox& r) {
        std::vector<cplx> s;
        const int stride = std::max(1, r.m / density);
        for (int k = 0; k < r.m; k += stride) s.push_back(r.boundary_points[k]);
        const double diam = std::max(r.inner.diameter(), 1e-12);
        const double spacing = diam / std::sqrt(static_cast<double>(density));
        for (const cplx& z : interior_samples(r.inner, spacing)) s.push_back(z);
        return s;
    };
    const std::vector<cplx> sa = members(ctx.range_a());
    const std::vector<cplx> sb = members(ctx.range_b());
    std::vector<cplx> cloud;
    cloud.reserve(sa.size() * sb.size());
    for (const cplx& z : sa)
        for (const cplx& w : sb) cloud.push_back(z * w);
    return cloud;
}

} // namespace wfield
