#pragma once

#include <span>
#include <vector>

#include "wfield/cmatrix.hpp"

namespace wfield {

/// Convex polygon in the complex plane, vertices CCW, no repeated point.
/// Degenerate cases are first-class: one vertex (a point) or two (a segment).
struct ConvexPolygon {
    std::vector<cplx> v;

    bool empty() const { return v.empty(); }
    std::size_t size() const { return v.size(); }
    /// Closed polyline copy (first vertex appended) for the edge kernels.
    std::vector<cplx> closed() const;
    double area() const;
    cplx centroid() const;
    double diameter() const;
    double support(double theta) const; // max Re(e^{-i theta} v)
};

ConvexPolygon convex_hull(std::span<const cplx> pts);

/// Intersect with the half-plane Re(conj(normal) z) <= h (Sutherland-Hodgman).
ConvexPolygon clip_halfplane(const ConvexPolygon& p, cplx normal, double h);

/// Distance from q to the polygon (0 when inside); and the nearest point.
double dist_point_polygon(cplx q, const ConvexPolygon& p);
cplx closest_point_polygon(cplx q, const ConvexPolygon& p);

/// True when q lies in the polygon inflated by tol.
bool point_in_polygon(cplx q, const ConvexPolygon& p, double tol);

/// max over vertices of p of the distance to q.
double hausdorff_directed(const ConvexPolygon& p, const ConvexPolygon& q);
double hausdorff(const ConvexPolygon& p, const ConvexPolygon& q);

/// Grid points with the given spacing lying inside the polygon. Always
/// includes the vertices; degenerate polygons are sampled along the segment.
std::vector<cplx> interior_samples(const ConvexPolygon& p, double spacing);

/// Convexity check for a CCW vertex list (cross-product signs).
bool is_convex_ccw(const ConvexPolygon& p, double tol);

} // namespace wfield
