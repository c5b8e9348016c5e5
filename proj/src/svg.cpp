#include "wfield/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace wfield {

namespace {

constexpr int kSize = 800;
constexpr double kPad = 48.0;

struct Frame {
    double cx, cy, scale;

    double x(double re) const { return kSize / 2.0 + (re - cx) * scale; }
    double y(double im) const { return kSize / 2.0 - (im - cy) * scale; }
};

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

// Equal-aspect frame holding every point, inflated 1.1x.
Frame fit(std::span<const cplx> pts) {
    double xlo = -1, xhi = 1, ylo = -1, yhi = 1;
    if (!pts.empty()) {
        xlo = xhi = pts[0].real();
        ylo = yhi = pts[0].imag();
        for (const cplx& p : pts) {
            xlo = std::min(xlo, p.real());
            xhi = std::max(xhi, p.real());
            ylo = std::min(ylo, p.imag());
            yhi = std::max(yhi, p.imag());
        }
    }
    const double cx = 0.5 * (xlo + xhi), cy = 0.5 * (ylo + yhi);
    const double half = std::max({0.5 * (xhi - xlo), 0.5 * (yhi - ylo), 1e-6}) * 1.1;
    return {cx, cy, (kSize / 2.0 - kPad) / half};
}

void open_svg(std::ostringstream& s) {
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n"
      << "<rect width=\"" << kSize << "\" height=\"" << kSize << "\" fill=\"white\"/>\n";
}

void grid_and_axes(std::ostringstream& s, const Frame& f) {
    const double half = (kSize / 2.0 - kPad) / f.scale;
    const int lo_x = static_cast<int>(std::floor(f.cx - half));
    const int hi_x = static_cast<int>(std::ceil(f.cx + half));
    for (int t = lo_x; t <= hi_x; ++t) {
        const double px = f.x(t);
        if (px < 0 || px > kSize) continue;
        s << "<line x1=\"" << num(px) << "\" y1=\"0\" x2=\"" << num(px) << "\" y2=\"" << kSize
          << "\" stroke=\"#eeeeee\"/>\n";
    }
    const int lo_y = static_cast<int>(std::floor(f.cy - half));
    const int hi_y = static_cast<int>(std::ceil(f.cy + half));
    for (int t = lo_y; t <= hi_y; ++t) {
        const double py = f.y(t);
        if (py < 0 || py > kSize) continue;
        s << "<line x1=\"0\" y1=\"" << num(py) << "\" x2=\"" << kSize << "\" y2=\"" << num(py)
          << "\" stroke=\"#eeeeee\"/>\n";
    }
    s << "<line x1=\"0\" y1=\"" << num(f.y(0)) << "\" x2=\"" << kSize << "\" y2=\"" << num(f.y(0))
      << "\" stroke=\"#999999\"/>\n";
    s << "<line x1=\"" << num(f.x(0)) << "\" y1=\"0\" x2=\"" << num(f.x(0)) << "\" y2=\"" << kSize
      << "\" stroke=\"#999999\"/>\n";
}

void polyline(std::ostringstream& s, const Frame& f, std::span<const cplx> pts, const char* color,
              bool close) {
    if (pts.empty()) return;
    s << "<path d=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
        s << (i == 0 ? "M" : "L") << num(f.x(pts[i].real())) << " " << num(f.y(pts[i].imag()));
    if (close) s << "Z";
    s << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
}

void marker(std::ostringstream& s, const Frame& f, cplx p, const char* color, double r) {
    s << "<circle cx=\"" << num(f.x(p.real())) << "\" cy=\"" << num(f.y(p.imag())) << "\" r=\""
      << num(r) << "\" fill=\"" << color << "\"/>\n";
}

} // namespace

std::string svg_range(const RangeApprox& range, const SpectrumSet& spectrum) {
    std::vector<cplx> all = range.boundary_points;
    all.insert(all.end(), spectrum.values.begin(), spectrum.values.end());
    const Frame f = fit(all);
    std::ostringstream s;
    open_svg(s);
    grid_and_axes(s, f);
    polyline(s, f, range.outer.v, "#bbbbbb", true);
    polyline(s, f, range.boundary_points, "#1f6fb2", true);
    for (const cplx& ev : spectrum.values) marker(s, f, ev, "#c23b21", 4.0);
    s << "</svg>\n";
    return s.str();
}

std::string svg_product(std::span<const cplx> cloud, const ContainmentReport& report,
                        std::optional<cplx> highlight) {
    std::vector<cplx> all(cloud.begin(), cloud.end());
    for (const auto& ev : report.eigen_verdicts) all.push_back(ev.lambda);
    if (highlight) all.push_back(*highlight);
    const Frame f = fit(all);
    std::ostringstream s;
    open_svg(s);
    grid_and_axes(s, f);
    for (const cplx& p : cloud)
        s << "<circle cx=\"" << num(f.x(p.real())) << "\" cy=\"" << num(f.y(p.imag()))
          << "\" r=\"1.2\" fill=\"#1f6fb2\" fill-opacity=\"0.25\"/>\n";
    for (const auto& ev : report.eigen_verdicts) {
        const char* color = ev.verdict.verdict == Verdict::In    ? "#2c8a43"
                            : ev.verdict.verdict == Verdict::Out ? "#c23b21"
                                                                 : "#c2a021";
        marker(s, f, ev.lambda, color, 5.0);
    }
    if (highlight) {
        const double px = f.x(highlight->real()), py = f.y(highlight->imag());
        s << "<path d=\"M" << num(px - 8) << " " << num(py) << "L" << num(px + 8) << " " << num(py)
          << "M" << num(px) << " " << num(py - 8) << "L" << num(px) << " " << num(py + 8)
          << "\" stroke=\"#c23b21\" stroke-width=\"2\"/>\n";
    }
    s << "</svg>\n";
    return s.str();
}

} // namespace wfield
