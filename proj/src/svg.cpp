#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "subtraj/io.hpp"

namespace subtraj {

namespace {

const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
                          "#bcbd22", "#7f7f7f"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

struct Mapper {
  double minx, miny, scale, height;
  double x(double v) const { return (v - minx) * scale + 20.0; }
  double y(double v) const { return height - ((v - miny) * scale + 20.0); }
};

void polyline(std::ostringstream& out, const PolygonalCurve& c,
              const Mapper& map, const std::string& attrs,
              double t_lo = 0.0, double t_hi = 1.0) {
  out << "<polyline " << attrs << " fill=\"none\" points=\"";
  const PolygonalCurve piece =
      (t_lo == 0.0 && t_hi == 1.0) ? c : c.subcurve(t_lo, t_hi);
  for (std::size_t i = 0; i < piece.size(); ++i) {
    if (i) out << ' ';
    out << fmt(map.x(piece.vertex(i)[0])) << ',' << fmt(map.y(piece.vertex(i)[1]));
  }
  out << "\"/>\n";
}

}  // namespace

std::string render_svg(const PolygonalCurve& p, const BreakpointSet& bps,
                       const ResultDocument& doc) {
  if (p.dim() != 2)
    throw std::invalid_argument(
        "svg output supports 2-d trajectories only (got dim " +
        std::to_string(p.dim()) + ")");
  double minx = std::numeric_limits<double>::infinity(), maxx = -minx;
  double miny = minx, maxy = -minx;
  auto grow = [&](const PolygonalCurve& c) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      minx = std::min(minx, c.vertex(i)[0]);
      maxx = std::max(maxx, c.vertex(i)[0]);
      miny = std::min(miny, c.vertex(i)[1]);
      maxy = std::max(maxy, c.vertex(i)[1]);
    }
  };
  grow(p);
  for (const auto& c : doc.centers) grow(c);
  const double span = std::max({maxx - minx, maxy - miny, 1e-9});
  const double scale = 760.0 / span;
  const double width = (maxx - minx) * scale + 40.0;
  const double height = (maxy - miny) * scale + 40.0;
  const Mapper map{minx, miny, scale, height};

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width)
      << "\" height=\"" << fmt(height) << "\" viewBox=\"0 0 " << fmt(width)
      << ' ' << fmt(height) << "\">\n";

  // cover intervals tinted by assigned center, under the trajectory
  for (const auto& iv : doc.intervals) {
    const char* color = kPalette[iv.center % kPaletteSize];
    std::ostringstream attrs;
    attrs << "class=\"interval\" data-from=\"" << fmt(iv.t_i)
          << "\" data-to=\"" << fmt(iv.t_j) << "\" data-center=\""
          << iv.center << "\" stroke=\"" << color
          << "\" stroke-width=\"7\" stroke-opacity=\"0.35\"";
    polyline(out, p, map, attrs.str(), iv.t_i, iv.t_j);
  }
  polyline(out, p, map, "class=\"trajectory\" stroke=\"#333333\" stroke-width=\"1.5\"");
  for (std::size_t w = 1; w <= bps.count(); ++w) {
    const Point pt = p.point_at(bps.value(w));
    out << "<circle class=\"breakpoint\" cx=\"" << fmt(map.x(pt[0]))
        << "\" cy=\"" << fmt(map.y(pt[1])) << "\" r=\"2.5\" fill=\"#333333\"/>\n";
  }
  for (std::size_t c = 0; c < doc.centers.size(); ++c) {
    std::ostringstream attrs;
    attrs << "class=\"center\" data-index=\"" << c << "\" stroke=\""
          << kPalette[c % kPaletteSize] << "\" stroke-width=\"3\"";
    if (doc.centers[c].size() == 1) {
      const PointView pt = doc.centers[c].vertex(0);
      out << "<circle class=\"center\" data-index=\"" << c << "\" cx=\""
          << fmt(map.x(pt[0])) << "\" cy=\"" << fmt(map.y(pt[1]))
          << "\" r=\"4\" fill=\"" << kPalette[c % kPaletteSize] << "\"/>\n";
    } else {
      polyline(out, doc.centers[c], map, attrs.str());
    }
  }
  out << "</svg>\n";
  return out.str();
}

void emit_svg(const PolygonalCurve& p, const BreakpointSet& bps,
              const ResultDocument& doc, const std::string& path) {
  const std::string body = render_svg(p, bps, doc);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << body;
}

}  // namespace subtraj
