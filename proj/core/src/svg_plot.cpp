#include "parkable/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "parkable/illumination.hpp"
#include "parkable/symmetry.hpp"

namespace parkable {

namespace {

constexpr double kCanvas = 800.0;
constexpr double kMargin = 60.0;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

struct Mapper {
  double lo_x, lo_y, scale;

  Mapper(const std::vector<Vec>& pts) {
    double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
    for (const Vec& p : pts) {
      min_x = std::min(min_x, p.x());
      max_x = std::max(max_x, p.x());
      min_y = std::min(min_y, p.dim > 1 ? p.y() : 0.0);
      max_y = std::max(max_y, p.dim > 1 ? p.y() : 0.0);
    }
    double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
    scale = (kCanvas - 2.0 * kMargin) / span;
    lo_x = 0.5 * (min_x + max_x);
    lo_y = 0.5 * (min_y + max_y);
  }

  std::pair<double, double> map(const Vec& p) const {
    double x = kCanvas / 2.0 + (p.x() - lo_x) * scale;
    double y = kCanvas / 2.0 - ((p.dim > 1 ? p.y() : 0.0) - lo_y) * scale;  // y up
    return {x, y};
  }
};

std::string svg_header() {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
         "viewBox=\"0 0 800 800\">\n<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
}

std::string polygon_path(const std::vector<Vec>& loop, const Mapper& m) {
  std::string d;
  for (size_t i = 0; i < loop.size(); ++i) {
    auto [x, y] = m.map(loop[i]);
    d += (i == 0 ? "M" : "L") + fmt(x) + " " + fmt(y) + " ";
  }
  d += "Z";
  return d;
}

}  // namespace

std::string render_section_svg(const ConvexBody& b, const Vec& normal, double offset,
                               const Tolerances& tol) {
  SectionResult sec = section(b, AffineSubspace::hyperplane(normal, offset), tol);
  if (sec.empty) throw std::invalid_argument("plane misses the body");
  if (sec.body.dim != 2 || sec.body.vertices.size() < 2)
    throw std::invalid_argument("section is not a polygon");

  // 2D hull vertices are stored in counter-clockwise loop order.
  Mapper m(sec.body.vertices);
  std::string svg = svg_header();
  svg += "<path d=\"" + polygon_path(sec.body.vertices, m) +
         "\" fill=\"#dce9f5\" stroke=\"#2d5d8c\" stroke-width=\"2\"/>\n";

  SymmetryReport rep = symmetry_center(sec.body, tol, 256);
  if (rep.center) {
    auto [cx, cy] = m.map(*rep.center);
    svg += "<circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) +
           "\" r=\"6\" fill=\"#c23b22\"/>\n";
    svg += "<text x=\"20\" y=\"30\" font-family=\"monospace\" font-size=\"16\">center residual " +
           fmt(rep.residual) + "</text>\n";
  } else {
    svg += "<text x=\"20\" y=\"30\" font-family=\"monospace\" font-size=\"16\">no center (residual " +
           fmt(rep.residual) + ")</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string render_silhouette_svg(const ConvexBody& b, const Vec& direction,
                                  const Tolerances& tol) {
  Silhouette sil = silhouette(b, direction, tol);

  Mapper m(sil.shadow.vertices);
  std::string svg = svg_header();
  svg += "<path d=\"" + polygon_path(sil.shadow.vertices, m) +
         "\" fill=\"#f2f2f2\" stroke=\"#555555\" stroke-width=\"1.5\"/>\n";

  // Height range along the direction over silhouette vertices.
  double h_min = 1e300, h_max = -1e300;
  for (int id : sil.vertex_ids) {
    double h = dot(b.vertices[id], sil.direction);
    h_min = std::min(h_min, h);
    h_max = std::max(h_max, h);
  }
  double span = std::max(h_max - h_min, 1e-12);
  auto shade = [&](double h) {
    int g = static_cast<int>(40 + 180 * (h - h_min) / span);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", g, g, 255 - g / 3);
    return std::string(buf);
  };

  for (const auto& [i, j] : sil.edge_list) {
    auto [x1, y1] = m.map(sil.chart.to_chart(b.vertices[i]));
    auto [x2, y2] = m.map(sil.chart.to_chart(b.vertices[j]));
    double h = 0.5 * (dot(b.vertices[i], sil.direction) + dot(b.vertices[j], sil.direction));
    svg += "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x2) + "\" y2=\"" +
           fmt(y2) + "\" stroke=\"" + shade(h) + "\" stroke-width=\"2.5\"/>\n";
  }
  for (int id : sil.vertex_ids) {
    auto [x, y] = m.map(sil.chart.to_chart(b.vertices[id]));
    double h = dot(b.vertices[id], sil.direction);
    svg += "<circle cx=\"" + fmt(x) + "\" cy=\"" + fmt(y) + "\" r=\"3\" fill=\"" + shade(h) +
           "\"/>\n";
  }
  svg += "<text x=\"20\" y=\"30\" font-family=\"monospace\" font-size=\"16\">silhouette faces: " +
         std::to_string(sil.vertex_ids.size()) + " vertices, " +
         std::to_string(sil.edge_list.size()) + " edges, " +
         std::to_string(sil.facet_ids.size()) + " facets</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace parkable
