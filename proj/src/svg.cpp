#include "pljacobi/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

namespace pljacobi {

namespace {

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

BBox mesh_bounds(const SimplicialComplex& mesh) {
  if (mesh.num_vertices() == 0) return {};
  BBox b{mesh.position(0).x, mesh.position(0).y, mesh.position(0).x, mesh.position(0).y};
  for (const Point& p : mesh.positions())
    b = {std::min(b.xmin, p.x), std::min(b.ymin, p.y), std::max(b.xmax, p.x), std::max(b.ymax, p.y)};
  return b;
}

}  // namespace

std::string export_svg(const SimplicialComplex& mesh, const JacobiSet* jacobi,
                       const ContourSet* contour, const SvgStyle& style, const BBox* view) {
  BBox box = view ? *view : mesh_bounds(mesh);
  if (!(box.xmax > box.xmin)) box.xmax = box.xmin + 1.0;
  if (!(box.ymax > box.ymin)) box.ymax = box.ymin + 1.0;
  const double scale = style.width_px / (box.xmax - box.xmin);
  const double height_px = (box.ymax - box.ymin) * scale;
  auto X = [&](double x) { return fixed((x - box.xmin) * scale); };
  auto Y = [&](double y) { return fixed((box.ymax - y) * scale); };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(style.width_px) +
         "\" height=\"" + fixed(height_px) + "\" viewBox=\"0 0 " + fixed(style.width_px) + " " +
         fixed(height_px) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (style.draw_mesh && mesh.num_edges() <= style.mesh_edge_limit) {
    svg += "<g id=\"mesh\" stroke=\"" + style.mesh_color + "\" stroke-width=\"0.5\">\n";
    for (const Edge& e : mesh.edges()) {
      const Point& a = mesh.position(e.lo);
      const Point& b = mesh.position(e.hi);
      svg += "<line x1=\"" + X(a.x) + "\" y1=\"" + Y(a.y) + "\" x2=\"" + X(b.x) + "\" y2=\"" +
             Y(b.y) + "\"/>\n";
    }
    svg += "</g>\n";
  }

  if (contour) {
    svg += "<g id=\"contour\" fill=\"none\" stroke=\"" + style.contour_color +
           "\" stroke-width=\"1.5\">\n";
    for (const auto& line : contour->polylines) {
      if (line.size() < 2) continue;
      svg += "<polyline points=\"";
      for (std::size_t k = 0; k < line.size(); ++k)
        svg += (k ? " " : "") + X(line[k].x) + "," + Y(line[k].y);
      svg += "\"/>\n";
    }
    svg += "</g>\n";
  }

  if (jacobi) {
    svg += "<g id=\"jacobi\" stroke=\"" + style.jacobi_color + "\" stroke-linecap=\"round\">\n";
    for (const JacobiEdge& e : jacobi->edges()) {
      const Point& a = mesh.position(e.u);
      const Point& b = mesh.position(e.v);
      svg += "<line x1=\"" + X(a.x) + "\" y1=\"" + Y(a.y) + "\" x2=\"" + X(b.x) + "\" y2=\"" +
             Y(b.y) + "\" stroke-width=\"" + fixed(1.5 * e.multiplicity) + "\"/>\n";
    }
    svg += "</g>\n";
    if (style.mark_odd_vertices) {
      const DegreeReport degrees = degree_report(*jacobi);
      svg += "<g id=\"odd-vertices\" fill=\"black\">\n";
      for (VertexId v : degrees.odd_vertices) {
        const Point& p = mesh.position(v);
        svg += "<circle cx=\"" + X(p.x) + "\" cy=\"" + Y(p.y) + "\" r=\"2\"/>\n";
      }
      svg += "</g>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace pljacobi
