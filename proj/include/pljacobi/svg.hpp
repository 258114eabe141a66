#pragma once

#include <string>

#include "pljacobi/jacobi.hpp"
#include "pljacobi/mesh.hpp"
#include "pljacobi/oracle.hpp"

namespace pljacobi {

struct SvgStyle {
  double width_px = 800.0;
  /// Meshes with more edges than this are not drawn.
  std::size_t mesh_edge_limit = 60000;
  bool draw_mesh = true;
  bool mark_odd_vertices = true;
  std::string mesh_color = "#d0d0d0";
  std::string contour_color = "#1a9641";
  std::string jacobi_color = "#d7191c";
};

/// SVG with the mesh (light), the contour (solid) and the Jacobi edges
/// (highlighted, stroke grows with multiplicity). The y axis points up; the
/// viewport is `view`, or the mesh bounds when `view` is null. Output is
/// byte-identical for identical inputs.
std::string export_svg(const SimplicialComplex& mesh, const JacobiSet* jacobi,
                       const ContourSet* contour, const SvgStyle& style = {},
                       const BBox* view = nullptr);

}  // namespace pljacobi
