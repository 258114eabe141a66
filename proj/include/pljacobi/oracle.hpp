#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pljacobi/forms.hpp"
#include "pljacobi/jacobi.hpp"
#include "pljacobi/mesh.hpp"

namespace pljacobi {

using PlaneFn = std::function<double(double, double)>;

/// Two analytic 1-forms F = P dx + Q dy and G = R dx + S dy.
struct AnalyticFormPair {
  AnalyticForm F;
  AnalyticForm G;
};

/// D(x, y) = P*S - Q*R; the smooth Jacobi set is its zero set.
PlaneFn determinant_field(const AnalyticFormPair& pair);

struct ContourSet {
  std::vector<std::vector<Vec2>> polylines;
  std::vector<bool> closed;
  BBox box;
  int resolution = 0;
  /// Cells whose four corner samples are exactly zero.
  std::size_t degenerate_cells = 0;

  std::size_t num_segments() const;
  bool empty() const { return polylines.empty(); }
};

/// Zero contour of `D` on a `resolution` x `resolution` cell grid over `box`.
///
/// Corners with D >= 0 count as inside. Crossings are placed by linear
/// interpolation along cell edges; saddle cells are split according to the
/// sign of D at the cell centre. Throws Error{BadArgument} if resolution < 8.
ContourSet marching_squares(const PlaneFn& D, const BBox& box, int resolution);

struct DistanceReport {
  std::vector<double> distances;  ///< per Jacobi edge, in JacobiSet order
  double median = 0.0;
  double mean = 0.0;
  double max = 0.0;
  double threshold = 0.0;
  std::size_t beyond_threshold = 0;

  double fraction_within() const {
    return distances.empty() ? 0.0
                             : 1.0 - static_cast<double>(beyond_threshold) / distances.size();
  }
};

/// Distance from each Jacobi edge midpoint to the nearest contour segment.
/// Throws Error{EmptyContour} when the contour has no segments.
DistanceReport distance_report(const JacobiSet& j, std::span<const Point> positions,
                               const ContourSet& contour, double threshold);

// ---------------------------------------------------------------------------
// Built-in field pairs

struct BuiltinPair {
  std::string name;
  AnalyticFormPair forms;
  /// Set when the forms are gradients of these scalar functions.
  std::optional<std::pair<PlaneFn, PlaneFn>> functions;
};

/// "fig2": f = ((x-1)^2+y^2)((x+1)^2+y^2), g = (x-1)^2+(y-1)^2 (as gradients)
/// "fig4": F = (y+1)dx + 2(x+1)dy,          G = (2x-3y)dx + (2x+3y)dy
/// "fig6": F = y(x^2+y^2+1)dx - x(x^2+y^2-1)dy, G = (2x-3y-6)dx + (2x-3y)dy
BuiltinPair builtin_pair(const std::string& name);
std::vector<std::string> builtin_pair_names();

/// Parses an arithmetic expression in x and y (+ - * / ^, parentheses,
/// sin cos tan exp log sqrt abs, constant pi). Throws Error{BadArgument}.
PlaneFn parse_expression(const std::string& text);

}  // namespace pljacobi
