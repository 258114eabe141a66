#include "pljacobi/forms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace pljacobi {

ScalarField ScalarField::sample(const SimplicialComplex& c,
                                const std::function<double(double, double)>& f) {
  std::vector<double> values(c.num_vertices());
  const auto pts = c.positions();
  for (std::size_t v = 0; v < values.size(); ++v) values[v] = f(pts[v].x, pts[v].y);
  return ScalarField(std::move(values));
}

OneForm OneForm::scaled(double a) const {
  std::vector<double> out(values_);
  for (double& y : out) y *= a;
  return OneForm(std::move(out));
}

OneForm coboundary(const ScalarField& f, const SimplicialComplex& c) {
  if (f.size() != c.num_vertices()) {
    throw Error(ErrorKind::BadArgument, "scalar field size does not match vertex count");
  }
  std::vector<double> y(c.num_edges());
  const auto edges = c.edges();
  for (std::size_t e = 0; e < y.size(); ++e) y[e] = f[edges[e].hi] - f[edges[e].lo];
  return OneForm(std::move(y));
}

namespace {

void require_planar(const SimplicialComplex& c) {
  if (c.dim() != 2) {
    throw Error(ErrorKind::DimensionUnsupported,
                "vector-field discretization is defined for plane complexes only");
  }
}

double midpoint_value(const Vec2& xu, const Vec2& xv, const Point& pu, const Point& pv) {
  const double mx = 0.5 * (xu.x + xv.x);
  const double my = 0.5 * (xu.y + xv.y);
  return mx * (pv.x - pu.x) + my * (pv.y - pu.y);
}

OneForm midpoint_from_vertex_vectors(const std::vector<Vec2>& at_vertex,
                                     const SimplicialComplex& c) {
  std::vector<double> y(c.num_edges());
  const auto edges = c.edges();
  const auto pts = c.positions();
  for (std::size_t e = 0; e < y.size(); ++e) {
    const Edge& uv = edges[e];
    y[e] = midpoint_value(at_vertex[uv.lo], at_vertex[uv.hi], pts[uv.lo], pts[uv.hi]);
  }
  return OneForm(std::move(y));
}

}  // namespace

OneForm discretize_midpoint(const VectorFieldFn& field, const SimplicialComplex& c) {
  require_planar(c);
  std::vector<Vec2> at_vertex(c.num_vertices());
  const auto pts = c.positions();
  for (std::size_t v = 0; v < at_vertex.size(); ++v) at_vertex[v] = field(pts[v].x, pts[v].y);
  return midpoint_from_vertex_vectors(at_vertex, c);
}

OneForm discretize_midpoint(const VectorSampleGrid& samples, const SimplicialComplex& c,
                            MidpointDiagnostics* diagnostics) {
  require_planar(c);
  std::vector<Vec2> at_vertex(c.num_vertices());
  const auto pts = c.positions();
  for (std::size_t v = 0; v < at_vertex.size(); ++v) {
    bool inexact = false;
    at_vertex[v] = samples.lookup(pts[v].x, pts[v].y, &inexact);
    if (inexact && diagnostics) diagnostics->inexact_vertices.push_back(static_cast<VertexId>(v));
  }
  return midpoint_from_vertex_vectors(at_vertex, c);
}

GaussRule gauss_legendre(int order) {
  if (order < 1) throw Error(ErrorKind::BadArgument, "quadrature order must be >= 1");
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int n = order;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

OneForm discretize_quadrature(const AnalyticForm& form, const SimplicialComplex& c, int order) {
  require_planar(c);
  const GaussRule rule = gauss_legendre(order);
  std::vector<double> y(c.num_edges());
  const auto edges = c.edges();
  const auto pts = c.positions();
  for (std::size_t e = 0; e < y.size(); ++e) {
    const Point& a = pts[edges[e].lo];
    const Point& b = pts[edges[e].hi];
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    double sum = 0.0;
    for (int q = 0; q < order; ++q) {
      const double t = 0.5 * (rule.nodes[q] + 1.0);
      const double x = a.x + t * dx;
      const double yy = a.y + t * dy;
      sum += rule.weights[q] * (form.P(x, yy) * dx + form.Q(x, yy) * dy);
    }
    y[e] = 0.5 * sum;
  }
  return OneForm(std::move(y));
}

// ---------------------------------------------------------------------------

VectorSampleGrid::VectorSampleGrid(double x0, double y0, double dx, double dy, int nx, int ny,
                                   std::vector<Vec2> samples)
    : x0_(x0), y0_(y0), dx_(dx), dy_(dy), nx_(nx), ny_(ny), samples_(std::move(samples)) {
  if (nx < 1 || ny < 1 || samples_.size() != static_cast<std::size_t>(nx) * ny) {
    throw Error(ErrorKind::BadArgument, "sample grid dimensions do not match sample count");
  }
  if ((nx > 1 && !(dx > 0.0)) || (ny > 1 && !(dy > 0.0))) {
    throw Error(ErrorKind::BadArgument, "sample grid steps must be positive");
  }
}

namespace {

// Distinct coordinates, merging values closer than `tol`.
std::vector<double> distinct_axis(std::vector<double> values, double tol) {
  std::sort(values.begin(), values.end());
  std::vector<double> out;
  for (double v : values)
    if (out.empty() || v - out.back() > tol) out.push_back(v);
  return out;
}

}  // namespace

VectorSampleGrid VectorSampleGrid::from_records(const std::vector<Record>& records) {
  if (records.empty()) throw Error(ErrorKind::BadFile, "vector sample file has no records");
  std::vector<double> xs, ys;
  for (const Record& r : records) {
    xs.push_back(r.x);
    ys.push_back(r.y);
  }
  const auto ux = distinct_axis(xs, kMatchTolerance);
  const auto uy = distinct_axis(ys, kMatchTolerance);
  const int nx = static_cast<int>(ux.size());
  const int ny = static_cast<int>(uy.size());
  const double dx = nx > 1 ? (ux.back() - ux.front()) / (nx - 1) : 1.0;
  const double dy = ny > 1 ? (uy.back() - uy.front()) / (ny - 1) : 1.0;
  auto regular = [](const std::vector<double>& u, double step) {
    for (std::size_t i = 0; i < u.size(); ++i)
      if (std::abs(u[i] - (u.front() + static_cast<double>(i) * step)) > 1e-6 * step) return false;
    return true;
  };
  if (!regular(ux, dx) || !regular(uy, dy)) {
    throw Error(ErrorKind::BadFile, "vector samples do not lie on a regular lattice");
  }
  if (records.size() != static_cast<std::size_t>(nx) * ny) {
    std::ostringstream msg;
    msg << "expected " << nx * ny << " samples for a " << nx << "x" << ny << " lattice, got "
        << records.size();
    throw Error(ErrorKind::BadFile, msg.str());
  }
  std::vector<Vec2> samples(records.size());
  std::vector<char> filled(records.size(), 0);
  for (const Record& r : records) {
    const int i = static_cast<int>(std::lround((r.x - ux.front()) / dx));
    const int j = static_cast<int>(std::lround((r.y - uy.front()) / dy));
    const std::size_t k = static_cast<std::size_t>(j) * nx + i;
    if (filled[k]) throw Error(ErrorKind::BadFile, "duplicate vector sample on the lattice");
    filled[k] = 1;
    samples[k] = {r.u, r.v};
  }
  return VectorSampleGrid(ux.front(), uy.front(), dx, dy, nx, ny, std::move(samples));
}

Vec2 VectorSampleGrid::lookup(double x, double y, bool* inexact) const {
  const double fi = nx_ > 1 ? (x - x0_) / dx_ : 0.0;
  const double fj = ny_ > 1 ? (y - y0_) / dy_ : 0.0;
  const long i = std::lround(fi);
  const long j = std::lround(fj);
  if (i < 0 || j < 0 || i >= nx_ || j >= ny_ || std::abs(fi - i) > 0.5 + 1e-9 ||
      std::abs(fj - j) > 0.5 + 1e-9) {
    std::ostringstream msg;
    msg << "no vector sample near (" << x << ", " << y << ")";
    throw Error(ErrorKind::SampleMissing, msg.str());
  }
  const double sx = x0_ + static_cast<double>(i) * dx_;
  const double sy = y0_ + static_cast<double>(j) * dy_;
  if (inexact)
    *inexact = std::abs(sx - x) > kMatchTolerance || std::abs(sy - y) > kMatchTolerance;
  return sample(static_cast<int>(i), static_cast<int>(j));
}

}  // namespace pljacobi
