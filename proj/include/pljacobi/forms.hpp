#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pljacobi/mesh.hpp"

namespace pljacobi {

/// Real value per vertex.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(std::vector<double> values) : values_(std::move(values)) {}

  double operator[](VertexId v) const { return values_[static_cast<std::size_t>(v)]; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }

  /// Samples `f(x, y)` at every vertex position.
  static ScalarField sample(const SimplicialComplex& c,
                            const std::function<double(double, double)>& f);

 private:
  std::vector<double> values_;
};

/// Discrete 1-form: one value per edge in canonical (lo -> hi) orientation.
/// Reading against the orientation negates, so F(uv) == -F(vu) exactly.
class OneForm {
 public:
  OneForm() = default;
  explicit OneForm(std::vector<double> canonical) : values_(std::move(canonical)) {}

  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }

  /// Value on edge `e` in canonical orientation.
  double operator[](EdgeId e) const { return values_[static_cast<std::size_t>(e)]; }

  /// Value on the oriented edge u -> v.
  double at(const SimplicialComplex& c, VertexId u, VertexId v) const {
    const EdgeId e = c.edge_id(u, v);
    const double y = values_[static_cast<std::size_t>(e)];
    return u < v ? y : -y;
  }

  /// Scaled copy, a * F.
  OneForm scaled(double a) const;

 private:
  std::vector<double> values_;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

using VectorFieldFn = std::function<Vec2(double, double)>;

/// Analytic 1-form P dx + Q dy.
struct AnalyticForm {
  std::function<double(double, double)> P;
  std::function<double(double, double)> Q;

  VectorFieldFn as_vector_field() const {
    return [p = P, q = Q](double x, double y) { return Vec2{p(x, y), q(x, y)}; };
  }
};

/// Vector samples on a regular plane lattice (row-major, x fastest).
class VectorSampleGrid {
 public:
  VectorSampleGrid(double x0, double y0, double dx, double dy, int nx, int ny,
                   std::vector<Vec2> samples);

  /// Infers the lattice from scattered `x y u v` records. The records must
  /// fill a regular lattice exactly once; otherwise Error{BadFile}.
  struct Record {
    double x, y, u, v;
  };
  static VectorSampleGrid from_records(const std::vector<Record>& records);

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  double x0() const noexcept { return x0_; }
  double y0() const noexcept { return y0_; }
  double dx() const noexcept { return dx_; }
  double dy() const noexcept { return dy_; }
  const Vec2& sample(int i, int j) const { return samples_[static_cast<std::size_t>(j) * nx_ + i]; }

  /// Sample matched to (x, y): an exact lattice hit within `kMatchTolerance`,
  /// else the nearest sample with `*inexact` set. Points more than half a step
  /// outside the lattice throw Error{SampleMissing}.
  Vec2 lookup(double x, double y, bool* inexact) const;

  static constexpr double kMatchTolerance = 1e-9;

 private:
  double x0_, y0_, dx_, dy_;
  int nx_, ny_;
  std::vector<Vec2> samples_;
};

/// Y(uv) = f(v) - f(u).
OneForm coboundary(const ScalarField& f, const SimplicialComplex& c);

/// Y(uv) = <(X_u + X_v) / 2, v - u> with X evaluated at vertex positions.
OneForm discretize_midpoint(const VectorFieldFn& field, const SimplicialComplex& c);

struct MidpointDiagnostics {
  std::vector<VertexId> inexact_vertices;  ///< matched to the nearest sample
};

/// Midpoint rule over a sampled field; see VectorSampleGrid::lookup.
OneForm discretize_midpoint(const VectorSampleGrid& samples, const SimplicialComplex& c,
                            MidpointDiagnostics* diagnostics = nullptr);

/// Gauss-Legendre rule with `order` nodes for the straight-segment line
/// integral of P dx + Q dy. Exact for integrands of degree <= 2*order - 1
/// along the edge.
OneForm discretize_quadrature(const AnalyticForm& form, const SimplicialComplex& c, int order);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int order);

}  // namespace pljacobi
