#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pljacobi/forms.hpp"
#include "pljacobi/mesh.hpp"

namespace pljacobi {

// ---------------------------------------------------------------------------
// Local edge tests
//
// For an oriented edge u -> v and a link vertex w, a spoke holds the values of
// both forms on u -> w and v -> w.  All membership decisions use the
// denominator-free quantity
//
//     sgn(G(uv)) * (G(uv) * (F(uw) + F(vw)) - F(uv) * (G(uw) + G(vw)))
//
// which equals |G(uv)| * (H(uw) + H(vw)) with H = F + lambda* G.  It is
// bitwise invariant under u <-> v and flips by a common sign under F <-> G.

struct LinkSpoke {
  double F_uw = 0.0;
  double F_vw = 0.0;
  double G_uw = 0.0;
  double G_vw = 0.0;
};

/// lambda* = F(uv) / G(vu), or nullopt when G(uv) == 0.
std::optional<double> lambda_star(double F_uv, double G_uv);

/// |G(uv)| * (H(uw) + H(vw)). Requires G_uv != 0.
double scaled_spoke_sum(double F_uv, double G_uv, const LinkSpoke& s);

/// h(w) = (H(uw) + H(vw)) / 2 evaluated with the explicit lambda*.
double link_height(double F_uv, double G_uv, const LinkSpoke& s);

struct EdgeVerdict {
  int multiplicity = 0;
  bool epsilon_triggered = false;
  /// A link value was exactly zero (2D: a zero sum; 3D: a tie-break was used).
  bool degenerate = false;
};

/// 2D test: multiplicity 1 iff the two spoke sums have the same strict sign,
/// or epsilon > 0 and either |H(ua)+H(va)| or |H(ub)+H(vb)| is below epsilon.
EdgeVerdict edge_multiplicity_2d(double F_uv, double G_uv, const LinkSpoke& a,
                                 const LinkSpoke& b, double epsilon);

/// Number of negative-to-positive transitions around a cyclic sign pattern
/// (entries are -1 or +1), reduced to |beta0 - 1|.
int cycle_multiplicity(std::span<const int> signs);

/// 3D test on the cyclic link a_0 ... a_{k-1} of u -> v.
///
/// `heights` are any positive multiple of the link heights. A zero height is
/// read as negative when the link vertex id is below min(u, v), else positive.
EdgeVerdict edge_multiplicity_3d(std::span<const double> heights,
                                 std::span<const VertexId> link, VertexId u, VertexId v);

// ---------------------------------------------------------------------------
// Whole-complex assembly

struct EdgeTestResult {
  EdgeId edge = -1;
  std::optional<double> lambda_star;
  std::vector<double> link_values;  ///< h(w) per link vertex, link order
  int multiplicity = 0;
  bool epsilon_triggered = false;
  bool degenerate = false;
};

/// Full diagnostic test of one edge (canonical orientation). Throws
/// Error{BoundaryEdge} for boundary edges.
EdgeTestResult test_edge(const SimplicialComplex& c, const OneForm& F, const OneForm& G,
                         EdgeId e, double epsilon = 0.0);

struct JacobiEdge {
  EdgeId edge = -1;
  VertexId u = -1;  ///< canonical lo
  VertexId v = -1;  ///< canonical hi
  int multiplicity = 0;
  double lambda_star = 0.0;
  bool epsilon_triggered = false;
};

struct JacobiDiagnostics {
  std::vector<EdgeId> skipped_edges;     ///< G(uv) == 0
  std::vector<EdgeId> boundary_edges;
  std::vector<EdgeId> degenerate_edges;  ///< zero link value(s)
};

/// Edges of nonzero multiplicity plus their endpoints.
class JacobiSet {
 public:
  JacobiSet() = default;
  explicit JacobiSet(std::vector<JacobiEdge> edges);

  const std::vector<JacobiEdge>& edges() const noexcept { return edges_; }
  const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
  bool empty() const noexcept { return edges_.empty(); }
  std::size_t size() const noexcept { return edges_.size(); }

  bool contains(VertexId u, VertexId v) const;
  /// Canonical (lo, hi) pairs, sorted.
  std::vector<Edge> edge_pairs() const;

 private:
  std::vector<JacobiEdge> edges_;  // sorted by (u, v)
  std::vector<VertexId> vertices_;
};

struct JacobiOptions {
  double epsilon = 0.0;
  /// Worker threads for the edge loop; 0 picks hardware concurrency. The
  /// result does not depend on this value.
  unsigned threads = 0;
};

struct JacobiResult {
  JacobiSet set;
  JacobiDiagnostics diagnostics;
};

/// Jacobi set of two 1-forms. Boundary edges are excluded and listed in the
/// diagnostics, as are edges with G(uv) == 0. Epsilon only affects 2D
/// complexes.
JacobiResult jacobi_set(const SimplicialComplex& c, const OneForm& F, const OneForm& G,
                        const JacobiOptions& options = {});

/// Function-pair variant using h = f + lambda* g on the lower link of u
/// directly.
JacobiResult jacobi_set_functions(const SimplicialComplex& c, const ScalarField& f,
                                  const ScalarField& g, unsigned threads = 0);

struct DegreeReport {
  std::vector<std::pair<VertexId, int>> degrees;  ///< sorted by vertex id
  std::vector<VertexId> odd_vertices;
  /// Odd vertices not on the complex boundary (filled when a complex is given).
  std::vector<VertexId> odd_interior_vertices;
};

/// Degree of each Jacobi vertex, counting every edge once regardless of
/// multiplicity.
DegreeReport degree_report(const JacobiSet& j, const SimplicialComplex* c = nullptr);

}  // namespace pljacobi
