#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "pljacobi/error.hpp"

namespace pljacobi {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using CellId = std::int32_t;

/// Vertex position. Planar complexes leave z at 0.
struct Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Top cell: a triangle uses the first three slots, a tetrahedron all four.
using Cell = std::array<VertexId, 4>;

/// Edge stored with canonical orientation lo < hi.
struct Edge {
  VertexId lo = 0;
  VertexId hi = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Link of an interior edge. For a 2-complex `vertices` holds the two opposite
/// vertices {a, b}; for a 3-complex it is the cycle a_0 ... a_{k-1} (a_k = a_0
/// implied).
///
/// Cycle orientation: starts at the smallest vertex id and steps to its
/// smaller-id neighbour. Downstream tests are invariant under reversal.
struct EdgeLink {
  std::vector<VertexId> vertices;
};

/// Non-fatal findings from `SimplicialComplex::build`.
struct BuildReport {
  std::vector<VertexId> dangling_vertices;
};

/// Immutable triangulated 2- or 3-manifold (possibly with boundary).
///
/// After construction all queries are const and safe for concurrent readers.
class SimplicialComplex {
 public:
  /// Builds edge and incidence tables and runs the manifold check.
  /// Throws Error{NonManifold} when a codimension-1 face is shared by more
  /// than two cells and Error{InvalidMesh} for malformed input. Vertices in no
  /// cell are listed in `report()` only.
  static SimplicialComplex build(int dim, std::vector<Point> positions,
                                 std::vector<Cell> cells);

  int dim() const noexcept { return dim_; }
  std::size_t num_vertices() const noexcept { return positions_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::size_t num_cells() const noexcept { return cells_.size(); }

  std::span<const Point> positions() const noexcept { return positions_; }
  const Point& position(VertexId v) const { return positions_.at(v); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::span<const Cell> cells() const noexcept { return cells_; }
  /// Vertices of cell `c` (dim + 1 entries).
  std::span<const VertexId> cell_vertices(CellId c) const;

  /// Edge id of {u, v} in either orientation, or -1.
  EdgeId find_edge(VertexId u, VertexId v) const;
  /// Like find_edge, but throws Error{InvalidMesh} when absent.
  EdgeId edge_id(VertexId u, VertexId v) const;

  std::span<const CellId> edge_cells(EdgeId e) const;
  std::span<const EdgeId> vertex_edges(VertexId v) const;

  /// 2D: exactly two incident triangles. 3D: the opposite edges of the
  /// incident tetrahedra close into a single cycle.
  bool is_interior_edge(EdgeId e) const { return interior_[e] != 0; }
  /// True when some incident edge is a boundary edge (or the vertex is
  /// dangling).
  bool is_boundary_vertex(VertexId v) const;

  /// Throws Error{BoundaryEdge} if `e` is not interior.
  EdgeLink edge_link(EdgeId e) const;

  const BuildReport& report() const noexcept { return report_; }

  /// V - E + F (- T in 3D).
  long euler_characteristic() const;

 private:
  SimplicialComplex() = default;

  void index_edges();
  void check_manifold();
  void classify_edges();
  bool link_cycle(EdgeId e, std::vector<VertexId>* out) const;

  static std::uint64_t key(VertexId a, VertexId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
  }

  int dim_ = 2;
  std::vector<Point> positions_;
  std::vector<Cell> cells_;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, EdgeId> edge_index_;

  // CSR incidence tables.
  std::vector<std::int32_t> edge_cell_offsets_;
  std::vector<CellId> edge_cell_list_;
  std::vector<std::int32_t> vertex_edge_offsets_;
  std::vector<EdgeId> vertex_edge_list_;

  std::vector<std::uint8_t> interior_;
  BuildReport report_;
};

enum class GridScheme { T1, T2, T3 };

GridScheme parse_scheme(const std::string& name);
const char* to_string(GridScheme scheme);

struct BBox {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 1.0;
  double ymax = 1.0;
};

/// Regular plane triangulations.
///
///  T1  square lattice, every cell split by the diagonal (i,j)-(i+1,j+1).
///  T2  square lattice plus a centre vertex per cell, 4 triangles per cell.
///  T3  equilateral lattice with horizontal rows, clipped to the box.
///
/// The lattice starts at (xmin, ymin) and takes as many whole steps as fit in
/// the box. Throws Error{StepTooLarge} with fewer than two cells on an axis.
SimplicialComplex generate_grid(GridScheme scheme, const BBox& box, double h);

}  // namespace pljacobi
