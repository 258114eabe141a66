#include "pljacobi/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace pljacobi {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonManifold: return "NonManifold";
    case ErrorKind::InvalidMesh: return "InvalidMesh";
    case ErrorKind::BoundaryEdge: return "BoundaryEdge";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::SampleMissing: return "SampleMissing";
    case ErrorKind::MissingEdgeValue: return "MissingEdgeValue";
    case ErrorKind::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorKind::EmptyContour: return "EmptyContour";
    case ErrorKind::BadFile: return "BadFile";
    case ErrorKind::BadArgument: return "BadArgument";
  }
  return "Unknown";
}

namespace {

template <typename T>
void build_csr(std::size_t rows, const std::vector<std::pair<std::int32_t, T>>& pairs,
               std::vector<std::int32_t>& offsets, std::vector<T>& list) {
  offsets.assign(rows + 1, 0);
  for (const auto& [row, _] : pairs) ++offsets[row + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  list.resize(pairs.size());
  std::vector<std::int32_t> fill(offsets.begin(), offsets.end() - 1);
  for (const auto& [row, value] : pairs) list[fill[row]++] = value;
}

}  // namespace

SimplicialComplex SimplicialComplex::build(int dim, std::vector<Point> positions,
                                           std::vector<Cell> cells) {
  if (dim != 2 && dim != 3) {
    throw Error(ErrorKind::DimensionUnsupported,
                "complex dimension must be 2 or 3, got " + std::to_string(dim));
  }
  const auto nv = static_cast<VertexId>(positions.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (int k = 0; k <= dim; ++k) {
      const VertexId v = cells[c][k];
      if (v < 0 || v >= nv) {
        throw Error(ErrorKind::InvalidMesh, "cell " + std::to_string(c) +
                                                " references vertex " + std::to_string(v) +
                                                " out of range");
      }
      for (int m = 0; m < k; ++m) {
        if (cells[c][m] == v) {
          throw Error(ErrorKind::InvalidMesh,
                      "cell " + std::to_string(c) + " repeats vertex " + std::to_string(v));
        }
      }
    }
    for (int k = dim + 1; k < 4; ++k) cells[c][k] = -1;
  }

  SimplicialComplex sc;
  sc.dim_ = dim;
  sc.positions_ = std::move(positions);
  sc.cells_ = std::move(cells);
  sc.index_edges();
  sc.check_manifold();
  sc.classify_edges();
  return sc;
}

std::span<const VertexId> SimplicialComplex::cell_vertices(CellId c) const {
  return std::span<const VertexId>(cells_.at(c).data(), static_cast<std::size_t>(dim_ + 1));
}

void SimplicialComplex::index_edges() {
  std::vector<std::uint64_t> keys;
  keys.reserve(cells_.size() * (dim_ == 2 ? 3 : 6));
  for (const Cell& cell : cells_) {
    for (int a = 0; a <= dim_; ++a)
      for (int b = a + 1; b <= dim_; ++b) keys.push_back(key(cell[a], cell[b]));
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  edges_.resize(keys.size());
  edge_index_.reserve(keys.size());
  for (std::size_t e = 0; e < keys.size(); ++e) {
    edges_[e] = Edge{static_cast<VertexId>(keys[e] >> 32),
                     static_cast<VertexId>(keys[e] & 0xffffffffu)};
    edge_index_.emplace(keys[e], static_cast<EdgeId>(e));
  }

  std::vector<std::pair<std::int32_t, CellId>> edge_cell;
  edge_cell.reserve(cells_.size() * (dim_ == 2 ? 3 : 6));
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    const Cell& cell = cells_[c];
    for (int a = 0; a <= dim_; ++a)
      for (int b = a + 1; b <= dim_; ++b)
        edge_cell.emplace_back(edge_index_.at(key(cell[a], cell[b])), static_cast<CellId>(c));
  }
  build_csr(edges_.size(), edge_cell, edge_cell_offsets_, edge_cell_list_);

  std::vector<std::pair<std::int32_t, EdgeId>> vertex_edge;
  vertex_edge.reserve(edges_.size() * 2);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    vertex_edge.emplace_back(edges_[e].lo, static_cast<EdgeId>(e));
    vertex_edge.emplace_back(edges_[e].hi, static_cast<EdgeId>(e));
  }
  build_csr(positions_.size(), vertex_edge, vertex_edge_offsets_, vertex_edge_list_);

  for (std::size_t v = 0; v < positions_.size(); ++v) {
    if (vertex_edge_offsets_[v] == vertex_edge_offsets_[v + 1])
      report_.dangling_vertices.push_back(static_cast<VertexId>(v));
  }
}

void SimplicialComplex::check_manifold() {
  if (dim_ == 2) {
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (edge_cells(static_cast<EdgeId>(e)).size() > 2) {
        std::ostringstream msg;
        msg << "edge (" << edges_[e].lo << "," << edges_[e].hi << ") is shared by "
            << edge_cells(static_cast<EdgeId>(e)).size() << " triangles";
        throw Error(ErrorKind::NonManifold, msg.str());
      }
    }
    return;
  }
  std::vector<std::array<VertexId, 3>> faces;
  faces.reserve(cells_.size() * 4);
  for (const Cell& cell : cells_) {
    for (int skip = 0; skip < 4; ++skip) {
      std::array<VertexId, 3> f{};
      int n = 0;
      for (int k = 0; k < 4; ++k)
        if (k != skip) f[n++] = cell[k];
      std::sort(f.begin(), f.end());
      faces.push_back(f);
    }
  }
  std::sort(faces.begin(), faces.end());
  for (std::size_t i = 0; i < faces.size();) {
    std::size_t j = i;
    while (j < faces.size() && faces[j] == faces[i]) ++j;
    if (j - i > 2) {
      std::ostringstream msg;
      msg << "triangle (" << faces[i][0] << "," << faces[i][1] << "," << faces[i][2]
          << ") is shared by " << (j - i) << " tetrahedra";
      throw Error(ErrorKind::NonManifold, msg.str());
    }
    i = j;
  }
}

void SimplicialComplex::classify_edges() {
  interior_.assign(edges_.size(), 0);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto id = static_cast<EdgeId>(e);
    interior_[e] = dim_ == 2 ? edge_cells(id).size() == 2 : link_cycle(id, nullptr);
  }
}

EdgeId SimplicialComplex::find_edge(VertexId u, VertexId v) const {
  const auto it = edge_index_.find(key(u, v));
  return it == edge_index_.end() ? -1 : it->second;
}

EdgeId SimplicialComplex::edge_id(VertexId u, VertexId v) const {
  const EdgeId e = find_edge(u, v);
  if (e < 0) {
    throw Error(ErrorKind::InvalidMesh,
                "no edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  }
  return e;
}

std::span<const CellId> SimplicialComplex::edge_cells(EdgeId e) const {
  return std::span<const CellId>(edge_cell_list_).subspan(
      edge_cell_offsets_[e], edge_cell_offsets_[e + 1] - edge_cell_offsets_[e]);
}

std::span<const EdgeId> SimplicialComplex::vertex_edges(VertexId v) const {
  return std::span<const EdgeId>(vertex_edge_list_).subspan(
      vertex_edge_offsets_[v], vertex_edge_offsets_[v + 1] - vertex_edge_offsets_[v]);
}

bool SimplicialComplex::is_boundary_vertex(VertexId v) const {
  const auto incident = vertex_edges(v);
  if (incident.empty()) return true;
  return std::any_of(incident.begin(), incident.end(),
                     [&](EdgeId e) { return !is_interior_edge(e); });
}

// Walks the opposite edges of the tetrahedra around `e`. Succeeds iff they
// form one closed cycle through every link vertex.
bool SimplicialComplex::link_cycle(EdgeId e, std::vector<VertexId>* out) const {
  const Edge& uv = edges_[e];
  const auto star = edge_cells(e);
  if (star.size() < 3) return false;

  std::vector<std::pair<VertexId, VertexId>> opposite;
  opposite.reserve(star.size());
  for (CellId c : star) {
    VertexId p = -1, q = -1;
    for (VertexId w : cell_vertices(c)) {
      if (w == uv.lo || w == uv.hi) continue;
      (p < 0 ? p : q) = w;
    }
    opposite.emplace_back(p, q);
  }

  // Neighbour lists keyed by link vertex; each must have exactly two.
  std::vector<VertexId> verts;
  for (auto [p, q] : opposite) {
    verts.push_back(p);
    verts.push_back(q);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  if (verts.size() != star.size()) return false;

  std::vector<std::array<VertexId, 2>> nbr(verts.size(), {-1, -1});
  auto slot = [&](VertexId w) {
    return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), w) - verts.begin());
  };
  auto attach = [&](VertexId a, VertexId b) {
    auto& n = nbr[slot(a)];
    if (n[0] < 0) n[0] = b;
    else if (n[1] < 0) n[1] = b;
    else return false;
    return true;
  };
  for (auto [p, q] : opposite)
    if (!attach(p, q) || !attach(q, p)) return false;
  for (auto& n : nbr) {
    if (n[1] < 0 || n[0] == n[1]) return false;
    if (n[0] > n[1]) std::swap(n[0], n[1]);
  }

  std::vector<VertexId> cycle;
  cycle.reserve(verts.size());
  VertexId prev = -1;
  VertexId cur = verts.front();
  for (std::size_t i = 0; i < verts.size(); ++i) {
    cycle.push_back(cur);
    const auto& n = nbr[slot(cur)];
    const VertexId next = (n[0] != prev) ? n[0] : n[1];
    prev = cur;
    cur = next;
  }
  if (cur != verts.front()) return false;
  std::vector<VertexId> seen = cycle;
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;

  if (out) *out = std::move(cycle);
  return true;
}

EdgeLink SimplicialComplex::edge_link(EdgeId e) const {
  if (!is_interior_edge(e)) {
    const Edge& uv = edges_.at(e);
    throw Error(ErrorKind::BoundaryEdge, "edge (" + std::to_string(uv.lo) + "," +
                                             std::to_string(uv.hi) + ") is on the boundary");
  }
  EdgeLink link;
  if (dim_ == 2) {
    const Edge& uv = edges_[e];
    for (CellId c : edge_cells(e))
      for (VertexId w : cell_vertices(c))
        if (w != uv.lo && w != uv.hi) link.vertices.push_back(w);
    std::sort(link.vertices.begin(), link.vertices.end());
  } else {
    link_cycle(e, &link.vertices);
  }
  return link;
}

long SimplicialComplex::euler_characteristic() const {
  const long v = static_cast<long>(num_vertices());
  const long e = static_cast<long>(num_edges());
  const long c = static_cast<long>(num_cells());
  if (dim_ == 2) return v - e + c;
  std::vector<std::array<VertexId, 3>> faces;
  for (const Cell& cell : cells_) {
    for (int skip = 0; skip < 4; ++skip) {
      std::array<VertexId, 3> f{};
      int n = 0;
      for (int k = 0; k < 4; ++k)
        if (k != skip) f[n++] = cell[k];
      std::sort(f.begin(), f.end());
      faces.push_back(f);
    }
  }
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  return v - e + static_cast<long>(faces.size()) - c;
}

// ---------------------------------------------------------------------------
// Regular plane grids

GridScheme parse_scheme(const std::string& name) {
  if (name == "T1" || name == "t1") return GridScheme::T1;
  if (name == "T2" || name == "t2") return GridScheme::T2;
  if (name == "T3" || name == "t3") return GridScheme::T3;
  throw Error(ErrorKind::BadArgument, "unknown triangulation scheme '" + name + "'");
}

const char* to_string(GridScheme scheme) {
  switch (scheme) {
    case GridScheme::T1: return "T1";
    case GridScheme::T2: return "T2";
    case GridScheme::T3: return "T3";
  }
  return "?";
}

namespace {

constexpr double kFitSlack = 1e-9;

int whole_steps(double length, double h) {
  return static_cast<int>(std::floor(length / h + kFitSlack));
}

SimplicialComplex square_lattice(const BBox& box, double h, int nx, int ny, bool centred) {
  std::vector<Point> pts;
  std::vector<Cell> cells;
  pts.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1) + (centred ? nx * ny : 0)));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) pts.push_back({box.xmin + i * h, box.ymin + j * h, 0.0});
  auto node = [nx](int i, int j) { return static_cast<VertexId>(j * (nx + 1) + i); };

  if (!centred) {
    cells.reserve(static_cast<std::size_t>(2 * nx * ny));
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        cells.push_back({node(i, j), node(i + 1, j), node(i + 1, j + 1), -1});
        cells.push_back({node(i, j), node(i + 1, j + 1), node(i, j + 1), -1});
      }
  } else {
    cells.reserve(static_cast<std::size_t>(4 * nx * ny));
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const auto c = static_cast<VertexId>(pts.size());
        pts.push_back({box.xmin + (i + 0.5) * h, box.ymin + (j + 0.5) * h, 0.0});
        cells.push_back({c, node(i, j), node(i + 1, j), -1});
        cells.push_back({c, node(i + 1, j), node(i + 1, j + 1), -1});
        cells.push_back({c, node(i + 1, j + 1), node(i, j + 1), -1});
        cells.push_back({c, node(i, j + 1), node(i, j), -1});
      }
  }
  return SimplicialComplex::build(2, std::move(pts), std::move(cells));
}

SimplicialComplex hexagonal_lattice(const BBox& box, double h) {
  const double width = box.xmax - box.xmin;
  const double row_step = h * std::sqrt(3.0) / 2.0;
  const int rows = whole_steps(box.ymax - box.ymin, row_step) + 1;

  std::vector<Point> pts;
  std::vector<std::vector<VertexId>> row_ids(rows);
  for (int r = 0; r < rows; ++r) {
    const double offset = (r % 2) ? 0.5 * h : 0.0;
    for (int i = 0;; ++i) {
      const double dx = offset + i * h;
      if (dx > width + kFitSlack * h) break;
      row_ids[r].push_back(static_cast<VertexId>(pts.size()));
      pts.push_back({box.xmin + dx, box.ymin + r * row_step, 0.0});
    }
  }

  std::vector<Cell> cells;
  auto at = [&](int r, int i) -> VertexId {
    if (i < 0 || i >= static_cast<int>(row_ids[r].size())) return -1;
    return row_ids[r][i];
  };
  auto emit = [&](VertexId a, VertexId b, VertexId c) {
    if (a >= 0 && b >= 0 && c >= 0) cells.push_back({a, b, c, -1});
  };
  for (int r = 0; r + 1 < rows; ++r) {
    const int n = static_cast<int>(std::max(row_ids[r].size(), row_ids[r + 1].size()));
    for (int i = 0; i < n; ++i) {
      if (r % 2 == 0) {
        // Upper row shifted right by h/2.
        emit(at(r, i), at(r, i + 1), at(r + 1, i));
        emit(at(r + 1, i), at(r, i + 1), at(r + 1, i + 1));
      } else {
        emit(at(r, i), at(r, i + 1), at(r + 1, i + 1));
        emit(at(r + 1, i), at(r, i), at(r + 1, i + 1));
      }
    }
  }

  // Drop vertices that ended up in no triangle and renumber densely.
  std::vector<VertexId> remap(pts.size(), -1);
  for (const Cell& c : cells)
    for (int k = 0; k < 3; ++k) remap[c[k]] = 0;
  std::vector<Point> kept;
  for (std::size_t v = 0; v < pts.size(); ++v) {
    if (remap[v] < 0) continue;
    remap[v] = static_cast<VertexId>(kept.size());
    kept.push_back(pts[v]);
  }
  for (Cell& c : cells)
    for (int k = 0; k < 3; ++k) c[k] = remap[c[k]];
  return SimplicialComplex::build(2, std::move(kept), std::move(cells));
}

}  // namespace

SimplicialComplex generate_grid(GridScheme scheme, const BBox& box, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw Error(ErrorKind::BadArgument, "grid step must be positive");
  }
  if (!(box.xmax > box.xmin) || !(box.ymax > box.ymin)) {
    throw Error(ErrorKind::BadArgument, "bounding box is degenerate");
  }
  const int nx = whole_steps(box.xmax - box.xmin, h);
  const int ny = scheme == GridScheme::T3
                     ? whole_steps(box.ymax - box.ymin, h * std::sqrt(3.0) / 2.0)
                     : whole_steps(box.ymax - box.ymin, h);
  if (nx < 2 || ny < 2) {
    std::ostringstream msg;
    msg << "step " << h << " leaves " << nx << "x" << ny << " cells; need at least 2 per axis";
    throw Error(ErrorKind::StepTooLarge, msg.str());
  }
  switch (scheme) {
    case GridScheme::T1: return square_lattice(box, h, nx, ny, false);
    case GridScheme::T2: return square_lattice(box, h, nx, ny, true);
    case GridScheme::T3: return hexagonal_lattice(box, h);
  }
  throw Error(ErrorKind::BadArgument, "unknown scheme");
}

}  // namespace pljacobi
