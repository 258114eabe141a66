#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "pljacobi/mesh.hpp"

namespace fixtures {

using pljacobi::Cell;
using pljacobi::Point;
using pljacobi::SimplicialComplex;

/// u=0 (0,0), v=1 (1,0), a=2 (0.5,1), b=3 (0.5,-1); triangles uva, uvb.
inline SimplicialComplex two_triangles() {
  return SimplicialComplex::build(2, {{0, 0}, {1, 0}, {0.5, 1}, {0.5, -1}},
                                  {{0, 1, 2, -1}, {0, 1, 3, -1}});
}

/// Octahedron surface: +x -x +y -y +z -z (ids 0..5), 8 triangles.
inline SimplicialComplex octahedron() {
  std::vector<Point> p{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  std::vector<Cell> t;
  for (int x : {0, 1})
    for (int y : {2, 3})
      for (int z : {4, 5}) t.push_back({x, y, z, -1});
  return SimplicialComplex::build(2, p, t);
}

/// Edge u=0 (0,0,-1) to v=1 (0,0,1) surrounded by k tetrahedra; ring
/// vertices 2..k+1 on the unit circle.
inline SimplicialComplex bipyramid(int k) {
  std::vector<Point> p{{0, 0, -1}, {0, 0, 1}};
  std::vector<Cell> t;
  for (int i = 0; i < k; ++i) {
    const double a = 2 * std::numbers::pi * i / k;
    p.push_back({std::cos(a), std::sin(a), 0});
  }
  for (int i = 0; i < k; ++i) t.push_back({0, 1, 2 + i, 2 + (i + 1) % k});
  return SimplicialComplex::build(3, p, t);
}

/// Solid octahedron: centre 0 plus the six octahedron vertices 1..6, one
/// tetrahedron per face. The six centre edges are interior.
inline SimplicialComplex solid_octahedron() {
  std::vector<Point> p{{0, 0, 0},  {1, 0, 0},  {-1, 0, 0}, {0, 1, 0},
                       {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  std::vector<Cell> t;
  for (int x : {1, 2})
    for (int y : {3, 4})
      for (int z : {5, 6}) t.push_back({0, x, y, z});
  return SimplicialComplex::build(3, p, t);
}

/// Subdivided cube [0,n]^3, each unit cube split into 6 tetrahedra around
/// its main diagonal (Kuhn triangulation).
inline SimplicialComplex kuhn_cube(int n) {
  std::vector<Point> p;
  auto id = [n](int i, int j, int k) { return (k * (n + 1) + j) * (n + 1) + i; };
  for (int k = 0; k <= n; ++k)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i) p.push_back({double(i), double(j), double(k)});
  std::vector<Cell> t;
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (const auto& perm : perms) {
          int c[3] = {i, j, k};
          Cell cell{};
          cell[0] = id(c[0], c[1], c[2]);
          for (int s = 0; s < 3; ++s) {
            ++c[perm[s]];
            cell[s + 1] = id(c[0], c[1], c[2]);
          }
          t.push_back(cell);
        }
  return SimplicialComplex::build(3, p, t);
}

}  // namespace fixtures
