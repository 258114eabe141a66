// Independent reference computations used only by the tests. Nothing here
// calls into the code paths it is used to check.
#pragma once

#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

/// Reduced Betti sum b~_{-1} + b~_0 + b~_1 of the lower link inside a
/// k-cycle, where the lower link is the full subcomplex on the vertices with
/// negative sign. Uses union-find and the graph cycle rank E - V + C.
inline int lower_link_betti_sum(const std::vector<int>& signs) {
  const int k = static_cast<int>(signs.size());
  std::vector<int> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };

  int vertices = 0, edges = 0;
  for (int i = 0; i < k; ++i) vertices += signs[i] < 0;
  for (int i = 0; i < k; ++i) {
    const int j = (i + 1) % k;
    if (signs[i] < 0 && signs[j] < 0) {
      ++edges;
      parent[find(i)] = find(j);
    }
  }
  if (vertices == 0) return 1;  // b~_{-1}
  int components = 0;
  for (int i = 0; i < k; ++i)
    if (signs[i] < 0 && find(i) == i) ++components;
  const int cycles = edges - vertices + components;
  return (components - 1) + cycles;
}

/// Composite midpoint rule for the line integral of P dx + Q dy along the
/// segment a -> b, refined by doubling until two successive values agree.
inline double line_integral_refined(const std::function<double(double, double)>& P,
                                    const std::function<double(double, double)>& Q, double ax,
                                    double ay, double bx, double by, double tol = 1e-13) {
  auto composite = [&](long n) {
    const double dx = bx - ax, dy = by - ay;
    double s = 0.0;
    for (long i = 0; i < n; ++i) {
      const double t = (i + 0.5) / static_cast<double>(n);
      const double x = ax + t * dx, y = ay + t * dy;
      s += P(x, y) * dx + Q(x, y) * dy;
    }
    return s / static_cast<double>(n);
  };
  long n = 16;
  double prev = composite(n);
  for (int iter = 0; iter < 24; ++iter) {
    n *= 2;
    const double cur = composite(n);
    if (std::abs(cur - prev) < tol * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  return prev;
}

/// Exact line integral of the affine field X(x, y) = A (x, y) + c along the
/// segment a -> b, from the closed-form antiderivative in t.
struct AffineField {
  double a11, a12, a21, a22, c1, c2;
};
inline double affine_line_integral(const AffineField& f, double ax, double ay, double bx,
                                   double by) {
  // X(a + t d) . d = (X(a) . d) + t (A d) . d, integrated over t in [0, 1].
  const double dx = bx - ax, dy = by - ay;
  const double xa1 = f.a11 * ax + f.a12 * ay + f.c1;
  const double xa2 = f.a21 * ax + f.a22 * ay + f.c2;
  const double ad1 = f.a11 * dx + f.a12 * dy;
  const double ad2 = f.a21 * dx + f.a22 * dy;
  return (xa1 * dx + xa2 * dy) + 0.5 * (ad1 * dx + ad2 * dy);
}

}  // namespace oracle
