#include "pljacobi/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace pljacobi {

PlaneFn determinant_field(const AnalyticFormPair& pair) {
  return [pair](double x, double y) {
    return pair.F.P(x, y) * pair.G.Q(x, y) - pair.F.Q(x, y) * pair.G.P(x, y);
  };
}

std::size_t ContourSet::num_segments() const {
  std::size_t n = 0;
  for (const auto& line : polylines)
    if (line.size() > 1) n += line.size() - 1;
  return n;
}

// ---------------------------------------------------------------------------
// Marching squares

namespace {

struct GridEdgePoint {
  std::int64_t key;
  Vec2 p;
};

}  // namespace

ContourSet marching_squares(const PlaneFn& D, const BBox& box, int resolution) {
  if (resolution < 8) throw Error(ErrorKind::BadArgument, "contour resolution must be >= 8");
  const int n = resolution;
  const double sx = (box.xmax - box.xmin) / n;
  const double sy = (box.ymax - box.ymin) / n;
  auto xs = [&](int i) { return box.xmin + i * sx; };
  auto ys = [&](int j) { return box.ymin + j * sy; };

  std::vector<double> value(static_cast<std::size_t>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) value[static_cast<std::size_t>(j) * (n + 1) + i] = D(xs(i), ys(j));
  auto val = [&](int i, int j) { return value[static_cast<std::size_t>(j) * (n + 1) + i]; };

  const std::int64_t horizontal = static_cast<std::int64_t>(n + 1) * n;
  auto hkey = [&](int i, int j) { return static_cast<std::int64_t>(j) * n + i; };
  auto vkey = [&](int i, int j) { return horizontal + static_cast<std::int64_t>(j) * (n + 1) + i; };

  auto crossing = [](double a, double b) { return a / (a - b); };

  ContourSet out;
  out.box = box;
  out.resolution = n;

  std::vector<std::array<std::int64_t, 2>> segments;
  std::unordered_map<std::int64_t, Vec2> points;

  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::array<double, 4> c{val(i, j), val(i + 1, j), val(i + 1, j + 1), val(i, j + 1)};
      if (c[0] == 0.0 && c[1] == 0.0 && c[2] == 0.0 && c[3] == 0.0) ++out.degenerate_cells;
      const std::array<bool, 4> in{c[0] >= 0.0, c[1] >= 0.0, c[2] >= 0.0, c[3] >= 0.0};

      // Cell sides: 0 bottom (c0-c1), 1 right (c1-c2), 2 top (c3-c2), 3 left (c0-c3).
      std::array<std::int64_t, 4> key{hkey(i, j), vkey(i + 1, j), hkey(i, j + 1), vkey(i, j)};
      auto emit_point = [&](int side) {
        if (points.count(key[side])) return;
        Vec2 p;
        switch (side) {
          case 0: p = {xs(i) + crossing(c[0], c[1]) * sx, ys(j)}; break;
          case 1: p = {xs(i + 1), ys(j) + crossing(c[1], c[2]) * sy}; break;
          case 2: p = {xs(i) + crossing(c[3], c[2]) * sx, ys(j + 1)}; break;
          default: p = {xs(i), ys(j) + crossing(c[0], c[3]) * sy}; break;
        }
        points.emplace(key[side], p);
      };
      auto segment = [&](int s0, int s1) {
        emit_point(s0);
        emit_point(s1);
        segments.push_back({key[s0], key[s1]});
      };

      std::array<bool, 4> cut{in[0] != in[1], in[1] != in[2], in[3] != in[2], in[0] != in[3]};
      const int ncut = cut[0] + cut[1] + cut[2] + cut[3];
      if (ncut == 2) {
        std::array<int, 2> sides{};
        int k = 0;
        for (int s = 0; s < 4; ++s)
          if (cut[s]) sides[k++] = s;
        segment(sides[0], sides[1]);
      } else if (ncut == 4) {
        const bool centre_in = D(xs(i) + 0.5 * sx, ys(j) + 0.5 * sy) >= 0.0;
        if (centre_in == in[0]) {
          // c0 and c2 joined through the centre: isolate c1 and c3.
          segment(0, 1);
          segment(2, 3);
        } else {
          segment(3, 0);
          segment(1, 2);
        }
      }
    }
  }

  // Chain segments through shared grid-edge points.
  std::unordered_map<std::int64_t, std::array<int, 2>> incident;
  incident.reserve(points.size());
  for (std::size_t s = 0; s < segments.size(); ++s) {
    for (std::int64_t k : segments[s]) {
      auto [it, fresh] = incident.try_emplace(k, std::array<int, 2>{-1, -1});
      (it->second[0] < 0 ? it->second[0] : it->second[1]) = static_cast<int>(s);
    }
  }
  std::vector<char> used(segments.size(), 0);
  auto walk = [&](int start_seg, std::int64_t start_key) {
    std::vector<Vec2> line{points.at(start_key)};
    int seg = start_seg;
    std::int64_t at = start_key;
    bool closed = false;
    while (seg >= 0 && !used[seg]) {
      used[seg] = 1;
      const std::int64_t next = segments[seg][0] == at ? segments[seg][1] : segments[seg][0];
      line.push_back(points.at(next));
      at = next;
      const auto& inc = incident.at(at);
      seg = inc[0] == seg ? inc[1] : inc[0];
      if (at == start_key) closed = true;
    }
    out.polylines.push_back(std::move(line));
    out.closed.push_back(closed);
  };
  // Open chains first (ends have a single incident segment), then loops.
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (used[s]) continue;
    for (std::int64_t k : segments[s]) {
      if (incident.at(k)[1] < 0 && !used[s]) walk(static_cast<int>(s), k);
    }
  }
  for (std::size_t s = 0; s < segments.size(); ++s)
    if (!used[s]) walk(static_cast<int>(s), segments[s][0]);
  return out;
}

// ---------------------------------------------------------------------------
// Distances

namespace {

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

// Uniform bucket grid over the contour segments.
class SegmentIndex {
 public:
  explicit SegmentIndex(const ContourSet& contour) {
    for (const auto& line : contour.polylines)
      for (std::size_t k = 0; k + 1 < line.size(); ++k) segs_.push_back({line[k], line[k + 1]});
    lo_ = {std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    Vec2 hi{-lo_.x, -lo_.y};
    for (const auto& s : segs_)
      for (const Vec2& p : s) {
        lo_ = {std::min(lo_.x, p.x), std::min(lo_.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
      }
    cell_ = std::max({(hi.x - lo_.x) / kBuckets, (hi.y - lo_.y) / kBuckets, 1e-12});
    buckets_.resize(kBuckets * kBuckets);
    for (std::size_t s = 0; s < segs_.size(); ++s) {
      const auto& [a, b] = segs_[s];
      const int i0 = index(std::min(a.x, b.x) - lo_.x), i1 = index(std::max(a.x, b.x) - lo_.x);
      const int j0 = index(std::min(a.y, b.y) - lo_.y), j1 = index(std::max(a.y, b.y) - lo_.y);
      for (int j = j0; j <= j1; ++j)
        for (int i = i0; i <= i1; ++i) buckets_[j * kBuckets + i].push_back(static_cast<int>(s));
    }
  }

  double nearest(const Vec2& p) const {
    const double fx = (p.x - lo_.x) / cell_;
    const double fy = (p.y - lo_.y) / cell_;
    if (fx < 0 || fy < 0 || fx >= kBuckets || fy >= kBuckets) return brute(p);
    const int ci = static_cast<int>(fx);
    const int cj = static_cast<int>(fy);
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < kBuckets; ++r) {
      for (int j = cj - r; j <= cj + r; ++j) {
        if (j < 0 || j >= kBuckets) continue;
        const bool edge_row = j == cj - r || j == cj + r;
        for (int i = ci - r; i <= ci + r; i += edge_row ? 1 : 2 * r) {
          if (i >= 0 && i < kBuckets)
            for (int s : buckets_[j * kBuckets + i])
              best = std::min(best, point_segment_distance(p, segs_[s][0], segs_[s][1]));
          if (r == 0) break;
        }
      }
      if (best <= r * cell_) break;
    }
    return best;
  }

 private:
  static constexpr int kBuckets = 128;

  int index(double offset) const {
    return std::clamp(static_cast<int>(offset / cell_), 0, kBuckets - 1);
  }

  double brute(const Vec2& p) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : segs_) best = std::min(best, point_segment_distance(p, s[0], s[1]));
    return best;
  }

  std::vector<std::array<Vec2, 2>> segs_;
  std::vector<std::vector<int>> buckets_;
  Vec2 lo_;
  double cell_ = 1.0;
};

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace

DistanceReport distance_report(const JacobiSet& j, std::span<const Point> positions,
                               const ContourSet& contour, double threshold) {
  if (contour.num_segments() == 0) {
    throw Error(ErrorKind::EmptyContour, "contour has no segments to measure against");
  }
  const SegmentIndex index(contour);
  DistanceReport report;
  report.threshold = threshold;
  report.distances.reserve(j.size());
  for (const JacobiEdge& e : j.edges()) {
    const Point& a = positions[static_cast<std::size_t>(e.u)];
    const Point& b = positions[static_cast<std::size_t>(e.v)];
    const double d = index.nearest({0.5 * (a.x + b.x), 0.5 * (a.y + b.y)});
    report.distances.push_back(d);
    if (d > threshold) ++report.beyond_threshold;
  }
  if (!report.distances.empty()) {
    report.median = median_of(report.distances);
    report.mean = std::accumulate(report.distances.begin(), report.distances.end(), 0.0) /
                  static_cast<double>(report.distances.size());
    report.max = *std::max_element(report.distances.begin(), report.distances.end());
  }
  return report;
}

// ---------------------------------------------------------------------------
// Built-in pairs

std::vector<std::string> builtin_pair_names() { return {"fig2", "fig4", "fig6"}; }

BuiltinPair builtin_pair(const std::string& name) {
  BuiltinPair pair;
  pair.name = name;
  if (name == "fig2") {
    auto f = [](double x, double y) {
      return ((x - 1) * (x - 1) + y * y) * ((x + 1) * (x + 1) + y * y);
    };
    auto g = [](double x, double y) { return (x - 1) * (x - 1) + (y - 1) * (y - 1); };
    pair.functions = std::make_pair(PlaneFn(f), PlaneFn(g));
    pair.forms.F.P = [](double x, double y) {
      const double a = (x - 1) * (x - 1) + y * y;
      const double b = (x + 1) * (x + 1) + y * y;
      return 2 * (x - 1) * b + 2 * (x + 1) * a;
    };
    pair.forms.F.Q = [](double x, double y) {
      const double a = (x - 1) * (x - 1) + y * y;
      const double b = (x + 1) * (x + 1) + y * y;
      return 2 * y * (a + b);
    };
    pair.forms.G.P = [](double x, double) { return 2 * (x - 1); };
    pair.forms.G.Q = [](double, double y) { return 2 * (y - 1); };
  } else if (name == "fig4") {
    pair.forms.F.P = [](double, double y) { return y + 1; };
    pair.forms.F.Q = [](double x, double) { return 2 * (x + 1); };
    pair.forms.G.P = [](double x, double y) { return 2 * x - 3 * y; };
    pair.forms.G.Q = [](double x, double y) { return 2 * x + 3 * y; };
  } else if (name == "fig6") {
    pair.forms.F.P = [](double x, double y) { return y * (x * x + y * y + 1); };
    pair.forms.F.Q = [](double x, double y) { return -x * (x * x + y * y - 1); };
    pair.forms.G.P = [](double x, double y) { return 2 * x - 3 * y - 6; };
    pair.forms.G.Q = [](double x, double y) { return 2 * x - 3 * y; };
  } else {
    throw Error(ErrorKind::BadArgument, "unknown built-in pair '" + name + "'");
  }
  return pair;
}

}  // namespace pljacobi
