#include "pljacobi/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace pljacobi {

namespace {

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Runs `body(begin, end)` over [0, n) split into contiguous chunks.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(threads, std::max<std::size_t>(1, n / 4096));
  if (workers <= 1) {
    body(std::size_t{0}, n);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin < end) pool.emplace_back([=] { body(begin, end); });
  }
}

enum class EdgeStatus : std::uint8_t { Tested, Boundary, Skipped };

struct EdgeOutcome {
  EdgeStatus status = EdgeStatus::Tested;
  EdgeVerdict verdict;
  double lambda = 0.0;
};

JacobiResult assemble(const SimplicialComplex& c, const std::vector<EdgeOutcome>& outcomes) {
  JacobiResult result;
  std::vector<JacobiEdge> members;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto e = static_cast<EdgeId>(i);
    const EdgeOutcome& o = outcomes[i];
    switch (o.status) {
      case EdgeStatus::Boundary: result.diagnostics.boundary_edges.push_back(e); continue;
      case EdgeStatus::Skipped: result.diagnostics.skipped_edges.push_back(e); continue;
      case EdgeStatus::Tested: break;
    }
    if (o.verdict.degenerate) result.diagnostics.degenerate_edges.push_back(e);
    if (o.verdict.multiplicity > 0) {
      const Edge& uv = c.edge(e);
      members.push_back({e, uv.lo, uv.hi, o.verdict.multiplicity, o.lambda,
                         o.verdict.epsilon_triggered});
    }
  }
  result.set = JacobiSet(std::move(members));
  return result;
}

void require_supported(const SimplicialComplex& c) {
  if (c.dim() != 2 && c.dim() != 3) {
    throw Error(ErrorKind::DimensionUnsupported, "Jacobi sets need a 2- or 3-complex");
  }
}

}  // namespace

std::optional<double> lambda_star(double F_uv, double G_uv) {
  if (G_uv == 0.0) return std::nullopt;
  return F_uv / -G_uv;
}

double scaled_spoke_sum(double F_uv, double G_uv, const LinkSpoke& s) {
  const double f_sum = s.F_uw + s.F_vw;
  const double g_sum = s.G_uw + s.G_vw;
  return sgn(G_uv) * (G_uv * f_sum - F_uv * g_sum);
}

double link_height(double F_uv, double G_uv, const LinkSpoke& s) {
  const double lambda = F_uv / -G_uv;
  return 0.5 * ((s.F_uw + lambda * s.G_uw) + (s.F_vw + lambda * s.G_vw));
}

EdgeVerdict edge_multiplicity_2d(double F_uv, double G_uv, const LinkSpoke& a,
                                 const LinkSpoke& b, double epsilon) {
  EdgeVerdict verdict;
  const double sa = scaled_spoke_sum(F_uv, G_uv, a);
  const double sb = scaled_spoke_sum(F_uv, G_uv, b);
  verdict.degenerate = sa == 0.0 || sb == 0.0;
  if ((sa > 0.0 && sb > 0.0) || (sa < 0.0 && sb < 0.0)) {
    verdict.multiplicity = 1;
    return verdict;
  }
  if (epsilon > 0.0) {
    // |H(ua)+H(va)| < eps  <=>  |scaled| < eps * |G(uv)|
    const double bound = epsilon * std::abs(G_uv);
    if (std::abs(sa) < bound || std::abs(sb) < bound) {
      verdict.multiplicity = 1;
      verdict.epsilon_triggered = true;
    }
  }
  return verdict;
}

int cycle_multiplicity(std::span<const int> signs) {
  const std::size_t k = signs.size();
  int rises = 0;
  for (std::size_t i = 0; i < k; ++i)
    if (signs[i] < 0 && signs[(i + 1) % k] > 0) ++rises;
  return std::abs(rises - 1);
}

EdgeVerdict edge_multiplicity_3d(std::span<const double> heights,
                                 std::span<const VertexId> link, VertexId u, VertexId v) {
  EdgeVerdict verdict;
  const VertexId low = std::min(u, v);
  std::vector<int> signs(heights.size());
  for (std::size_t i = 0; i < heights.size(); ++i) {
    if (heights[i] == 0.0) {
      verdict.degenerate = true;
      signs[i] = link[i] < low ? -1 : 1;
    } else {
      signs[i] = heights[i] < 0.0 ? -1 : 1;
    }
  }
  verdict.multiplicity = cycle_multiplicity(signs);
  return verdict;
}

// ---------------------------------------------------------------------------

namespace {

LinkSpoke spoke(const SimplicialComplex& c, const OneForm& F, const OneForm& G, VertexId u,
                VertexId v, VertexId w) {
  return {F.at(c, u, w), F.at(c, v, w), G.at(c, u, w), G.at(c, v, w)};
}

void require_bound(const SimplicialComplex& c, const OneForm& F, const OneForm& G) {
  if (F.size() != c.num_edges() || G.size() != c.num_edges()) {
    throw Error(ErrorKind::MissingEdgeValue, "1-form size does not match the edge count");
  }
}

EdgeOutcome evaluate_form_edge(const SimplicialComplex& c, const OneForm& F, const OneForm& G,
                               EdgeId e, double epsilon) {
  EdgeOutcome out;
  if (!c.is_interior_edge(e)) {
    out.status = EdgeStatus::Boundary;
    return out;
  }
  const double F_uv = F[e];
  const double G_uv = G[e];
  if (G_uv == 0.0) {
    out.status = EdgeStatus::Skipped;
    return out;
  }
  out.lambda = *lambda_star(F_uv, G_uv);
  const Edge& uv = c.edge(e);
  const EdgeLink link = c.edge_link(e);
  if (c.dim() == 2) {
    out.verdict = edge_multiplicity_2d(F_uv, G_uv, spoke(c, F, G, uv.lo, uv.hi, link.vertices[0]),
                                       spoke(c, F, G, uv.lo, uv.hi, link.vertices[1]), epsilon);
  } else {
    std::vector<double> heights;
    heights.reserve(link.vertices.size());
    for (VertexId w : link.vertices)
      heights.push_back(scaled_spoke_sum(F_uv, G_uv, spoke(c, F, G, uv.lo, uv.hi, w)));
    out.verdict = edge_multiplicity_3d(heights, link.vertices, uv.lo, uv.hi);
  }
  return out;
}

}  // namespace

EdgeTestResult test_edge(const SimplicialComplex& c, const OneForm& F, const OneForm& G,
                         EdgeId e, double epsilon) {
  require_bound(c, F, G);
  const EdgeLink link = c.edge_link(e);
  EdgeTestResult result;
  result.edge = e;
  const double F_uv = F[e];
  const double G_uv = G[e];
  result.lambda_star = lambda_star(F_uv, G_uv);
  if (!result.lambda_star) return result;
  const Edge& uv = c.edge(e);
  for (VertexId w : link.vertices)
    result.link_values.push_back(link_height(F_uv, G_uv, spoke(c, F, G, uv.lo, uv.hi, w)));
  const EdgeOutcome o = evaluate_form_edge(c, F, G, e, epsilon);
  result.multiplicity = o.verdict.multiplicity;
  result.epsilon_triggered = o.verdict.epsilon_triggered;
  result.degenerate = o.verdict.degenerate;
  return result;
}

JacobiResult jacobi_set(const SimplicialComplex& c, const OneForm& F, const OneForm& G,
                        const JacobiOptions& options) {
  require_supported(c);
  require_bound(c, F, G);
  if (options.epsilon < 0.0) throw Error(ErrorKind::BadArgument, "epsilon must be >= 0");
  std::vector<EdgeOutcome> outcomes(c.num_edges());
  parallel_for(outcomes.size(), options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t e = begin; e < end; ++e)
      outcomes[e] = evaluate_form_edge(c, F, G, static_cast<EdgeId>(e), options.epsilon);
  });
  return assemble(c, outcomes);
}

JacobiResult jacobi_set_functions(const SimplicialComplex& c, const ScalarField& f,
                                  const ScalarField& g, unsigned threads) {
  require_supported(c);
  if (f.size() != c.num_vertices() || g.size() != c.num_vertices()) {
    throw Error(ErrorKind::BadArgument, "scalar field size does not match vertex count");
  }
  std::vector<EdgeOutcome> outcomes(c.num_edges());
  parallel_for(outcomes.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto e = static_cast<EdgeId>(i);
      EdgeOutcome& out = outcomes[i];
      if (!c.is_interior_edge(e)) {
        out.status = EdgeStatus::Boundary;
        continue;
      }
      const Edge& uv = c.edge(e);
      const VertexId u = uv.lo;
      const double df_uv = f[uv.hi] - f[u];
      const double dg_uv = g[uv.hi] - g[u];
      if (dg_uv == 0.0) {
        out.status = EdgeStatus::Skipped;
        continue;
      }
      out.lambda = df_uv / -dg_uv;
      // |dg(uv)| * dh(uw), h = f + lambda* g
      auto lower = [&](VertexId w) {
        return sgn(dg_uv) * (dg_uv * (f[w] - f[u]) - df_uv * (g[w] - g[u]));
      };
      const EdgeLink link = c.edge_link(e);
      if (c.dim() == 2) {
        const double da = lower(link.vertices[0]);
        const double db = lower(link.vertices[1]);
        out.verdict.degenerate = da == 0.0 || db == 0.0;
        out.verdict.multiplicity = (da > 0.0 && db > 0.0) || (da < 0.0 && db < 0.0);
      } else {
        std::vector<double> heights;
        heights.reserve(link.vertices.size());
        for (VertexId w : link.vertices) heights.push_back(lower(w));
        out.verdict = edge_multiplicity_3d(heights, link.vertices, uv.lo, uv.hi);
      }
    }
  });
  return assemble(c, outcomes);
}

// ---------------------------------------------------------------------------

JacobiSet::JacobiSet(std::vector<JacobiEdge> edges) : edges_(std::move(edges)) {
  for (JacobiEdge& e : edges_)
    if (e.u > e.v) std::swap(e.u, e.v);
  std::sort(edges_.begin(), edges_.end(), [](const JacobiEdge& a, const JacobiEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (const JacobiEdge& e : edges_) {
    vertices_.push_back(e.u);
    vertices_.push_back(e.v);
  }
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
}

bool JacobiSet::contains(VertexId u, VertexId v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), JacobiEdge{-1, u, v, 0, 0.0, false},
                            [](const JacobiEdge& a, const JacobiEdge& b) {
                              return a.u != b.u ? a.u < b.u : a.v < b.v;
                            });
}

std::vector<Edge> JacobiSet::edge_pairs() const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const JacobiEdge& e : edges_) out.push_back({e.u, e.v});
  return out;
}

DegreeReport degree_report(const JacobiSet& j, const SimplicialComplex* c) {
  DegreeReport report;
  std::vector<VertexId> ends;
  ends.reserve(2 * j.size());
  for (const JacobiEdge& e : j.edges()) {
    ends.push_back(e.u);
    ends.push_back(e.v);
  }
  std::sort(ends.begin(), ends.end());
  for (std::size_t i = 0; i < ends.size();) {
    std::size_t k = i;
    while (k < ends.size() && ends[k] == ends[i]) ++k;
    const int degree = static_cast<int>(k - i);
    report.degrees.emplace_back(ends[i], degree);
    if (degree % 2 != 0) {
      report.odd_vertices.push_back(ends[i]);
      if (c && !c->is_boundary_vertex(ends[i])) report.odd_interior_vertices.push_back(ends[i]);
    }
    i = k;
  }
  return report;
}

}  // namespace pljacobi
