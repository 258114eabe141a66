#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pljacobi/jacobi.hpp"
#include "pljacobi/oracle.hpp"

using namespace pljacobi;

namespace {

// Spokes whose sums H(uw)+H(vw) equal `sum`, with F(uv)=0 and G(uv)=1.
LinkSpoke spoke_with_sum(double sum) { return {sum / 2, sum / 2, 0.0, 0.0}; }

ScalarField random_field(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1, 1);
  std::vector<double> v(n);
  for (double& x : v) x = U(rng);
  return ScalarField(std::move(v));
}

OneForm random_form(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.5, 2.0);
  std::bernoulli_distribution coin(0.5);
  std::vector<double> v(n);
  for (double& x : v) x = coin(rng) ? U(rng) : -U(rng);
  return OneForm(std::move(v));
}

std::vector<Edge> pairs_of(const JacobiResult& r) { return r.set.edge_pairs(); }

}  // namespace

TEST_CASE("lambda star") {
  CHECK(*lambda_star(1, -1) == 1.0);
  CHECK(1.0 + *lambda_star(1, -1) * -1.0 == 0.0);
  CHECK(*lambda_star(2, 4) == -0.5);
  CHECK_FALSE(lambda_star(3, 0).has_value());
}

TEST_CASE("link height") {
  // F(uv) = 0 makes lambda* = 0, so H = F.
  CHECK(link_height(0, 1, {1, 3, 7, -2}) == 2.0);
  CHECK(link_height(0, 1, {5, -5, 1, 1}) == 0.0);

  SUBCASE("coboundaries of f = x, g = x + y") {
    const auto c = fixtures::two_triangles();
    const auto f = ScalarField::sample(c, [](double x, double) { return x; });
    const auto g = ScalarField::sample(c, [](double x, double y) { return x + y; });
    const EdgeTestResult r = test_edge(c, coboundary(f, c), coboundary(g, c), c.edge_id(0, 1));
    REQUIRE(r.lambda_star.has_value());
    CHECK(*r.lambda_star == -1.0);
    REQUIRE(r.link_values.size() == 2);
    CHECK(r.link_values[0] == -1.0);  // w = (0.5, 1), h = -y
    CHECK(r.link_values[1] == 1.0);   // w = (0.5, -1)
    CHECK(r.multiplicity == 0);
  }
}

TEST_CASE("2D edge test") {
  const auto check = [](double sa, double sb, double eps, int mult, bool triggered) {
    const EdgeVerdict v = edge_multiplicity_2d(0, 1, spoke_with_sum(sa), spoke_with_sum(sb), eps);
    CHECK(v.multiplicity == mult);
    CHECK(v.epsilon_triggered == triggered);
  };
  check(3, 4, 0, 1, false);
  check(-3, -4, 0, 1, false);
  check(-2, 4, 0, 0, false);
  check(-0.3, 4, 0.5, 1, true);
  check(-0.3, 4, 0.2, 0, false);
  check(3, 4, 0.5, 1, false);  // already in; epsilon does not claim it
  check(0, 4, 0, 0, false);
  CHECK(edge_multiplicity_2d(0, 1, spoke_with_sum(0), spoke_with_sum(4), 0).degenerate);

  SUBCASE("epsilon compares against the unscaled sums") {
    // G(uv) = 4, F(uv) = 0: H = F, sum = 0.3; scaled value is 1.2.
    const LinkSpoke a{0.15, 0.15, 0, 0};
    const LinkSpoke b{-1, -1, 0, 0};
    CHECK(edge_multiplicity_2d(0, 4, a, b, 0.31).multiplicity == 1);
    CHECK(edge_multiplicity_2d(0, 4, a, b, 0.29).multiplicity == 0);
  }
}

TEST_CASE("3D cycle multiplicity examples") {
  const std::vector<int> alt{-1, 1, -1, 1}, neg{-1, -1, -1, -1}, one{-1, 1, 1, 1}, pos{1, 1, 1, 1};
  CHECK(cycle_multiplicity(alt) == 1);
  CHECK(cycle_multiplicity(neg) == 1);
  CHECK(cycle_multiplicity(one) == 0);
  CHECK(cycle_multiplicity(pos) == 1);
  const std::vector<int> three{-1, 1, -1, 1, -1, 1};
  CHECK(cycle_multiplicity(three) == 2);
}

TEST_CASE("3D cycle multiplicity equals the lower-link Betti sum") {
  for (int k = 3; k <= 12; ++k) {
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      std::vector<int> s(k);
      for (int i = 0; i < k; ++i) s[i] = (mask >> i) & 1u ? 1 : -1;
      CHECK(cycle_multiplicity(s) == oracle::lower_link_betti_sum(s));
    }
  }
}

TEST_CASE("3D zero heights use the vertex-id tie-break") {
  const std::vector<double> h{0, 1, 1, 1};
  const std::vector<VertexId> below{0, 5, 6, 7}, above{9, 5, 6, 7};
  EdgeVerdict v = edge_multiplicity_3d(h, below, 3, 4);
  CHECK(v.multiplicity == 0);
  CHECK(v.degenerate);
  v = edge_multiplicity_3d(h, above, 4, 3);
  CHECK(v.multiplicity == 1);
  CHECK(v.degenerate);
}

TEST_CASE("3D function route on a bipyramid") {
  const std::vector<std::vector<int>> patterns{
      {-1, 1, -1, 1}, {-1, -1, -1, -1}, {-1, 1, 1, 1}, {1, 1, 1, 1}, {-1, 1, -1, 1, -1, 1}};
  for (const auto& pattern : patterns) {
    const int k = static_cast<int>(pattern.size());
    const auto c = fixtures::bipyramid(k);
    // g(v) = 1, f(v) = -1, so lambda* = 1 and h = f + g vanishes on u and v.
    std::vector<double> f(c.num_vertices(), 0.0), g(c.num_vertices(), 0.0);
    f[1] = -1;
    g[1] = 1;
    for (int i = 0; i < k; ++i) f[2 + i] = 0.5 * pattern[i];
    const JacobiResult fn = jacobi_set_functions(c, ScalarField(f), ScalarField(g));
    const int expected = oracle::lower_link_betti_sum(pattern);
    CHECK(fn.set.contains(0, 1) == (expected > 0));
    if (expected > 0) CHECK(fn.set.edges()[0].multiplicity == expected);
    CHECK(fn.diagnostics.boundary_edges.size() == c.num_edges() - 1);

    const JacobiResult form = jacobi_set(c, coboundary(ScalarField(f), c), coboundary(ScalarField(g), c));
    CHECK(pairs_of(form) == pairs_of(fn));
  }
}

TEST_CASE("whole-set examples") {
  const auto c = generate_grid(GridScheme::T1, {0, 0, 1, 1}, 0.1);
  std::mt19937_64 rng(5);

  SUBCASE("G identically zero skips every interior edge") {
    const OneForm F = random_form(c.num_edges(), rng);
    const JacobiResult r = jacobi_set(c, F, OneForm(std::vector<double>(c.num_edges(), 0.0)));
    CHECK(r.set.empty());
    CHECK(r.diagnostics.skipped_edges.size() + r.diagnostics.boundary_edges.size() == c.num_edges());
  }
  SUBCASE("F = G is empty at zero epsilon and full at any positive epsilon") {
    const OneForm F = random_form(c.num_edges(), rng);
    std::size_t interior = 0;
    for (std::size_t e = 0; e < c.num_edges(); ++e) interior += c.is_interior_edge(static_cast<EdgeId>(e));
    const JacobiResult r0 = jacobi_set(c, F, F);
    CHECK(r0.set.empty());
    CHECK(r0.diagnostics.degenerate_edges.size() == interior);
    const JacobiResult r1 = jacobi_set(c, F, F, {.epsilon = 1e-9});
    CHECK(r1.set.size() == interior);
    for (const JacobiEdge& e : r1.set.edges()) {
      CHECK(e.lambda_star == -1.0);
      CHECK(e.epsilon_triggered);
    }
  }
  SUBCASE("f = x, g = y gives nothing") {
    const auto f = ScalarField::sample(c, [](double x, double) { return x; });
    const auto g = ScalarField::sample(c, [](double, double y) { return y; });
    CHECK(jacobi_set_functions(c, f, g).set.empty());
    CHECK(jacobi_set(c, coboundary(f, c), coboundary(g, c)).set.empty());
  }
  SUBCASE("f = g is degenerate everywhere and flagged") {
    const auto f = random_field(c.num_vertices(), rng);
    const JacobiResult r = jacobi_set_functions(c, f, f);
    CHECK(r.set.empty());
    CHECK(r.diagnostics.degenerate_edges.size() + r.diagnostics.skipped_edges.size() +
              r.diagnostics.boundary_edges.size() ==
          c.num_edges());
  }
  SUBCASE("size mismatch") {
    CHECK_THROWS_AS(jacobi_set(c, OneForm({1.0}), OneForm({1.0})), Error);
    CHECK_THROWS_AS(jacobi_set_functions(c, ScalarField({1.0}), ScalarField({1.0})), Error);
  }
}

TEST_CASE("scale invariance, orientation and F/G symmetry") {
  const auto c = generate_grid(GridScheme::T1, {-2, -2, 2, 2}, 0.1);
  const auto pair = builtin_pair("fig4");
  const OneForm F = discretize_midpoint(pair.forms.F.as_vector_field(), c);
  const OneForm G = discretize_midpoint(pair.forms.G.as_vector_field(), c);
  const auto base = pairs_of(jacobi_set(c, F, G));
  CHECK_FALSE(base.empty());
  for (double a : {0.001, 0.5, 3.0, 1e6})
    for (double b : {0.01, 2.0, 7.5}) CHECK(pairs_of(jacobi_set(c, F.scaled(a), G.scaled(b))) == base);
  // Swapping F and G keeps every edge where both values are nonzero.
  const auto swapped = pairs_of(jacobi_set(c, G, F));
  auto nonzero = [&](const std::vector<Edge>& edges) {
    std::vector<Edge> out;
    for (Edge e : edges) {
      const EdgeId id = c.edge_id(e.lo, e.hi);
      if (F[id] != 0.0 && G[id] != 0.0) out.push_back(e);
    }
    return out;
  };
  CHECK(nonzero(swapped) == nonzero(base));
  CHECK(pairs_of(jacobi_set(c, F.scaled(-1), G)) == base);
}

TEST_CASE("single-edge reversal and swap invariance") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int trial = 0; trial < 2000; ++trial) {
    const double F_uv = U(rng), G_uv = U(rng);
    const LinkSpoke a{U(rng), U(rng), U(rng), U(rng)}, b{U(rng), U(rng), U(rng), U(rng)};
    const double eps = trial % 2 ? 0.0 : 0.3;
    const EdgeVerdict base = edge_multiplicity_2d(F_uv, G_uv, a, b, eps);
    // v -> u: negate the edge values, swap the spoke roles.
    const EdgeVerdict rev = edge_multiplicity_2d(-F_uv, -G_uv, {a.F_vw, a.F_uw, a.G_vw, a.G_uw},
                                                 {b.F_vw, b.F_uw, b.G_vw, b.G_uw}, eps);
    CHECK(rev.multiplicity == base.multiplicity);
    CHECK(scaled_spoke_sum(F_uv, G_uv, a) ==
          scaled_spoke_sum(-F_uv, -G_uv, {a.F_vw, a.F_uw, a.G_vw, a.G_uw}));
    if (eps == 0.0) {
      const EdgeVerdict sw = edge_multiplicity_2d(G_uv, F_uv, {a.G_uw, a.G_vw, a.F_uw, a.F_vw},
                                                  {b.G_uw, b.G_vw, b.F_uw, b.F_vw}, 0.0);
      CHECK(sw.multiplicity == base.multiplicity);
    }
  }
}

TEST_CASE("epsilon only ever adds edges") {
  const auto c = generate_grid(GridScheme::T1, {-2, -2, 2, 2}, 0.1);
  const auto pair = builtin_pair("fig6");
  const OneForm F = discretize_midpoint(pair.forms.F.as_vector_field(), c);
  const OneForm G = discretize_midpoint(pair.forms.G.as_vector_field(), c);
  std::vector<Edge> prev;
  for (double eps : {0.0, 5e-5, 1e-4, 1e-3, 5e-3, 5e-2}) {
    const JacobiResult r = jacobi_set(c, F, G, {.epsilon = eps});
    const auto cur = pairs_of(r);
    CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end(), [](Edge a, Edge b) {
      return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
    }));
    for (const JacobiEdge& e : r.set.edges())
      if (e.epsilon_triggered) CHECK(eps > 0.0);
    prev = cur;
  }
  CHECK_THROWS_AS(jacobi_set(c, F, G, {.epsilon = -1.0}), Error);
}

TEST_CASE("gradient route and function route agree") {
  std::mt19937_64 rng(2024);
  SUBCASE("2D") {
    const auto c = generate_grid(GridScheme::T2, {0, 0, 1, 1}, 0.1);
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = random_field(c.num_vertices(), rng);
      const auto g = random_field(c.num_vertices(), rng);
      const JacobiResult a = jacobi_set_functions(c, f, g);
      const JacobiResult b = jacobi_set(c, coboundary(f, c), coboundary(g, c));
      CHECK(pairs_of(a) == pairs_of(b));
      CHECK(degree_report(a.set, &c).odd_interior_vertices.empty());
    }
  }
  SUBCASE("3D") {
    const auto c = fixtures::kuhn_cube(3);
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = random_field(c.num_vertices(), rng);
      const auto g = random_field(c.num_vertices(), rng);
      const JacobiResult a = jacobi_set_functions(c, f, g);
      const JacobiResult b = jacobi_set(c, coboundary(f, c), coboundary(g, c));
      REQUIRE(a.set.size() == b.set.size());
      for (std::size_t i = 0; i < a.set.size(); ++i) {
        CHECK(a.set.edges()[i].edge == b.set.edges()[i].edge);
        CHECK(a.set.edges()[i].multiplicity == b.set.edges()[i].multiplicity);
      }
    }
  }
}

TEST_CASE("result does not depend on the thread count") {
  const auto c = generate_grid(GridScheme::T1, {-2, -2, 2, 2}, 0.02);
  const auto pair = builtin_pair("fig6");
  const OneForm F = discretize_midpoint(pair.forms.F.as_vector_field(), c);
  const OneForm G = discretize_midpoint(pair.forms.G.as_vector_field(), c);
  const JacobiResult one = jacobi_set(c, F, G, {.epsilon = 1e-3, .threads = 1});
  for (unsigned t : {2u, 3u, 8u}) {
    const JacobiResult many = jacobi_set(c, F, G, {.epsilon = 1e-3, .threads = t});
    CHECK(pairs_of(many) == pairs_of(one));
    CHECK(many.diagnostics.boundary_edges == one.diagnostics.boundary_edges);
    CHECK(many.diagnostics.degenerate_edges == one.diagnostics.degenerate_edges);
  }
}

TEST_CASE("degree report") {
  CHECK(degree_report(JacobiSet{}).degrees.empty());

  const JacobiSet path({{-1, 1, 0, 1, 0, false}, {-1, 2, 1, 3, 0, false}});
  const DegreeReport r = degree_report(path);
  REQUIRE(r.degrees.size() == 3);
  CHECK(r.degrees[0] == std::pair<VertexId, int>{0, 1});
  CHECK(r.degrees[1] == std::pair<VertexId, int>{1, 2});
  CHECK(r.degrees[2] == std::pair<VertexId, int>{2, 1});
  CHECK(r.odd_vertices == std::vector<VertexId>{0, 2});
  CHECK(path.contains(1, 0));
  CHECK(path.contains(2, 1));
  CHECK_FALSE(path.contains(0, 2));

  SUBCASE("nongradient forms can leave odd vertices") {
    const auto c = generate_grid(GridScheme::T1, {-2, -2, 2, 2}, 0.1);
    const auto pair = builtin_pair("fig4");
    const JacobiResult j = jacobi_set(c, discretize_midpoint(pair.forms.F.as_vector_field(), c),
                                      discretize_midpoint(pair.forms.G.as_vector_field(), c));
    CHECK_FALSE(degree_report(j.set, &c).odd_interior_vertices.empty());
  }
}
