#include <doctest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "pljacobi/io.hpp"

using namespace pljacobi;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::BadArgument;
}

}  // namespace

TEST_CASE("format_double round-trips") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> U(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = U(rng) * std::pow(10.0, (i % 40) - 20);
    CHECK(std::stod(io::format_double(v)) == v);
  }
  CHECK(io::format_double(0.5) == "0.5");
  CHECK(io::format_double(-3) == "-3");
}

TEST_CASE("mesh round trip") {
  for (const auto& c : {generate_grid(GridScheme::T3, {-1, -1, 1, 1}, 0.37), fixtures::kuhn_cube(2)}) {
    std::stringstream s;
    io::write_mesh(s, c);
    const SimplicialComplex back = io::read_mesh(s);
    CHECK(back.dim() == c.dim());
    REQUIRE(back.num_vertices() == c.num_vertices());
    REQUIRE(back.num_cells() == c.num_cells());
    for (std::size_t v = 0; v < c.num_vertices(); ++v) {
      CHECK(back.positions()[v].x == c.positions()[v].x);
      CHECK(back.positions()[v].y == c.positions()[v].y);
      CHECK(back.positions()[v].z == c.positions()[v].z);
    }
    CHECK(back.edges().size() == c.edges().size());
  }
}

TEST_CASE("mesh read errors") {
  auto read = [](const std::string& text) {
    std::istringstream s(text);
    return io::read_mesh(s);
  };
  CHECK(kind_of([&] { read(""); }) == ErrorKind::BadFile);
  CHECK(kind_of([&] { read("2 3 1\n0 0\n1 0\n"); }) == ErrorKind::BadFile);
  CHECK(kind_of([&] { read("2 3 1\n0 0\n1 0\n0 1\n0 1 2\n9\n"); }) == ErrorKind::BadFile);
  CHECK(kind_of([&] { read("2 3 1\n0 0\n1 0\n0 1\n0 1 x\n"); }) == ErrorKind::BadFile);
  CHECK(kind_of([&] { read("4 3 1\n"); }) == ErrorKind::DimensionUnsupported);
  // comments, blank lines and commas are accepted
  const auto ok = read("# mesh\n2,3,1\n\n0,0\n1 0\n0 1\n0 1 2\n");
  CHECK(ok.num_edges() == 3);
}

TEST_CASE("scalar field and 1-form round trips") {
  const auto c = generate_grid(GridScheme::T2, {0, 0, 1, 1}, 0.25);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(-5, 5);
  std::vector<double> fv(c.num_vertices()), yv(c.num_edges());
  for (double& x : fv) x = U(rng);
  for (double& x : yv) x = U(rng);

  std::stringstream fs;
  io::write_scalar_field(fs, ScalarField(fv));
  CHECK(io::read_scalar_field(fs, c.num_vertices()).values() == fv);

  std::stringstream ys;
  io::write_one_form(ys, c, OneForm(yv));
  CHECK(io::read_one_form(ys, c).values() == yv);
}

TEST_CASE("1-form reading") {
  const auto c = fixtures::two_triangles();  // edges 01 02 03 12 13
  SUBCASE("reversed pairs are negated") {
    std::istringstream s("1 0 2\n0 2 1\n0 3 1\n1 2 1\n3 1 -4\n");
    const OneForm y = io::read_one_form(s, c);
    CHECK(y.at(c, 0, 1) == -2.0);
    CHECK(y.at(c, 1, 3) == 4.0);
  }
  SUBCASE("missing edge") {
    std::istringstream s("0 1 2\n0 2 1\n0 3 1\n1 2 1\n");
    CHECK(kind_of([&] { io::read_one_form(s, c); }) == ErrorKind::MissingEdgeValue);
  }
  SUBCASE("edge not in the mesh") {
    std::istringstream s("0 1 2\n0 2 1\n0 3 1\n1 2 1\n1 3 1\n2 3 5\n");
    CHECK(kind_of([&] { io::read_one_form(s, c); }) == ErrorKind::MissingEdgeValue);
  }
  SUBCASE("scalar field with a missing vertex") {
    std::istringstream s("0 1\n1 1\n3 1\n");
    CHECK_THROWS_AS(io::read_scalar_field(s, 4), Error);
  }
}

TEST_CASE("vector samples") {
  std::istringstream s("x,y,u,v\n0,0,1,2\n1,0,3,4\n0,1,5,6\n1,1,7,8\n");
  const auto recs = io::read_vector_samples(s);
  REQUIRE(recs.size() == 4);
  const auto g = VectorSampleGrid::from_records(recs);
  std::stringstream out;
  io::write_vector_samples(out, g);
  const auto again = VectorSampleGrid::from_records(io::read_vector_samples(out));
  bool inexact = false;
  CHECK(again.lookup(1, 1, &inexact).y == 8.0);
}

TEST_CASE("Jacobi CSV round trip") {
  const auto c = fixtures::two_triangles();
  const JacobiSet j({{c.edge_id(0, 1), 0, 1, 1, -0.25, false}, {c.edge_id(1, 3), 1, 3, 2, 1e-17, true}});
  std::stringstream s;
  io::write_jacobi_csv(s, j);
  CHECK(s.str().rfind("u,v,multiplicity,lambda_star,epsilon_triggered\n", 0) == 0);
  const JacobiSet back = io::read_jacobi_csv(s, &c);
  REQUIRE(back.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(back.edges()[i].edge == j.edges()[i].edge);
    CHECK(back.edges()[i].u == j.edges()[i].u);
    CHECK(back.edges()[i].v == j.edges()[i].v);
    CHECK(back.edges()[i].multiplicity == j.edges()[i].multiplicity);
    CHECK(back.edges()[i].lambda_star == j.edges()[i].lambda_star);
    CHECK(back.edges()[i].epsilon_triggered == j.edges()[i].epsilon_triggered);
  }
  std::istringstream bad("u,v,multiplicity,lambda_star,epsilon_triggered\n2,3,1,0,0\n");
  CHECK_THROWS_AS(io::read_jacobi_csv(bad, &c), Error);
}

TEST_CASE("contour CSV round trip") {
  const ContourSet c = marching_squares([](double x, double y) { return x * x + y * y - 1; },
                                        {-2, -2, 2, 2}, 32);
  std::stringstream s;
  io::write_contour_csv(s, c);
  const ContourSet back = io::read_contour_csv(s);
  REQUIRE(back.polylines.size() == c.polylines.size());
  CHECK(back.closed == c.closed);
  for (std::size_t k = 0; k < c.polylines.size(); ++k) {
    REQUIRE(back.polylines[k].size() == c.polylines[k].size());
    for (std::size_t i = 0; i < c.polylines[k].size(); ++i) {
      CHECK(back.polylines[k][i].x == c.polylines[k][i].x);
      CHECK(back.polylines[k][i].y == c.polylines[k][i].y);
    }
  }
}

TEST_CASE("distance report JSON") {
  DistanceReport r;
  r.distances = {0.1, 0.2};
  r.median = 0.15;
  r.threshold = 0.3;
  const std::string json = io::distance_report_json(r);
  CHECK(json.find("\"median\"") != std::string::npos);
  CHECK(json.find("0.15") != std::string::npos);
}
