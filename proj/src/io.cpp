#include "pljacobi/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace pljacobi::io {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

// Splits a line into tokens on whitespace and commas.
std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',' || ch == ' ' || ch == '\t' || ch == '\r') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-empty, non-comment line split into tokens; false at EOF.
  bool next(std::vector<std::string>& out) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      out = tokens(line);
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::BadFile, "line " + std::to_string(line_no_) + ": " + why);
  }

  double number(const std::string& tok) const {
    double v = 0.0;
    const char* end = tok.data() + tok.size();
    const auto res = std::from_chars(tok.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end) fail("expected a number, got '" + tok + "'");
    return v;
  }

  long integer(const std::string& tok) const {
    long v = 0;
    const char* end = tok.data() + tok.size();
    const auto res = std::from_chars(tok.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end) fail("expected an integer, got '" + tok + "'");
    return v;
  }

  void expect_fields(const std::vector<std::string>& t, std::size_t n) const {
    if (t.size() != n) {
      fail("expected " + std::to_string(n) + " fields, got " + std::to_string(t.size()));
    }
  }

 private:
  std::istream& in_;
  long line_no_ = 0;
};

bool numeric(const std::string& tok) {
  double v = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

}  // namespace

// ---------------------------------------------------------------------------

void write_mesh(std::ostream& out, const SimplicialComplex& c) {
  out << c.dim() << ' ' << c.num_vertices() << ' ' << c.num_cells() << '\n';
  for (const Point& p : c.positions()) {
    out << format_double(p.x) << ' ' << format_double(p.y);
    if (c.dim() == 3) out << ' ' << format_double(p.z);
    out << '\n';
  }
  for (std::size_t k = 0; k < c.num_cells(); ++k) {
    const auto verts = c.cell_vertices(static_cast<CellId>(k));
    for (std::size_t i = 0; i < verts.size(); ++i) out << (i ? " " : "") << verts[i];
    out << '\n';
  }
}

SimplicialComplex read_mesh(std::istream& in) {
  LineReader reader(in);
  std::vector<std::string> t;
  if (!reader.next(t)) reader.fail("empty mesh file");
  reader.expect_fields(t, 3);
  const long dim = reader.integer(t[0]);
  const long nv = reader.integer(t[1]);
  const long nc = reader.integer(t[2]);
  if (dim != 2 && dim != 3) {
    throw Error(ErrorKind::DimensionUnsupported,
                "mesh dimension must be 2 or 3, got " + std::to_string(dim));
  }
  if (nv < 0 || nc < 0) reader.fail("negative counts in header");

  std::vector<Point> pts(static_cast<std::size_t>(nv));
  for (long v = 0; v < nv; ++v) {
    if (!reader.next(t)) reader.fail("mesh ends before all vertices were read");
    if (t.size() != static_cast<std::size_t>(dim) && !(dim == 2 && t.size() == 3)) {
      reader.fail("vertex needs " + std::to_string(dim) + " coordinates");
    }
    pts[v].x = reader.number(t[0]);
    pts[v].y = reader.number(t[1]);
    if (t.size() == 3) pts[v].z = reader.number(t[2]);
  }
  std::vector<Cell> cells(static_cast<std::size_t>(nc), Cell{-1, -1, -1, -1});
  for (long k = 0; k < nc; ++k) {
    if (!reader.next(t)) reader.fail("mesh ends before all cells were read");
    reader.expect_fields(t, static_cast<std::size_t>(dim + 1));
    for (long i = 0; i <= dim; ++i) cells[k][i] = static_cast<VertexId>(reader.integer(t[i]));
  }
  if (reader.next(t)) reader.fail("trailing data after the last cell");
  return SimplicialComplex::build(static_cast<int>(dim), std::move(pts), std::move(cells));
}

void write_scalar_field(std::ostream& out, const ScalarField& f) {
  for (std::size_t v = 0; v < f.size(); ++v)
    out << v << ' ' << format_double(f[static_cast<VertexId>(v)]) << '\n';
}

ScalarField read_scalar_field(std::istream& in, std::size_t num_vertices) {
  LineReader reader(in);
  std::vector<double> values(num_vertices, 0.0);
  std::vector<char> seen(num_vertices, 0);
  std::vector<std::string> t;
  while (reader.next(t)) {
    reader.expect_fields(t, 2);
    const long v = reader.integer(t[0]);
    if (v < 0 || static_cast<std::size_t>(v) >= num_vertices) {
      reader.fail("vertex id " + std::to_string(v) + " out of range");
    }
    if (seen[v]) reader.fail("duplicate value for vertex " + std::to_string(v));
    seen[v] = 1;
    values[v] = reader.number(t[1]);
  }
  for (std::size_t v = 0; v < num_vertices; ++v)
    if (!seen[v]) throw Error(ErrorKind::BadFile, "vertex " + std::to_string(v) + " has no value");
  return ScalarField(std::move(values));
}

void write_one_form(std::ostream& out, const SimplicialComplex& c, const OneForm& form) {
  const auto edges = c.edges();
  for (std::size_t e = 0; e < edges.size(); ++e)
    out << edges[e].lo << ' ' << edges[e].hi << ' ' << format_double(form[static_cast<EdgeId>(e)])
        << '\n';
}

OneForm read_one_form(std::istream& in, const SimplicialComplex& c) {
  LineReader reader(in);
  std::vector<double> values(c.num_edges(), 0.0);
  std::vector<char> seen(c.num_edges(), 0);
  std::vector<std::string> t;
  while (reader.next(t)) {
    reader.expect_fields(t, 3);
    const auto u = static_cast<VertexId>(reader.integer(t[0]));
    const auto v = static_cast<VertexId>(reader.integer(t[1]));
    const double y = reader.number(t[2]);
    const EdgeId e = c.find_edge(u, v);
    if (e < 0) {
      throw Error(ErrorKind::MissingEdgeValue, "form has a value on (" + std::to_string(u) + "," +
                                                   std::to_string(v) +
                                                   "), which is not an edge of the mesh");
    }
    if (seen[e]) reader.fail("duplicate value for edge (" + std::to_string(u) + "," +
                             std::to_string(v) + ")");
    seen[e] = 1;
    values[e] = u < v ? y : -y;
  }
  for (std::size_t e = 0; e < seen.size(); ++e) {
    if (!seen[e]) {
      const Edge& uv = c.edge(static_cast<EdgeId>(e));
      throw Error(ErrorKind::MissingEdgeValue, "form has no value on edge (" +
                                                   std::to_string(uv.lo) + "," +
                                                   std::to_string(uv.hi) + ")");
    }
  }
  return OneForm(std::move(values));
}

std::vector<VectorSampleGrid::Record> read_vector_samples(std::istream& in) {
  LineReader reader(in);
  std::vector<VectorSampleGrid::Record> records;
  std::vector<std::string> t;
  bool first = true;
  while (reader.next(t)) {
    if (first && !t.empty() && !numeric(t[0])) {
      first = false;
      continue;
    }
    first = false;
    reader.expect_fields(t, 4);
    records.push_back({reader.number(t[0]), reader.number(t[1]), reader.number(t[2]),
                       reader.number(t[3])});
  }
  return records;
}

void write_vector_samples(std::ostream& out, const VectorSampleGrid& grid) {
  out << "x,y,u,v\n";
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) {
      const Vec2& s = grid.sample(i, j);
      out << format_double(grid.x0() + i * grid.dx()) << ',' << format_double(grid.y0() + j * grid.dy())
          << ',' << format_double(s.x) << ',' << format_double(s.y) << '\n';
    }
}

void write_jacobi_csv(std::ostream& out, const JacobiSet& j) {
  out << "u,v,multiplicity,lambda_star,epsilon_triggered\n";
  for (const JacobiEdge& e : j.edges()) {
    out << e.u << ',' << e.v << ',' << e.multiplicity << ',' << format_double(e.lambda_star) << ','
        << (e.epsilon_triggered ? 1 : 0) << '\n';
  }
}

JacobiSet read_jacobi_csv(std::istream& in, const SimplicialComplex* c) {
  LineReader reader(in);
  std::vector<JacobiEdge> edges;
  std::vector<std::string> t;
  bool first = true;
  while (reader.next(t)) {
    if (first && !t.empty() && !numeric(t[0])) {
      first = false;
      continue;
    }
    first = false;
    reader.expect_fields(t, 5);
    JacobiEdge e;
    e.u = static_cast<VertexId>(reader.integer(t[0]));
    e.v = static_cast<VertexId>(reader.integer(t[1]));
    e.multiplicity = static_cast<int>(reader.integer(t[2]));
    e.lambda_star = reader.number(t[3]);
    e.epsilon_triggered = reader.integer(t[4]) != 0;
    if (e.multiplicity < 1) reader.fail("Jacobi edges must have multiplicity >= 1");
    if (c) {
      e.edge = c->find_edge(e.u, e.v);
      if (e.edge < 0) {
        throw Error(ErrorKind::MissingEdgeValue, "Jacobi edge (" + std::to_string(e.u) + "," +
                                                     std::to_string(e.v) +
                                                     ") is not an edge of the mesh");
      }
    }
    edges.push_back(e);
  }
  return JacobiSet(std::move(edges));
}

void write_contour_csv(std::ostream& out, const ContourSet& contour) {
  out << "polyline,x,y\n";
  for (std::size_t k = 0; k < contour.polylines.size(); ++k)
    for (const Vec2& p : contour.polylines[k])
      out << k << ',' << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

ContourSet read_contour_csv(std::istream& in) {
  LineReader reader(in);
  std::map<long, std::vector<Vec2>> lines;
  std::vector<std::string> t;
  bool first = true;
  BBox box{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
           std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
  while (reader.next(t)) {
    if (first && !t.empty() && !numeric(t[0])) {
      first = false;
      continue;
    }
    first = false;
    reader.expect_fields(t, 3);
    const Vec2 p{reader.number(t[1]), reader.number(t[2])};
    lines[reader.integer(t[0])].push_back(p);
    box = {std::min(box.xmin, p.x), std::min(box.ymin, p.y), std::max(box.xmax, p.x),
           std::max(box.ymax, p.y)};
  }
  ContourSet contour;
  contour.box = box;
  for (auto& [id, pts] : lines) {
    const bool closed = pts.size() > 2 && pts.front().x == pts.back().x && pts.front().y == pts.back().y;
    contour.polylines.push_back(std::move(pts));
    contour.closed.push_back(closed);
  }
  return contour;
}

void write_report(std::ostream& out, const SimplicialComplex& c, const JacobiResult& r,
                  const DegreeReport& degrees) {
  auto list_edges = [&](const char* title, const std::vector<EdgeId>& ids) {
    out << "[" << title << "] " << ids.size() << '\n';
    for (EdgeId e : ids) out << c.edge(e).lo << ' ' << c.edge(e).hi << '\n';
  };
  out << "jacobi_edges " << r.set.size() << '\n';
  out << "jacobi_vertices " << r.set.vertices().size() << '\n';
  list_edges("skipped_edges", r.diagnostics.skipped_edges);
  list_edges("boundary_edges", r.diagnostics.boundary_edges);
  list_edges("degenerate_edges", r.diagnostics.degenerate_edges);
  out << "[odd_degree_vertices] " << degrees.odd_vertices.size() << '\n';
  for (VertexId v : degrees.odd_vertices)
    out << v << (c.is_boundary_vertex(v) ? " boundary" : " interior") << '\n';
}

std::string distance_report_json(const DistanceReport& r) {
  nlohmann::ordered_json j;
  j["edges"] = r.distances.size();
  j["median"] = r.median;
  j["mean"] = r.mean;
  j["max"] = r.max;
  j["threshold"] = r.threshold;
  j["beyond_threshold"] = r.beyond_threshold;
  j["fraction_within"] = r.fraction_within();
  return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::BadFile, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::BadFile, "cannot write '" + path + "'");
  out << contents;
  if (!out) throw Error(ErrorKind::BadFile, "failed writing '" + path + "'");
}

}  // namespace pljacobi::io
