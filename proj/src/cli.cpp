#include "pljacobi/cli.hpp"

#include <filesystem>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "pljacobi/forms.hpp"
#include "pljacobi/io.hpp"
#include "pljacobi/jacobi.hpp"
#include "pljacobi/oracle.hpp"
#include "pljacobi/svg.hpp"

namespace pljacobi::cli {

namespace fs = std::filesystem;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BadArgument: return 2;
    case ErrorKind::BadFile: return 3;
    case ErrorKind::MissingEdgeValue: return 4;
    case ErrorKind::NonManifold:
    case ErrorKind::InvalidMesh: return 5;
    case ErrorKind::DimensionUnsupported: return 6;
    default: return 1;
  }
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::BadArgument, what);
}

void require_path(const std::string& path, const char* flag) {
  require(!path.empty(), std::string("missing required option ") + flag);
}

void require_input(const std::string& path, const char* flag) {
  require_path(path, flag);
  if (!fs::exists(path)) throw Error(ErrorKind::BadFile, "cannot open '" + path + "'");
}

template <typename Writer>
void write_with(const std::string& path, Writer writer) {
  std::ostringstream ss;
  writer(ss);
  io::write_text_file(path, ss.str());
}

SimplicialComplex load_mesh(const std::string& path) {
  std::istringstream in(io::read_text_file(path));
  try {
    return io::read_mesh(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

template <typename Reader>
auto load(const std::string& path, Reader reader) {
  std::istringstream in(io::read_text_file(path));
  try {
    return reader(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

nlohmann::ordered_json config_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["subcommand"] = c.subcommand;
  auto put = [&](const char* key, const std::string& v) {
    if (!v.empty()) j[key] = v;
  };
  put("mesh", c.mesh_path);
  put("out", c.out_path);
  put("field", c.field_path);
  put("scalar", c.scalar_path);
  put("analytic", c.analytic);
  put("formF", c.form_f_path);
  put("formG", c.form_g_path);
  put("f", c.f_path);
  put("g", c.g_path);
  put("jacobi", c.jacobi_path);
  put("contour", c.contour_path);
  put("figure", c.figure);
  j["scheme"] = c.scheme;
  j["bbox"] = {c.bbox.xmin, c.bbox.ymin, c.bbox.xmax, c.bbox.ymax};
  j["step"] = c.step;
  j["rule"] = c.rule;
  j["eps"] = c.epsilon;
  j["pair"] = c.pair;
  j["res"] = c.resolution;
  j["threshold"] = c.threshold;
  return j;
}

void echo_config(const RunConfig& c, const std::string& next_to) {
  io::write_text_file(next_to + ".config.json", config_json(c).dump(2) + "\n");
}

AnalyticForm named_form(const std::string& name) {
  require(name.size() == 5, "unknown analytic form '" + name + "'");
  const BuiltinPair pair = builtin_pair(name.substr(0, 4));
  if (name[4] == 'F') return pair.forms.F;
  if (name[4] == 'G') return pair.forms.G;
  throw Error(ErrorKind::BadArgument, "unknown analytic form '" + name + "'");
}

AnalyticFormPair resolve_pair(const RunConfig& c) {
  if (c.pair != "custom") return builtin_pair(c.pair).forms;
  require(!c.expr_p.empty() && !c.expr_q.empty() && !c.expr_r.empty() && !c.expr_s.empty(),
          "--pair custom needs --P, --Q, --R and --S");
  return {{parse_expression(c.expr_p), parse_expression(c.expr_q)},
          {parse_expression(c.expr_r), parse_expression(c.expr_s)}};
}

void write_jacobi_outputs(const std::string& out, const SimplicialComplex& mesh,
                          const JacobiResult& result) {
  write_with(out, [&](std::ostream& s) { io::write_jacobi_csv(s, result.set); });
  const DegreeReport degrees = degree_report(result.set, &mesh);
  write_with(out + ".report",
             [&](std::ostream& s) { io::write_report(s, mesh, result, degrees); });
}

// ---------------------------------------------------------------------------

int cmd_gen_mesh(const RunConfig& c, std::ostream& log) {
  require_path(c.out_path, "--out");
  const SimplicialComplex mesh = generate_grid(parse_scheme(c.scheme), c.bbox, c.step);
  write_with(c.out_path, [&](std::ostream& s) { io::write_mesh(s, mesh); });
  echo_config(c, c.out_path);
  log << "mesh: " << mesh.num_vertices() << " vertices, " << mesh.num_edges() << " edges, "
      << mesh.num_cells() << " triangles\n";
  return 0;
}

int cmd_discretize(const RunConfig& c, std::ostream& log) {
  require_input(c.mesh_path, "--mesh");
  require_path(c.out_path, "--out");
  const SimplicialComplex mesh = load_mesh(c.mesh_path);
  OneForm form;
  if (!c.scalar_path.empty()) {
    require_input(c.scalar_path, "--scalar");
    const ScalarField f = load(c.scalar_path, [&](std::istream& in) {
      return io::read_scalar_field(in, mesh.num_vertices());
    });
    form = coboundary(f, mesh);
  } else if (!c.field_path.empty()) {
    require(c.rule == "midpoint", "sampled fields support only --rule midpoint");
    require_input(c.field_path, "--field");
    const auto records = load(c.field_path, [](std::istream& in) { return io::read_vector_samples(in); });
    const VectorSampleGrid grid = VectorSampleGrid::from_records(records);
    MidpointDiagnostics diag;
    form = discretize_midpoint(grid, mesh, &diag);
    if (!diag.inexact_vertices.empty()) {
      log << "warning: " << diag.inexact_vertices.size()
          << " vertices matched to the nearest sample\n";
    }
  } else {
    AnalyticForm analytic;
    if (!c.analytic.empty()) {
      analytic = named_form(c.analytic);
    } else {
      require(!c.expr_p.empty() && !c.expr_q.empty(),
              "discretize needs --field, --scalar, --analytic or --P/--Q");
      analytic = {parse_expression(c.expr_p), parse_expression(c.expr_q)};
    }
    if (c.rule == "midpoint") {
      form = discretize_midpoint(analytic.as_vector_field(), mesh);
    } else if (c.rule.rfind("quad", 0) == 0) {
      int order = 0;
      try {
        order = std::stoi(c.rule.substr(4));
      } catch (const std::exception&) {
        throw Error(ErrorKind::BadArgument, "quadrature rule must look like quad3");
      }
      form = discretize_quadrature(analytic, mesh, order);
    } else {
      throw Error(ErrorKind::BadArgument, "unknown rule '" + c.rule + "'");
    }
  }
  write_with(c.out_path, [&](std::ostream& s) { io::write_one_form(s, mesh, form); });
  echo_config(c, c.out_path);
  log << "form: " << form.size() << " edge values\n";
  return 0;
}

int cmd_jacobi(const RunConfig& c, std::ostream& log) {
  require_input(c.mesh_path, "--mesh");
  require_input(c.form_f_path, "--formF");
  require_input(c.form_g_path, "--formG");
  require_path(c.out_path, "--out");
  require(c.epsilon >= 0.0, "--eps must be >= 0");
  const SimplicialComplex mesh = load_mesh(c.mesh_path);
  auto read_form = [&](std::istream& in) { return io::read_one_form(in, mesh); };
  const OneForm F = load(c.form_f_path, read_form);
  const OneForm G = load(c.form_g_path, read_form);
  const JacobiResult result = jacobi_set(mesh, F, G, {c.epsilon, c.threads});
  write_jacobi_outputs(c.out_path, mesh, result);
  echo_config(c, c.out_path);
  log << "jacobi: " << result.set.size() << " edges\n";
  return 0;
}

int cmd_jacobi_fn(const RunConfig& c, std::ostream& log) {
  require_input(c.mesh_path, "--mesh");
  require_input(c.f_path, "--f");
  require_input(c.g_path, "--g");
  require_path(c.out_path, "--out");
  const SimplicialComplex mesh = load_mesh(c.mesh_path);
  auto read_field = [&](std::istream& in) { return io::read_scalar_field(in, mesh.num_vertices()); };
  const ScalarField f = load(c.f_path, read_field);
  const ScalarField g = load(c.g_path, read_field);
  const JacobiResult result = jacobi_set_functions(mesh, f, g, c.threads);
  write_jacobi_outputs(c.out_path, mesh, result);
  echo_config(c, c.out_path);
  log << "jacobi: " << result.set.size() << " edges\n";
  return 0;
}

int cmd_oracle(const RunConfig& c, std::ostream& log) {
  require_path(c.out_path, "--out");
  const ContourSet contour = marching_squares(determinant_field(resolve_pair(c)), c.bbox, c.resolution);
  write_with(c.out_path, [&](std::ostream& s) { io::write_contour_csv(s, contour); });
  echo_config(c, c.out_path);
  log << "contour: " << contour.polylines.size() << " polylines, " << contour.num_segments()
      << " segments";
  if (contour.degenerate_cells) log << ", " << contour.degenerate_cells << " degenerate cells";
  log << '\n';
  return 0;
}

int cmd_compare(const RunConfig& c, std::ostream& log) {
  require_input(c.mesh_path, "--mesh");
  require_input(c.jacobi_path, "--jacobi");
  require_input(c.contour_path, "--contour");
  require_path(c.out_path, "--out");
  const SimplicialComplex mesh = load_mesh(c.mesh_path);
  const JacobiSet j = load(c.jacobi_path, [&](std::istream& in) { return io::read_jacobi_csv(in, &mesh); });
  const ContourSet contour = load(c.contour_path, [](std::istream& in) { return io::read_contour_csv(in); });
  const DistanceReport report = distance_report(j, mesh.positions(), contour, c.threshold);
  io::write_text_file(c.out_path, io::distance_report_json(report));
  echo_config(c, c.out_path);
  log << "median distance " << report.median << " over " << report.distances.size() << " edges\n";
  return 0;
}

int cmd_degrees(const RunConfig& c, std::ostream& log) {
  require_input(c.mesh_path, "--mesh");
  require_input(c.jacobi_path, "--jacobi");
  const SimplicialComplex mesh = load_mesh(c.mesh_path);
  const JacobiSet j = load(c.jacobi_path, [&](std::istream& in) { return io::read_jacobi_csv(in, &mesh); });
  const DegreeReport report = degree_report(j, &mesh);
  std::ostringstream s;
  s << "vertices " << report.degrees.size() << '\n';
  s << "odd_vertices " << report.odd_vertices.size() << '\n';
  s << "odd_interior_vertices " << report.odd_interior_vertices.size() << '\n';
  s << "[degrees]\n";
  for (auto [v, d] : report.degrees) s << v << ' ' << d << '\n';
  if (c.out_path.empty()) {
    log << s.str();
  } else {
    io::write_text_file(c.out_path, s.str());
    log << "odd-degree vertices: " << report.odd_vertices.size() << " ("
        << report.odd_interior_vertices.size() << " interior)\n";
  }
  return 0;
}

int cmd_export(const RunConfig& c, std::ostream& log) {
  require_input(c.mesh_path, "--mesh");
  require_path(c.out_path, "--out");
  const SimplicialComplex mesh = load_mesh(c.mesh_path);
  std::optional<JacobiSet> j;
  std::optional<ContourSet> contour;
  if (!c.jacobi_path.empty())
    j = load(c.jacobi_path, [&](std::istream& in) { return io::read_jacobi_csv(in, &mesh); });
  if (!c.contour_path.empty())
    contour = load(c.contour_path, [](std::istream& in) { return io::read_contour_csv(in); });
  SvgStyle style;
  style.width_px = c.svg_width;
  style.draw_mesh = c.draw_mesh;
  io::write_text_file(c.out_path, export_svg(mesh, j ? &*j : nullptr, contour ? &*contour : nullptr,
                                             style, c.bbox_set ? &c.bbox : nullptr));
  log << "wrote " << c.out_path << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// Figure reproduction

struct ReproCase {
  std::string stem;
  SimplicialComplex mesh;
  JacobiResult result;
  const ContourSet* contour;
  double threshold;
};

void write_case(const fs::path& dir, const ReproCase& rc, const RunConfig& c,
                std::ostream& log) {
  const std::string base = (dir / rc.stem).string();
  write_with(base + "_mesh.txt", [&](std::ostream& s) { io::write_mesh(s, rc.mesh); });
  write_jacobi_outputs(base + "_jacobi.csv", rc.mesh, rc.result);
  SvgStyle style;
  style.width_px = c.svg_width;
  style.draw_mesh = c.draw_mesh;
  io::write_text_file(base + ".svg", export_svg(rc.mesh, &rc.result.set, rc.contour, style, &rc.contour->box));
  std::string summary;
  if (rc.contour->num_segments() > 0 && !rc.result.set.empty()) {
    const DistanceReport report =
        distance_report(rc.result.set, rc.mesh.positions(), *rc.contour, rc.threshold);
    io::write_text_file(base + "_distance.json", io::distance_report_json(report));
    summary = ", median distance " + io::format_double(report.median);
  }
  const DegreeReport degrees = degree_report(rc.result.set, &rc.mesh);
  log << rc.stem << ": " << rc.result.set.size() << " Jacobi edges, "
      << degrees.odd_interior_vertices.size() << " odd interior vertices" << summary << '\n';
}

int cmd_repro(const RunConfig& c, std::ostream& log) {
  const fs::path dir = c.out_dir;
  fs::create_directories(dir);
  const BBox square{-2.0, -2.0, 2.0, 2.0};
  const std::string& fig = c.figure;

  auto form_case = [&](const std::string& stem, const std::string& pair_name, GridScheme scheme,
                       double h, double eps, const ContourSet& contour) {
    const BuiltinPair pair = builtin_pair(pair_name);
    SimplicialComplex mesh = generate_grid(scheme, square, h);
    const OneForm F = discretize_midpoint(pair.forms.F.as_vector_field(), mesh);
    const OneForm G = discretize_midpoint(pair.forms.G.as_vector_field(), mesh);
    JacobiResult result = jacobi_set(mesh, F, G, {eps, c.threads});
    write_case(dir, {stem, std::move(mesh), std::move(result), &contour, 3.0 * h}, c, log);
  };
  auto contour_for = [&](const std::string& pair_name, const BBox& box) {
    ContourSet contour =
        marching_squares(determinant_field(builtin_pair(pair_name).forms), box, c.resolution);
    write_with((dir / (fig + "_contour.csv")).string(),
               [&](std::ostream& s) { io::write_contour_csv(s, contour); });
    return contour;
  };

  if (fig == "fig2") {
    const double h = 1.0 / 6.0;
    const BBox box{-2.0, -1.5, 2.0, 2.0};
    const BuiltinPair pair = builtin_pair("fig2");
    const ContourSet contour = contour_for("fig2", box);
    SimplicialComplex mesh = generate_grid(GridScheme::T1, box, h);
    const ScalarField f = ScalarField::sample(mesh, pair.functions->first);
    const ScalarField g = ScalarField::sample(mesh, pair.functions->second);
    JacobiResult result = jacobi_set_functions(mesh, f, g, c.threads);
    write_case(dir, {"fig2", std::move(mesh), std::move(result), &contour, 3.0 * h}, c, log);
  } else if (fig == "fig4") {
    const ContourSet contour = contour_for("fig4", square);
    for (GridScheme s : {GridScheme::T1, GridScheme::T2, GridScheme::T3})
      form_case(std::string("fig4_") + to_string(s), "fig4", s, 0.1, 0.0, contour);
  } else if (fig == "fig6") {
    const ContourSet contour = contour_for("fig6", square);
    form_case("fig6_T1", "fig6", GridScheme::T1, 0.1, 0.0, contour);
  } else if (fig == "table1") {
    const ContourSet contour = contour_for("fig6", square);
    for (double h : {0.1, 0.05, 0.01})
      for (double eps : {0.0, 0.00005, 0.0001, 0.001, 0.005})
        form_case("table1_h" + io::format_double(h) + "_eps" + io::format_double(eps), "fig6",
                  GridScheme::T1, h, eps, contour);
  } else {
    throw Error(ErrorKind::BadArgument,
                "repro target must be fig2, fig4, fig6 or table1, got '" + fig + "'");
  }
  echo_config(c, (dir / fig).string());
  return 0;
}

}  // namespace

int run(const RunConfig& config, std::ostream& log, std::ostream& err) {
  try {
    const std::string& cmd = config.subcommand;
    if (cmd == "gen-mesh") return cmd_gen_mesh(config, log);
    if (cmd == "discretize") return cmd_discretize(config, log);
    if (cmd == "jacobi") return cmd_jacobi(config, log);
    if (cmd == "jacobi-fn") return cmd_jacobi_fn(config, log);
    if (cmd == "oracle") return cmd_oracle(config, log);
    if (cmd == "compare") return cmd_compare(config, log);
    if (cmd == "degrees") return cmd_degrees(config, log);
    if (cmd == "export") return cmd_export(config, log);
    if (cmd == "repro") return cmd_repro(config, log);
    throw Error(ErrorKind::BadArgument, "unknown subcommand '" + cmd + "'");
  } catch (const Error& e) {
    err << "error[" << to_string(e.kind()) << "]: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const fs::filesystem_error& e) {
    err << "error[BadFile]: " << e.what() << '\n';
    return exit_code(ErrorKind::BadFile);
  }
}

}  // namespace pljacobi::cli
