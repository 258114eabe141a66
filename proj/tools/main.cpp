#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pljacobi/cli.hpp"

namespace {

// Accepts "xmin,ymin,xmax,ymax".
std::string parse_bbox(const std::string& text, pljacobi::BBox& box) {
  std::istringstream in(text);
  double v[4];
  char sep = 0;
  for (int i = 0; i < 4; ++i) {
    if (!(in >> v[i])) return "bbox must be xmin,ymin,xmax,ymax";
    if (i < 3 && (!(in >> sep) || sep != ',')) return "bbox must be xmin,ymin,xmax,ymax";
  }
  box = {v[0], v[1], v[2], v[3]};
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  using pljacobi::cli::RunConfig;
  RunConfig cfg;
  CLI::App app{"Piecewise-linear Jacobi sets of 1-form and function pairs"};
  app.require_subcommand(1);

  auto bbox_option = [&](CLI::App* sub) {
    sub->add_option_function<std::string>(
           "--bbox",
           [&](const std::string& s) {
             const std::string err = parse_bbox(s, cfg.bbox);
             if (!err.empty()) throw CLI::ValidationError("--bbox", err);
             cfg.bbox_set = true;
           },
           "xmin,ymin,xmax,ymax");
  };
  auto threads_option = [&](CLI::App* sub) {
    sub->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
  };

  auto* gen = app.add_subcommand("gen-mesh", "generate a regular plane triangulation");
  gen->add_option("--scheme", cfg.scheme, "T1, T2 or T3")->check(CLI::IsMember({"T1", "T2", "T3"}));
  bbox_option(gen);
  gen->add_option("--step", cfg.step, "lattice step h")->required();
  gen->add_option("--out", cfg.out_path, "mesh file")->required();

  auto* disc = app.add_subcommand("discretize", "turn a field into a discrete 1-form");
  disc->add_option("--mesh", cfg.mesh_path)->required();
  disc->add_option("--field", cfg.field_path, "x y u v vector samples");
  disc->add_option("--scalar", cfg.scalar_path, "vertex values (coboundary)");
  disc->add_option("--analytic", cfg.analytic, "fig2F fig2G fig4F fig4G fig6F fig6G");
  disc->add_option("--P", cfg.expr_p, "dx coefficient expression");
  disc->add_option("--Q", cfg.expr_q, "dy coefficient expression");
  disc->add_option("--rule", cfg.rule, "midpoint or quadN");
  disc->add_option("--out", cfg.out_path, "1-form file")->required();

  auto* jac = app.add_subcommand("jacobi", "Jacobi set of two 1-forms");
  jac->add_option("--mesh", cfg.mesh_path)->required();
  jac->add_option("--formF", cfg.form_f_path)->required();
  jac->add_option("--formG", cfg.form_g_path)->required();
  jac->add_option("--eps", cfg.epsilon, "edge-test threshold")->check(CLI::NonNegativeNumber);
  jac->add_option("--out", cfg.out_path, "Jacobi CSV")->required();
  threads_option(jac);

  auto* jfn = app.add_subcommand("jacobi-fn", "Jacobi set of two scalar functions");
  jfn->add_option("--mesh", cfg.mesh_path)->required();
  jfn->add_option("--f", cfg.f_path)->required();
  jfn->add_option("--g", cfg.g_path)->required();
  jfn->add_option("--out", cfg.out_path, "Jacobi CSV")->required();
  threads_option(jfn);

  auto* orc = app.add_subcommand("oracle", "zero contour of the coefficient determinant");
  orc->add_option("--pair", cfg.pair, "fig2, fig4, fig6 or custom")
      ->check(CLI::IsMember({"fig2", "fig4", "fig6", "custom"}));
  orc->add_option("--P", cfg.expr_p);
  orc->add_option("--Q", cfg.expr_q);
  orc->add_option("--R", cfg.expr_r);
  orc->add_option("--S", cfg.expr_s);
  bbox_option(orc);
  orc->add_option("--res", cfg.resolution, "cells per axis")->check(CLI::Range(8, 1 << 14));
  orc->add_option("--out", cfg.out_path, "contour CSV")->required();

  auto* cmp = app.add_subcommand("compare", "distances from Jacobi edges to the contour");
  cmp->add_option("--jacobi", cfg.jacobi_path)->required();
  cmp->add_option("--mesh", cfg.mesh_path)->required();
  cmp->add_option("--contour", cfg.contour_path)->required();
  cmp->add_option("--threshold", cfg.threshold, "distance counted as far")->check(CLI::NonNegativeNumber);
  cmp->add_option("--out", cfg.out_path, "JSON report")->required();

  auto* deg = app.add_subcommand("degrees", "vertex degrees of a Jacobi set");
  deg->add_option("--jacobi", cfg.jacobi_path)->required();
  deg->add_option("--mesh", cfg.mesh_path)->required();
  deg->add_option("--out", cfg.out_path, "report file (stdout if omitted)");

  auto* exp = app.add_subcommand("export", "render mesh, contour and Jacobi set to SVG");
  exp->add_option("--mesh", cfg.mesh_path)->required();
  exp->add_option("--jacobi", cfg.jacobi_path);
  exp->add_option("--contour", cfg.contour_path);
  bbox_option(exp);
  exp->add_option("--width", cfg.svg_width, "pixels")->check(CLI::PositiveNumber);
  exp->add_flag("!--no-mesh", cfg.draw_mesh, "omit mesh edges");
  exp->add_option("--out", cfg.out_path, "SVG file")->required();

  auto* rep = app.add_subcommand("repro", "reproduce a figure: fig2 fig4 fig6 table1");
  rep->add_option("figure", cfg.figure)->required()->check(
      CLI::IsMember({"fig2", "fig4", "fig6", "table1"}));
  rep->add_option("--out-dir", cfg.out_dir, "output directory");
  rep->add_option("--res", cfg.resolution, "contour cells per axis")->check(CLI::Range(8, 1 << 14));
  rep->add_option("--width", cfg.svg_width, "pixels")->check(CLI::PositiveNumber);
  rep->add_flag("!--no-mesh", cfg.draw_mesh, "omit mesh edges");
  threads_option(rep);

  CLI11_PARSE(app, argc, argv);
  cfg.subcommand = app.get_subcommands().front()->get_name();
  return pljacobi::cli::run(cfg, std::cout, std::cerr);
}
