#pragma once

#include <iosfwd>
#include <string>

#include "pljacobi/mesh.hpp"

namespace pljacobi::cli {

/// Everything a subcommand needs; filled by the command line front end.
struct RunConfig {
  std::string subcommand;

  std::string mesh_path;
  std::string out_path;
  std::string out_dir = ".";

  // gen-mesh
  std::string scheme = "T1";
  BBox bbox{-2.0, -2.0, 2.0, 2.0};
  bool bbox_set = false;
  double step = 0.1;

  // discretize
  std::string field_path;     ///< x y u v samples
  std::string scalar_path;    ///< vertex values, coboundary rule
  std::string analytic;       ///< built-in form: fig2F fig2G fig4F fig4G fig6F fig6G
  std::string expr_p, expr_q; ///< custom analytic form P dx + Q dy
  std::string rule = "midpoint";

  // jacobi / jacobi-fn
  std::string form_f_path;
  std::string form_g_path;
  std::string f_path;
  std::string g_path;
  double epsilon = 0.0;
  unsigned threads = 0;

  // oracle / compare / export
  std::string pair = "fig4";
  std::string expr_r, expr_s;
  int resolution = 512;
  std::string jacobi_path;
  std::string contour_path;
  double threshold = 0.1;
  double svg_width = 800.0;
  bool draw_mesh = true;

  // repro
  std::string figure;
};

/// Runs one subcommand. Returns the process exit status; failures print one
/// `error[<Kind>]: <message>` line to `err`.
int run(const RunConfig& config, std::ostream& log, std::ostream& err);

/// Exit status used for each failure class.
int exit_code(ErrorKind kind);

}  // namespace pljacobi::cli
