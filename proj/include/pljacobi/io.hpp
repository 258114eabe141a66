#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pljacobi/forms.hpp"
#include "pljacobi/jacobi.hpp"
#include "pljacobi/mesh.hpp"
#include "pljacobi/oracle.hpp"

namespace pljacobi::io {

// Plain-text formats. Readers accept whitespace or commas as separators and
// skip blank lines and lines starting with '#'. All failures throw
// pljacobi::Error with kind BadFile unless noted.

/// Shortest decimal that round-trips the double.
std::string format_double(double v);

/// `dim nv nc`, then nv coordinate lines (dim values each), then nc lines of
/// dim+1 vertex ids.
void write_mesh(std::ostream& out, const SimplicialComplex& c);
SimplicialComplex read_mesh(std::istream& in);

/// `vertex_id value` per line.
void write_scalar_field(std::ostream& out, const ScalarField& f);
ScalarField read_scalar_field(std::istream& in, std::size_t num_vertices);

/// `u v value` per line in canonical orientation (u < v). Reversed pairs are
/// accepted and negated. Edges missing from the file, or absent from the
/// mesh, throw Error{MissingEdgeValue}.
void write_one_form(std::ostream& out, const SimplicialComplex& c, const OneForm& form);
OneForm read_one_form(std::istream& in, const SimplicialComplex& c);

/// `x y u v` records; a non-numeric first line is treated as a header.
std::vector<VectorSampleGrid::Record> read_vector_samples(std::istream& in);
void write_vector_samples(std::ostream& out, const VectorSampleGrid& grid);

/// `u,v,multiplicity,lambda_star,epsilon_triggered` with a header row.
void write_jacobi_csv(std::ostream& out, const JacobiSet& j);
/// Edge ids are resolved against `c` when given, else left at -1.
JacobiSet read_jacobi_csv(std::istream& in, const SimplicialComplex* c = nullptr);

/// `polyline,x,y` with a header row; closed polylines repeat their first point.
void write_contour_csv(std::ostream& out, const ContourSet& contour);
ContourSet read_contour_csv(std::istream& in);

/// Sidecar diagnostics for a Jacobi run.
void write_report(std::ostream& out, const SimplicialComplex& c, const JacobiResult& r,
                  const DegreeReport& degrees);

/// JSON summary of a distance report.
std::string distance_report_json(const DistanceReport& r);

/// Helpers that open files and attach the path to error messages.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace pljacobi::io
