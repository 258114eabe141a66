#pragma once

#include <stdexcept>
#include <string>

namespace pljacobi {

enum class ErrorKind {
  NonManifold,
  InvalidMesh,
  BoundaryEdge,
  StepTooLarge,
  SampleMissing,
  MissingEdgeValue,
  DimensionUnsupported,
  EmptyContour,
  BadFile,
  BadArgument,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library; `kind()` carries the failure class
// so the command line driver can report one diagnostic per class.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pljacobi
