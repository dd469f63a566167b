#pragma once

#include <stdexcept>
#include <string>

namespace mtcsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: config files, geometry, scenario, fit data.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Geometry that cannot be voxelized; carries the offending feature name.
class GeometryError : public InputError {
 public:
  GeometryError(std::string feature, const std::string& what)
      : InputError(what), feature_(std::move(feature)) {}

  const std::string& feature() const noexcept { return feature_; }

 private:
  std::string feature_;
};

/// Singular systems, non-finite material evaluations, failed linear solves.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// File-system or stream failures.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mtcsim
