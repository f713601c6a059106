#pragma once

#include <stdexcept>
#include <string>

namespace vemsf {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameterError : public Error {
 public:
  using Error::Error;
};

/// Degenerate or self-intersecting geometry.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Malformed mesh file; carries the offending line number (1-based).
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Mesh violates a structural invariant (ring size, conformity, tags).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// k >= eta_E: the element needs internal moments, which are not implemented.
class UnsupportedElementError : public Error {
 public:
  UnsupportedElementError(int cell, const std::string& what)
      : Error("cell " + std::to_string(cell) + ": " + what), cell_(cell) {}
  int cell() const noexcept { return cell_; }

 private:
  int cell_;
};

class RankDeficiencyError : public Error {
 public:
  using Error::Error;
};

class ConditioningError : public Error {
 public:
  using Error::Error;
};

class SingularMaterialError : public Error {
 public:
  using Error::Error;
};

class ConfigurationError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

}  // namespace vemsf
