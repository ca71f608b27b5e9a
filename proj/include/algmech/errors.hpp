#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace algmech {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset` is the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error("parse error at offset " + std::to_string(offset) + ": " + message), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownIdentifierError : public Error {
 public:
  UnknownIdentifierError(const std::string& name, std::size_t offset)
      : Error("unknown identifier '" + name + "' at offset " + std::to_string(offset)),
        name_(name),
        offset_(offset) {}
  const std::string& name() const { return name_; }
  std::size_t offset() const { return offset_; }

 private:
  std::string name_;
  std::size_t offset_;
};

/// ln/sqrt/real power of a non-positive argument, or division by zero.
class DomainError : public Error {
 public:
  DomainError(const std::string& what, const std::string& subexpression)
      : Error(what + " in '" + subexpression + "'"), subexpression_(subexpression) {}
  const std::string& subexpression() const { return subexpression_; }

 private:
  std::string subexpression_;
};

inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

/// The fiber Hessian (or the symplectic pairing built from it) is not invertible.
class SingularMetricError : public Error {
 public:
  SingularMetricError(const std::string& where, double determinant)
      : Error("singular " + where + " (det = " + format_double(determinant) + ")"),
        determinant_(determinant) {}
  double determinant() const { return determinant_; }

 private:
  double determinant_;
};

/// An operation defined on Γ(E) received a section or function depending on fiber coordinates.
class FiberDependenceError : public Error {
 public:
  using Error::Error;
};

/// A derived quantity needs more derivatives than the evaluation frame carries.
class OrderError : public Error {
 public:
  using Error::Error;
};

/// The supplied function does not witness exactness of L_A theta_L.
class ExactnessError : public Error {
 public:
  ExactnessError(const std::string& message, double residual) : Error(message), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Config or command-line input that cannot be used. `path` is JSON-pointer style.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& path, const std::string& message)
      : Error(path.empty() ? message : path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace algmech
