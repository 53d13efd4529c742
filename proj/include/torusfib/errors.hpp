#pragma once

#include <stdexcept>
#include <string>

namespace torusfib {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonPrimitive : public Error {
 public:
  explicit NonPrimitive(const std::string& what) : Error("non-primitive vector: " + what) {}
};

class NotUnimodular : public Error {
 public:
  explicit NotUnimodular(const std::string& what) : Error("matrix is not unimodular: " + what) {}
};

class ParallelCurves : public Error {
 public:
  explicit ParallelCurves(const std::string& what) : Error("curves are parallel: " + what) {}
};

class ExtensionObstructed : public Error {
 public:
  explicit ExtensionObstructed(const std::string& what)
      : Error("fibration does not extend: " + what) {}
};

class InvalidPiece : public Error {
 public:
  explicit InvalidPiece(const std::string& what) : Error("invalid piece: " + what) {}
};

class NotCoprime : public Error {
 public:
  explicit NotCoprime(const std::string& what) : Error("parameters not coprime: " + what) {}
};

class MeridianConditionViolated : public Error {
 public:
  explicit MeridianConditionViolated(const std::string& what)
      : Error("meridian condition violated: " + what) {}
};

class MissingH1Data : public Error {
 public:
  explicit MissingH1Data(const std::string& what) : Error("missing H1 data: " + what) {}
};

/// Raised by the manifold file reader; `field()` names the offending JSON path.
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace torusfib
