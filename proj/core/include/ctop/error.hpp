#pragma once

#include <stdexcept>
#include <string>

namespace ctop {

enum class ErrorKind {
  DimensionMismatch,
  NotAComplex,
  NotChainMap,
  UnknownVertex,
  NotSimplicial,
  MixedComplexes,
  UnsupportedRing,
  DegreeOutOfRange,
  NotFiltered,
  RingMismatch,
  NotFunctorial,
  NotNice,
  RepresentativeMissing,
  InvalidPerversity,
  BadStrata,
  NotOpen,
  MissingDualComplex,
  IncompatibleDiagrams,
  ParseError,
  SchemaError,
  ComputeError,
};

const char* errorKindName(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg, std::string where = {})
      : std::runtime_error(std::string(errorKindName(kind)) + ": " + msg),
        kind_(kind), detail_(msg), where_(std::move(where)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& detail() const { return detail_; }
  // location hint: a degree, a face, a JSON pointer, ...
  const std::string& where() const { return where_; }

 private:
  ErrorKind kind_;
  std::string detail_;
  std::string where_;
};

}  // namespace ctop
