#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sfem {

enum class ErrorKind {
  InvalidArgument,
  InvalidElement,
  DegenerateElement,
  UnsupportedSubdivision,
  CoincidentPoints,
  WedgeDegenerate,
  AdjointZero,
  NonExistent,
  OffSkeleton,
  ZeroArea,
  UnknownTag,
  AllDofsFixed,
  SingularSystem,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Library-wide exception. `kind` identifies the failure class; `element` is
/// the offending element index when one is known (-1 otherwise).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, long element = -1)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        element_(element) {}

  ErrorKind kind() const noexcept { return kind_; }
  long element() const noexcept { return element_; }

 private:
  ErrorKind kind_;
  long element_;
};

}  // namespace sfem
