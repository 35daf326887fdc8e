#pragma once

#include <stdexcept>
#include <string>

namespace clcst {

/// Operands live on different algebras, grids, or domains.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The pseudoscalar of the requested algebra does not square to -1.
class UnsupportedDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameter outside the domain of an operation (bad M, lambda, grid size...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Unit-integral normalization requested for a window whose integral vanishes.
class ZeroIntegral : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed file or configuration.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace clcst
