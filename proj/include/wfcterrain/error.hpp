#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wfct {

/// Base for all data-level failures (file contents, value ranges, voids).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unparseable file contents (.hgt, ASCII grid, model file).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An index, dimension or numeric argument is out of its valid range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A nodata cell was encountered where valid elevations are required.
class VoidDataError : public Error {
 public:
  using Error::Error;
};

/// The model is unusable (e.g. empty pattern catalog).
class ModelError : public Error {
 public:
  using Error::Error;
};

/// A gradient field violates the discrete integrability condition.
class IntegrabilityError : public Error {
 public:
  IntegrabilityError(const std::string& what, std::int64_t max_abs_residual,
                     std::uint64_t violation_count)
      : Error(what), max_abs_residual(max_abs_residual), violation_count(violation_count) {}

  std::int64_t max_abs_residual = 0;
  std::uint64_t violation_count = 0;
};

/// Every generation attempt ended in a contradiction.
class GenerationFailure : public Error {
 public:
  GenerationFailure(const std::string& what, unsigned attempts)
      : Error(what), attempts(attempts) {}

  unsigned attempts = 0;
};

}  // namespace wfct
