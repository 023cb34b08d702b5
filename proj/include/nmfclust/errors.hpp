// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <stdexcept>
#include <string>

namespace nmfclust {

/// Malformed input data: ragged rows, dimension mismatches, bad lengths.
struct InputShapeError : std::runtime_error {
  explicit InputShapeError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input values violate an invariant beyond the allowed tolerance.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Exact integer arithmetic left the representable range.
struct OverflowError : std::runtime_error {
  explicit OverflowError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace nmfclust
