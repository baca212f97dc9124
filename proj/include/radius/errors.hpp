#pragma once

#include <stdexcept>
#include <string>

namespace radius {

/// Malformed input (bad JSON/CSV, unparsable numbers). Message carries a
/// line or record locus where one is known.
class ParseError : public std::runtime_error {
  public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Structurally valid input that violates a data invariant (length mismatch,
/// zero-total counts, bad configuration value). Message names the offending
/// question_id or field.
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Filesystem-level failure (missing input, unwritable output).
class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace radius
