#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace kisinram {

// Mathematical rejection of a well-formed input (CLI exit code 2),
// e.g. "height-exceeded" or "not-triangular".
struct MathError : std::runtime_error {
  std::string code;
  std::string context;
  MathError(std::string code_, const std::string& msg, std::string ctx = "")
      : std::runtime_error(msg), code(std::move(code_)), context(std::move(ctx)) {}
};

// Malformed input, I/O or schema problems (CLI exit code 1).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace kisinram
