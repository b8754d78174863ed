#pragma once

#include <stdexcept>
#include <string>

namespace skelcoh {

/// Domain error carrying a stable machine-readable code (e.g. "NotAUnit").
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(detail), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Malformed input: bad JSON, unparsable rational, unknown flag value.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace skelcoh
