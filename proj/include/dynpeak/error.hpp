#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dynpeak {

/// Malformed or out-of-range user input: bad CSV rows, invalid parameters,
/// series too short for the configured window. Maps to CLI exit code 1 and
/// HTTP 400.
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what
                                : what),
        line_(line) {}

  /// 1-based source line the error refers to, 0 when not tied to a file.
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace dynpeak
