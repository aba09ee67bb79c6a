#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace syft {

using StateId = std::uint32_t;

/// Bitset over an ordered atom universe: bit k is set iff atom k is true.
using Letter = std::uint32_t;

inline constexpr std::size_t kMaxLetterWidth = 30;
inline constexpr std::size_t kMaxExplicitAtoms = 16;

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class TimeoutError : public std::runtime_error {
 public:
  TimeoutError() : std::runtime_error("time budget exhausted") {}
};

/// Cooperative time budget. Long-running loops call check() and unwind with
/// TimeoutError once the deadline has passed.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;

  static Deadline never() { return Deadline{}; }

  static Deadline after(std::chrono::milliseconds budget) {
    Deadline d;
    d.at_ = Clock::now() + budget;
    return d;
  }

  bool expired() const { return at_ && Clock::now() >= *at_; }

  void check() const {
    if (expired()) throw TimeoutError{};
  }

 private:
  std::optional<Clock::time_point> at_;
};

}  // namespace syft
