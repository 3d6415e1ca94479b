#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace supercrit {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range configuration. Carries every offending line.
class ConfigError : public Error {
public:
  explicit ConfigError(std::vector<std::string> problems)
      : Error(join(problems)), problems_(std::move(problems)) {}
  const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) {
      if (!out.empty()) out += '\n';
      out += s;
    }
    return out;
  }
  std::vector<std::string> problems_;
};

/// A time integrator produced non-finite values (blow-up or instability).
class NumericalAbort : public Error {
public:
  NumericalAbort(const std::string& what, double last_valid_time)
      : Error(what), last_valid_time_(last_valid_time) {}
  double last_valid_time() const noexcept { return last_valid_time_; }

private:
  double last_valid_time_;
};

/// A checked invariant (sign condition, leakage gate, shift nonnegativity) failed.
class InvariantViolation : public Error {
public:
  using Error::Error;
};

/// A sampled constant failed its stability or boundedness gate.
class EstimateError : public Error {
public:
  using Error::Error;
};

}  // namespace supercrit
