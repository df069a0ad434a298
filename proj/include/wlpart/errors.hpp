#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace wlpart {

// Precondition violated by the caller (overlapping sets, k out of range, ...).
class ContractViolation : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string &what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), _line(line) {}

  [[nodiscard]] std::size_t line() const noexcept {
    return _line;
  }

private:
  std::size_t _line;
};

class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class EigenConvergenceError : public SolverError {
public:
  EigenConvergenceError(const std::string &what, std::vector<double> residuals)
      : SolverError(what), _residuals(std::move(residuals)) {}

  // Best residual norms reached for the wanted eigenpairs before giving up.
  [[nodiscard]] const std::vector<double> &residuals() const noexcept {
    return _residuals;
  }

private:
  std::vector<double> _residuals;
};

} // namespace wlpart
