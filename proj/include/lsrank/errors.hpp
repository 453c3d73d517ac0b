#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lsrank {

// Graph is disconnected where a connected one is required.  Carries the
// component decomposition so callers can report which vertices are isolated
// from each other.
class NotConnectedError : public std::runtime_error {
 public:
  NotConnectedError(std::string what, std::vector<std::vector<int>> components)
      : std::runtime_error(std::move(what)), components_(std::move(components)) {}

  const std::vector<std::vector<int>>& components() const { return components_; }

 private:
  std::vector<std::vector<int>> components_;
};

// Iterative solver failed to reach tolerance within its iteration cap.
// Carries the best iterate found so far.
class SolverError : public std::runtime_error {
 public:
  SolverError(std::string what, std::vector<double> best_iterate,
              double residual_norm)
      : std::runtime_error(std::move(what)),
        best_iterate_(std::move(best_iterate)),
        residual_norm_(residual_norm) {}

  const std::vector<double>& best_iterate() const { return best_iterate_; }
  double residual_norm() const { return residual_norm_; }

 private:
  std::vector<double> best_iterate_;
  double residual_norm_;
};

// Malformed input file.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string what, int line = -1)
      : std::runtime_error(std::move(what)), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace lsrank
