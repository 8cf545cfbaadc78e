#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nlrad {

/// L_p norms with closed-form ball volumes and radius coefficients.
/// Only these three are supported; general real p is rejected at parse time.
enum class Norm { L1, L2, Linf };

const char* norm_name(Norm norm);
Norm norm_from_string(std::string_view name);

// Error taxonomy. The CLI maps each type to a distinct exit code.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniformly sampled scalar signal. dt is the sampling step in time units
/// (1 for maps).
struct TimeSeries {
  std::vector<double> values;
  double dt = 1.0;

  std::size_t size() const { return values.size(); }
};

/// Throws unless the series has >= 2 finite samples and dt > 0.
void validate(const TimeSeries& series);

/// n points in R^d, stored row-major. Either delay-embedded from a scalar
/// series (tau = embedding delay) or a native state-space trajectory
/// (tau = 1). Carries the norm used by distance-based estimators downstream.
struct Trajectory {
  std::vector<double> data;  // n * d, row-major
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t tau = 1;
  Norm norm = Norm::L2;

  std::span<const double> point(std::size_t i) const {
    return {data.data() + i * d, d};
  }
  double coord(std::size_t i, std::size_t k) const { return data[i * d + k]; }
};

void validate(const Trajectory& trajectory);

}  // namespace nlrad
