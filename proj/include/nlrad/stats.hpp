#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace nlrad {

struct SampleSummary {
  double mean;
  double sample_std;
  double ci_low;   // 95%
  double ci_high;  // 95%
  std::size_t n_samples;
  enum class Method { Gaussian, Bootstrap } method;
};

/// mean +/- 1.96 * s / sqrt(n).
SampleSummary gaussian_ci(std::span<const double> samples);

/// Percentile bootstrap (2.5%, 97.5%) of the resampled mean. Seeded and
/// reproducible.
SampleSummary bootstrap_ci(std::span<const double> samples,
                           std::size_t resamples, std::uint64_t seed);

struct MsePoint {
  double r;
  double mse;      // squared bias + sample variance
  double log_mse;  // natural log; meaningful only when finite
  bool finite;     // false when mse == 0 (log would be -inf)
};

/// MSE(r) = (mean - truth)^2 + sample variance, per radius.
std::vector<MsePoint> mse_curve(
    const std::map<double, std::vector<double>>& estimates_per_r,
    double truth);

MsePoint mse_point(double r, std::span<const double> estimates, double truth);

/// z = (mean_a - mean_b) / sqrt(s_a^2/n_a + s_b^2/n_b). Throws
/// DegenerateInputError when both groups have zero variance.
double two_sample_z(std::span<const double> group_a,
                    std::span<const double> group_b);

}  // namespace nlrad
