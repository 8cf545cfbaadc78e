#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nlrad {

double mean(std::span<const double> xs);

/// Sample variance with the n-1 denominator.
double sample_variance(std::span<const double> xs);
double sample_std(std::span<const double> xs);

/// Linear interpolation between order statistics ("type 7"): the q-quantile
/// of n sorted values sits at fractional position (n-1)*q.
double quantile_sorted(std::span<const double> sorted, double q);

/// Convenience: copies, sorts, interpolates.
double quantile(std::span<const double> xs, double q);

double interquartile_range(std::span<const double> xs);

double median(std::span<const double> xs);

/// Ordinary least squares y = a + b*x; returns {slope, intercept, rms_residual}.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
};
LineFit ols_fit(std::span<const double> xs, std::span<const double> ys);

}  // namespace nlrad
