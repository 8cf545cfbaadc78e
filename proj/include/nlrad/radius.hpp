#pragma once

#include <cstddef>
#include <iosfwd>

#include "nlrad/types.hpp"

namespace nlrad {

/// Result of the reference rule r_opt = alpha * spread * n^(-1/(d+4)).
struct RadiusSelection {
  double r_opt;
  double alpha;
  double spread;
  std::size_t n;
  std::size_t d;
  Norm norm;
};

/// Radius interval [beta * r_opt, r_opt] with 0 < beta < 1, used to fit
/// scaling exponents over a controlled range of scales.
struct RadiusRange {
  double lower;
  double upper;
  double beta;
};

/// Norm- and dimension-dependent coefficient of the reference rule, in the
/// simplified closed forms. d = 1 is norm-independent: (12*sqrt(pi))^(1/5).
double alpha_coefficient(Norm norm, std::size_t d);

/// Same coefficient evaluated through the Gamma-function form that the
/// simplifications were derived from (d >= 2 only). Kept as an independent
/// route: it must agree with alpha_coefficient to 1e-10 relative error.
double alpha_general(Norm norm, std::size_t d);

/// Robust scale estimate min(sigma_hat, IQR/1.34). sigma_hat is the sample
/// standard deviation of the series; for trajectories both terms average
/// over marginals. Throws DegenerateInputError if the spread is zero.
double spread_estimate(const TimeSeries& series);
double spread_estimate(const Trajectory& trajectory);

RadiusSelection reference_radius(double spread, std::size_t n, std::size_t d,
                                 Norm norm);

RadiusRange radius_range(const RadiusSelection& selection, double beta);

/// Baseline radius selection rules used for comparisons.
struct BaselineRule {
  enum class Kind {
    FractionOfSigma,      // c * sigma_hat
    FractionOfMaxExtent,  // c * max pairwise distance
    FixedRecurrenceRate,  // q-quantile of pairwise distances (self excluded)
  };
  Kind kind;
  double value;  // c > 0, or q in (0,1)
};

double baseline_radius(const Trajectory& trajectory, const BaselineRule& rule);

/// Data-independent scale factors of the estimator's AMISE expansion:
///   bias_scale(r)     = r^2/2 * W2(K)
///   variance_scale(r) = W1(K) / (n * r^d),  W1(K) = 1/tau_{p,d}
/// The density-dependent factors (laplacian and value of the density) are
/// not estimated and are deliberately excluded.
struct AmiseScales {
  double bias_scale;
  double variance_scale;
};
AmiseScales amise_bias_variance(double r, std::size_t n, std::size_t d,
                                Norm norm);

/// Second moment of the uniform kernel over the L_p unit ball
/// (1/3 for d = 1, Gamma form for d >= 2).
double w2_uniform_kernel(Norm norm, std::size_t d);

/// Emits the coefficient table as CSV (columns p,d,alpha) for documentation
/// regeneration.
void write_alpha_table_csv(std::ostream& out, std::size_t d_max = 5);

}  // namespace nlrad
