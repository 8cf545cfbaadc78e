#include "nlrad/radius.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "nlrad/descriptive.hpp"
#include "nlrad/norms.hpp"

namespace nlrad {

namespace {

constexpr double kPi = std::numbers::pi;

// 1/p as a real exponent; Linf is the p -> inf limit.
double inverse_p(Norm norm) {
  switch (norm) {
    case Norm::L1:
      return 1.0;
    case Norm::L2:
      return 0.5;
    case Norm::Linf:
      return 0.0;
  }
  return 0.0;
}

void check_dimension(std::size_t d) {
  if (d == 0) throw ArgumentError("dimension must be >= 1");
}

double spread_from_moments(double sigma, double iqr) {
  const double spread = std::min(sigma, iqr / 1.34);
  if (!(spread > 0.0))
    throw DegenerateInputError(
        "degenerate input: spread estimate is zero (constant data)");
  return spread;
}

std::vector<double> pairwise_distances(const Trajectory& trajectory) {
  const std::size_t n = trajectory.n;
  std::vector<double> dists;
  dists.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      dists.push_back(
          distance(trajectory.point(i), trajectory.point(j), trajectory.norm));
  return dists;
}

}  // namespace

double alpha_coefficient(Norm norm, std::size_t d) {
  check_dimension(d);
  const double dim = static_cast<double>(d);
  if (d == 1) return std::pow(12.0 * std::sqrt(kPi), 0.2);
  const double exponent = 1.0 / (dim + 4.0);
  switch (norm) {
    case Norm::L1:
      // [(d+2)! * (d+1) * pi^(d/2)]^(1/(d+4))
      return std::exp(exponent * (std::lgamma(dim + 3.0) + std::log(dim + 1.0) +
                                  0.5 * dim * std::log(kPi)));
    case Norm::L2:
      // 2 * [Gamma(d/2 + 2) / 2]^(1/(d+4))
      return 2.0 * std::exp(exponent * (std::lgamma(0.5 * dim + 2.0) -
                                        std::numbers::ln2));
    case Norm::Linf:
      // [36 * pi^(d/2) / (d+2)]^(1/(d+4))
      return std::exp(exponent * (std::log(36.0) + 0.5 * dim * std::log(kPi) -
                                  std::log(dim + 2.0)));
  }
  throw ArgumentError("alpha_coefficient: invalid norm");
}

double alpha_general(Norm norm, std::size_t d) {
  if (d < 2) throw ArgumentError("alpha_general requires d >= 2");
  const double dim = static_cast<double>(d);
  const double ip = inverse_p(norm);
  // log of the unit-ball volume through the general Gamma form, keeping this
  // route independent of the simplified expressions.
  const double log_tau = dim * (std::numbers::ln2 + std::lgamma(ip + 1.0)) -
                         std::lgamma(dim * ip + 1.0);
  const double log_numerator =
      std::log(4.0) + dim * std::log(2.0 * std::sqrt(kPi)) +
      2.0 * (std::log(3.0) + std::lgamma((dim + 2.0) * ip + 1.0) +
             std::lgamma(ip + 1.0));
  const double log_denominator =
      log_tau + std::log(dim + 2.0) +
      2.0 * (std::lgamma(dim * ip + 1.0) + std::lgamma(1.0 + 3.0 * ip));
  return std::exp((log_numerator - log_denominator) / (dim + 4.0));
}

double spread_estimate(const TimeSeries& series) {
  validate(series);
  return spread_from_moments(sample_std(series.values),
                             interquartile_range(series.values));
}

double spread_estimate(const Trajectory& trajectory) {
  validate(trajectory);
  // Average marginal variance under the root, marginal IQRs averaged the
  // same way.
  double var_sum = 0.0;
  double iqr_sum = 0.0;
  std::vector<double> column(trajectory.n);
  for (std::size_t k = 0; k < trajectory.d; ++k) {
    for (std::size_t i = 0; i < trajectory.n; ++i)
      column[i] = trajectory.coord(i, k);
    var_sum += sample_variance(column);
    iqr_sum += interquartile_range(column);
  }
  const double dim = static_cast<double>(trajectory.d);
  return spread_from_moments(std::sqrt(var_sum / dim), iqr_sum / dim);
}

RadiusSelection reference_radius(double spread, std::size_t n, std::size_t d,
                                 Norm norm) {
  check_dimension(d);
  if (!(spread > 0.0)) throw ArgumentError("reference_radius: spread must be > 0");
  if (n < 2) throw ArgumentError("reference_radius: n must be >= 2");
  const double alpha = alpha_coefficient(norm, d);
  const double r_opt =
      alpha * spread *
      std::pow(static_cast<double>(n), -1.0 / (static_cast<double>(d) + 4.0));
  return RadiusSelection{r_opt, alpha, spread, n, d, norm};
}

RadiusRange radius_range(const RadiusSelection& selection, double beta) {
  if (!(beta > 0.0) || !(beta < 1.0))
    throw ArgumentError("radius_range: beta must lie in (0, 1)");
  return RadiusRange{beta * selection.r_opt, selection.r_opt, beta};
}

double baseline_radius(const Trajectory& trajectory, const BaselineRule& rule) {
  validate(trajectory);
  switch (rule.kind) {
    case BaselineRule::Kind::FractionOfSigma: {
      if (!(rule.value > 0.0))
        throw ArgumentError("baseline_radius: fraction must be > 0");
      double var_sum = 0.0;
      std::vector<double> column(trajectory.n);
      for (std::size_t k = 0; k < trajectory.d; ++k) {
        for (std::size_t i = 0; i < trajectory.n; ++i)
          column[i] = trajectory.coord(i, k);
        var_sum += sample_variance(column);
      }
      const double sigma =
          std::sqrt(var_sum / static_cast<double>(trajectory.d));
      if (!(sigma > 0.0))
        throw DegenerateInputError("baseline_radius: constant trajectory");
      return rule.value * sigma;
    }
    case BaselineRule::Kind::FractionOfMaxExtent: {
      if (!(rule.value > 0.0))
        throw ArgumentError("baseline_radius: fraction must be > 0");
      const auto dists = pairwise_distances(trajectory);
      const double extent = *std::max_element(dists.begin(), dists.end());
      if (!(extent > 0.0))
        throw DegenerateInputError("baseline_radius: constant trajectory");
      return rule.value * extent;
    }
    case BaselineRule::Kind::FixedRecurrenceRate: {
      if (!(rule.value > 0.0) || !(rule.value < 1.0))
        throw ArgumentError("baseline_radius: rate must lie in (0, 1)");
      auto dists = pairwise_distances(trajectory);
      std::sort(dists.begin(), dists.end());
      if (!(dists.back() > 0.0))
        throw DegenerateInputError("baseline_radius: constant trajectory");
      return quantile_sorted(dists, rule.value);
    }
  }
  throw ArgumentError("baseline_radius: invalid rule");
}

double w2_uniform_kernel(Norm norm, std::size_t d) {
  check_dimension(d);
  if (d == 1) return 1.0 / 3.0;
  const double dim = static_cast<double>(d);
  const double ip = inverse_p(norm);
  // Gamma(d/p + 1) Gamma(1 + 3/p) / (3 Gamma((d+2)/p + 1) Gamma(1/p + 1))
  return std::exp(std::lgamma(dim * ip + 1.0) + std::lgamma(1.0 + 3.0 * ip) -
                  std::lgamma((dim + 2.0) * ip + 1.0) -
                  std::lgamma(ip + 1.0)) /
         3.0;
}

AmiseScales amise_bias_variance(double r, std::size_t n, std::size_t d,
                                Norm norm) {
  check_dimension(d);
  if (!(r > 0.0)) throw ArgumentError("amise_bias_variance: r must be > 0");
  if (n < 1) throw ArgumentError("amise_bias_variance: n must be >= 1");
  const double w1 = 1.0 / unit_ball_volume(norm, d);
  AmiseScales scales;
  scales.bias_scale = 0.5 * r * r * w2_uniform_kernel(norm, d);
  scales.variance_scale = w1 / (static_cast<double>(n) *
                                std::pow(r, static_cast<double>(d)));
  return scales;
}

void write_alpha_table_csv(std::ostream& out, std::size_t d_max) {
  out << "p,d,alpha\r\n";
  const Norm norms[] = {Norm::L1, Norm::L2, Norm::Linf};
  const char* labels[] = {"1", "2", "inf"};
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t d = 1; d <= d_max; ++d) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", alpha_coefficient(norms[k], d));
      out << labels[k] << ',' << d << ',' << buf << "\r\n";
    }
}

}  // namespace nlrad
