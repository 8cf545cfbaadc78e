#include "nlrad/stats.hpp"

#include <algorithm>
#include <cmath>

#include "nlrad/descriptive.hpp"
#include "nlrad/rng.hpp"
#include "nlrad/types.hpp"

namespace nlrad {

namespace {
constexpr double kZ95 = 1.96;
}

SampleSummary gaussian_ci(std::span<const double> samples) {
  if (samples.size() < 2)
    throw ArgumentError("gaussian_ci needs at least 2 samples");
  const double m = mean(samples);
  const double s = sample_std(samples);
  const double half =
      kZ95 * s / std::sqrt(static_cast<double>(samples.size()));
  return SampleSummary{m, s, m - half, m + half, samples.size(),
                       SampleSummary::Method::Gaussian};
}

SampleSummary bootstrap_ci(std::span<const double> samples,
                           std::size_t resamples, std::uint64_t seed) {
  if (samples.size() < 2)
    throw ArgumentError("bootstrap_ci needs at least 2 samples");
  if (resamples < 100)
    throw ArgumentError("bootstrap_ci needs at least 100 resamples");
  Rng rng(seed);
  const std::size_t n = samples.size();
  std::vector<double> means(resamples);
  for (std::size_t b = 0; b < resamples; ++b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      sum += samples[rng.next() % n];
    means[b] = sum / static_cast<double>(n);
  }
  std::sort(means.begin(), means.end());
  return SampleSummary{mean(samples), sample_std(samples),
                       quantile_sorted(means, 0.025),
                       quantile_sorted(means, 0.975), samples.size(),
                       SampleSummary::Method::Bootstrap};
}

MsePoint mse_point(double r, std::span<const double> estimates, double truth) {
  if (estimates.size() < 2)
    throw ArgumentError("mse_point needs at least 2 estimates");
  const double bias = mean(estimates) - truth;
  const double mse = bias * bias + sample_variance(estimates);
  MsePoint point;
  point.r = r;
  point.mse = mse;
  point.finite = mse > 0.0;
  point.log_mse = point.finite ? std::log(mse) : 0.0;
  return point;
}

std::vector<MsePoint> mse_curve(
    const std::map<double, std::vector<double>>& estimates_per_r,
    double truth) {
  if (estimates_per_r.empty())
    throw ArgumentError("mse_curve: empty estimate map");
  std::vector<MsePoint> curve;
  curve.reserve(estimates_per_r.size());
  for (const auto& [r, estimates] : estimates_per_r)
    curve.push_back(mse_point(r, estimates, truth));
  return curve;
}

double two_sample_z(std::span<const double> group_a,
                    std::span<const double> group_b) {
  if (group_a.size() < 2 || group_b.size() < 2)
    throw ArgumentError("two_sample_z needs >= 2 samples per group");
  const double va = sample_variance(group_a);
  const double vb = sample_variance(group_b);
  const double pooled = va / static_cast<double>(group_a.size()) +
                        vb / static_cast<double>(group_b.size());
  if (!(pooled > 0.0))
    throw DegenerateInputError("two_sample_z: zero pooled variance");
  return (mean(group_a) - mean(group_b)) / std::sqrt(pooled);
}

}  // namespace nlrad
