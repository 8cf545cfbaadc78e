#include "nlrad/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <ostream>

#include "nlrad/descriptive.hpp"
#include "nlrad/io.hpp"
#include "nlrad/norms.hpp"
#include "nlrad/parallel.hpp"

namespace nlrad {

namespace {

// Counts, for each grid radius, the unordered cross pairs with distance
// strictly below it. One pass over all pairs; each pair increments the
// bucket of its smallest covering radius and a prefix sum finishes the job.
// Buckets are integers, so the reduction is exact under any thread split.
std::vector<std::uint64_t> cross_pair_counts(const Trajectory& trajectory,
                                             const std::vector<double>& radii) {
  const std::size_t n = trajectory.n;
  const std::size_t d = trajectory.d;
  const double* data = trajectory.data.data();
  const Norm norm = trajectory.norm;

  std::vector<std::uint64_t> buckets(radii.size() + 1, 0);
  std::mutex merge_mutex;
  parallel_chunks(0, n, [&](std::size_t lo, std::size_t hi) {
    std::vector<std::uint64_t> local(radii.size() + 1, 0);
    for (std::size_t i = lo; i < hi; ++i) {
      const double* a = data + i * d;
      for (std::size_t j = i + 1; j < n; ++j) {
        const double* b = data + j * d;
        double dist = 0.0;
        switch (norm) {
          case Norm::L1:
            for (std::size_t k = 0; k < d; ++k) dist += std::abs(a[k] - b[k]);
            break;
          case Norm::L2: {
            double ss = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
              const double diff = a[k] - b[k];
              ss += diff * diff;
            }
            dist = std::sqrt(ss);
            break;
          }
          case Norm::Linf:
            for (std::size_t k = 0; k < d; ++k)
              dist = std::max(dist, std::abs(a[k] - b[k]));
            break;
        }
        const auto it = std::upper_bound(radii.begin(), radii.end(), dist);
        ++local[static_cast<std::size_t>(it - radii.begin())];
      }
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    for (std::size_t k = 0; k < local.size(); ++k) buckets[k] += local[k];
  });

  std::vector<std::uint64_t> cumulative(radii.size(), 0);
  std::uint64_t running = 0;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    running += buckets[k];
    cumulative[k] = running;
  }
  return cumulative;
}

void check_radii(const std::vector<double>& radii) {
  if (radii.empty())
    throw ArgumentError("correlation_curve: empty radius grid");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0.0))
      throw ArgumentError("correlation_curve: radii must be positive");
    if (k > 0 && !(radii[k] > radii[k - 1]))
      throw ArgumentError("correlation_curve: radii must be strictly increasing");
  }
}

}  // namespace

double correlation_sum(const Trajectory& trajectory, double r,
                       bool include_self) {
  if (!(r > 0.0)) throw ArgumentError("correlation_sum: r must be > 0");
  validate(trajectory);
  const auto cross = cross_pair_counts(trajectory, {r});
  const double n = static_cast<double>(trajectory.n);
  if (include_self)
    return (n + 2.0 * static_cast<double>(cross[0])) / (n * n);
  return 2.0 * static_cast<double>(cross[0]) / (n * (n - 1.0));
}

CorrelationCurve correlation_curve(const Trajectory& trajectory,
                                   std::vector<double> radii,
                                   bool include_self) {
  validate(trajectory);
  check_radii(radii);
  const auto cross = cross_pair_counts(trajectory, radii);
  CorrelationCurve curve;
  curve.n = trajectory.n;
  curve.norm = trajectory.norm;
  curve.self_pairs = include_self;
  curve.radii = std::move(radii);
  curve.counts.resize(curve.radii.size());
  curve.sums.resize(curve.radii.size());
  const double n = static_cast<double>(curve.n);
  const double divisor = include_self ? n * n : n * (n - 1.0);
  for (std::size_t k = 0; k < curve.radii.size(); ++k) {
    curve.counts[k] = 2 * cross[k] + (include_self ? curve.n : 0);
    curve.sums[k] = static_cast<double>(curve.counts[k]) / divisor;
  }
  return curve;
}

DimensionEstimate gp_dimension(const CorrelationCurve& curve,
                               std::optional<FitRange> range) {
  if (curve.radii.size() != curve.sums.size() || curve.radii.empty())
    throw ArgumentError("gp_dimension: malformed curve");
  const bool have_counts = curve.counts.size() == curve.radii.size();
  const std::uint64_t self_count = curve.self_pairs ? curve.n : 0;
  // The saturation plateau is everything tied with the curve's maximum;
  // computed over the whole curve so a range fit sees the same selection as
  // the exported in_fit_range column.
  double c_max = 0.0;
  for (double c : curve.sums) c_max = std::max(c_max, c);

  std::vector<double> log_r;
  std::vector<double> log_c;
  double r_lo = 0.0;
  double r_hi = 0.0;
  for (std::size_t k = 0; k < curve.radii.size(); ++k) {
    const double r = curve.radii[k];
    const double c = curve.sums[k];
    if (range && (r < range->lo || r > range->hi)) continue;
    if (!(c > 0.0)) continue;
    if (c >= c_max - 1e-12) continue;  // saturation plateau
    if (have_counts && curve.counts[k] <= self_count) continue;  // no cross pairs
    if (log_r.empty()) r_lo = r;
    r_hi = r;
    log_r.push_back(std::log(r));
    log_c.push_back(std::log(c));
  }
  if (log_r.size() < 2)
    throw InsufficientDataError(
        "gp_dimension: fewer than 2 usable grid points in range (range too "
        "narrow or radii too sparse)");
  const LineFit fit = ols_fit(log_r, log_c);
  return DimensionEstimate{fit.slope, r_lo, r_hi, log_r.size(),
                           fit.rms_residual};
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo))
    throw ArgumentError("geometric_grid: need 0 < lo < hi");
  if (count < 2) throw ArgumentError("geometric_grid: count must be >= 2");
  std::vector<double> grid(count);
  const double log_lo = std::log(lo);
  const double step = (std::log(hi) - log_lo) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k)
    grid[k] = std::exp(log_lo + step * static_cast<double>(k));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

void write_curve_csv(std::ostream& out, const CorrelationCurve& curve,
                     std::optional<FitRange> range) {
  const bool have_counts = curve.counts.size() == curve.radii.size();
  const std::uint64_t self_count = curve.self_pairs ? curve.n : 0;
  double c_max = 0.0;
  for (double c : curve.sums) c_max = std::max(c_max, c);
  CsvWriter csv(out);
  csv.row({"r", "log_r", "C", "log_C", "in_fit_range"});
  for (std::size_t k = 0; k < curve.radii.size(); ++k) {
    const double r = curve.radii[k];
    const double c = curve.sums[k];
    bool usable = c > 0.0 && c < c_max - 1e-12;
    if (have_counts && curve.counts[k] <= self_count) usable = false;
    if (range && (r < range->lo || r > range->hi)) usable = false;
    csv.row({format_double(r), format_double(std::log(r)), format_double(c),
             c > 0.0 ? format_double(std::log(c)) : "",
             usable ? "1" : "0"});
  }
}

}  // namespace nlrad
