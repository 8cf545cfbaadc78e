#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "nlrad/radius.hpp"
#include "nlrad/types.hpp"

namespace nlrad {

/// Correlation sums C(r, n) evaluated on a radius grid. counts holds the raw
/// pair counts behind each sum (filled by correlation_curve; hand-built
/// curves may leave it empty, which disables the count-based exclusions in
/// gp_dimension).
struct CorrelationCurve {
  std::vector<double> radii;  // strictly increasing, positive
  std::vector<double> sums;   // C(r, n) in [0, 1]
  std::vector<std::uint64_t> counts;
  std::size_t n = 0;
  Norm norm = Norm::L2;
  bool self_pairs = true;
};

/// C(r, n) = count{(i,j) : ||x_i - x_j|| < r} / n^2 over all ordered pairs,
/// self pairs included. include_self = false switches to the n(n-1)
/// divisor for cross-checking against toolkits that drop the diagonal.
double correlation_sum(const Trajectory& trajectory, double r,
                       bool include_self = true);

/// Evaluates the correlation sum on a sorted grid with a single O(n^2) pass
/// over pairwise distances: each pair lands in the bucket of the smallest
/// covering radius, and a prefix sum yields every C(r_k).
CorrelationCurve correlation_curve(const Trajectory& trajectory,
                                   std::vector<double> radii,
                                   bool include_self = true);

struct FitRange {
  double lo;
  double hi;
};

struct DimensionEstimate {
  double d2;
  double r_lo;  // radii actually used
  double r_hi;
  std::size_t points_used;
  double residual;  // rms residual of the log-log fit
};

/// Grassberger-Procaccia slope: OLS fit of log C against log r over the grid
/// points inside the range (all points when absent). The saturation plateau
/// (points within 1e-12 of the curve's maximum) and points without cross
/// pairs are excluded; fewer than 2 usable points is an
/// InsufficientDataError.
DimensionEstimate gp_dimension(const CorrelationCurve& curve,
                               std::optional<FitRange> range = std::nullopt);

inline DimensionEstimate gp_dimension(const CorrelationCurve& curve,
                                      const RadiusRange& range) {
  return gp_dimension(curve, FitRange{range.lower, range.upper});
}

/// count geometrically spaced points from lo to hi inclusive.
std::vector<double> geometric_grid(double lo, double hi, std::size_t count);

/// CSV columns: r, log_r, C, log_C, in_fit_range.
void write_curve_csv(std::ostream& out, const CorrelationCurve& curve,
                     std::optional<FitRange> range = std::nullopt);

}  // namespace nlrad
