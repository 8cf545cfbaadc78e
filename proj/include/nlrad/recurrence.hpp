#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "nlrad/types.hpp"

namespace nlrad {

/// Thresholded distance matrix: bit (i, j) set iff ||x_i - x_j|| < epsilon.
/// Symmetric with an all-true diagonal. One byte per cell so parallel row
/// fills touch disjoint objects.
struct RecurrenceMatrix {
  std::vector<std::uint8_t> bits;  // n * n, row-major
  std::size_t n = 0;
  double epsilon = 0.0;
  Norm norm = Norm::L2;
  std::uint64_t true_count = 0;

  bool at(std::size_t i, std::size_t j) const { return bits[i * n + j] != 0; }
  /// Equals the correlation sum at epsilon exactly (same integer count).
  double recurrence_rate() const {
    return static_cast<double>(true_count) /
           (static_cast<double>(n) * static_cast<double>(n));
  }
};

RecurrenceMatrix recurrence_matrix(const Trajectory& trajectory,
                                   double epsilon);

/// Diagonal-line histogram of the scalar series:
///   counts(m) = card{(i,j) : |u_{i+k} - u_{j+k}| < epsilon for k < m}
/// over ordered pairs, self pairs included by default. Computed per diagonal
/// offset by run-length encoding consecutive matches (a maximal run of
/// length L contributes L-m+1 pairs for each m <= L), so one pass serves
/// every m.
struct DiagonalHistogram {
  std::vector<std::uint64_t> counts;  // counts[m-1] = N(m), m = 1..m_max
  double epsilon = 0.0;
  std::size_t series_length = 0;
  bool self_pairs = true;

  std::uint64_t at(std::size_t m) const { return counts[m - 1]; }
  std::size_t m_max() const { return counts.size(); }
};

DiagonalHistogram diagonal_histogram(const TimeSeries& series, double epsilon,
                                     std::size_t m_max,
                                     bool include_self = true);

struct EntropyEstimate {
  double k2;  // nats per time unit
  double r_used;
  std::size_t m_lo;
  std::size_t m_hi;
  double dt;
};

inline constexpr std::uint64_t kDefaultCountFloor = 10;

/// K2 = -(1/dt) * OLS slope of log N(m) against m over m in [m_lo, m_hi]
/// (the average log N(m)/N(m+1) realized as a regression slope). Requires
/// counts(m) >= count_floor up to m_hi + 1; otherwise throws
/// InsufficientDataError (radius too small or series too short).
EntropyEstimate k2_estimate(const DiagonalHistogram& hist, double dt,
                            std::size_t m_lo = 2, std::size_t m_hi = 8,
                            std::uint64_t count_floor = kDefaultCountFloor);

struct K2Point {
  double r;
  double k2;  // meaningful only when ok
  bool ok;
};

/// k2_estimate per grid radius; insufficient statistics flag the point
/// instead of failing the scan. The histograms drop the identity diagonal:
/// self pairs carry no information about divergence rates and would pin the
/// small-radius slope near zero.
std::vector<K2Point> k2_curve(const TimeSeries& series,
                              const std::vector<double>& radii,
                              std::size_t m_lo = 2, std::size_t m_hi = 8,
                              std::uint64_t count_floor = kDefaultCountFloor,
                              bool include_self = false);

/// Portable bitmap (P1), recurrent points black.
void write_pbm(std::ostream& out, const RecurrenceMatrix& matrix);
/// CSV of the true entries, columns i,j (0-based).
void write_pairs_csv(std::ostream& out, const RecurrenceMatrix& matrix);
/// CSV columns: m, count.
void write_histogram_csv(std::ostream& out, const DiagonalHistogram& hist);
/// CSV columns: r, log_r, k2, ok.
void write_k2_curve_csv(std::ostream& out, const std::vector<K2Point>& curve);

}  // namespace nlrad
