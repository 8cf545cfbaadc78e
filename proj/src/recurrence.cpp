#include "nlrad/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <ostream>
#include <string>

#include "nlrad/descriptive.hpp"
#include "nlrad/io.hpp"
#include "nlrad/norms.hpp"
#include "nlrad/parallel.hpp"

namespace nlrad {

RecurrenceMatrix recurrence_matrix(const Trajectory& trajectory,
                                   double epsilon) {
  if (!(epsilon > 0.0))
    throw ArgumentError("recurrence_matrix: epsilon must be > 0");
  validate(trajectory);
  const std::size_t n = trajectory.n;
  RecurrenceMatrix matrix;
  matrix.n = n;
  matrix.epsilon = epsilon;
  matrix.norm = trajectory.norm;
  matrix.bits.assign(n * n, 0);
  std::uint64_t ordered_cross = 0;
  std::mutex merge_mutex;
  // Each worker fills whole rows, so writes never overlap.
  parallel_chunks(0, n, [&](std::size_t lo, std::size_t hi) {
    std::uint64_t local = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      matrix.bits[i * n + i] = 1;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        if (distance(trajectory.point(i), trajectory.point(j),
                     trajectory.norm) < epsilon) {
          matrix.bits[i * n + j] = 1;
          ++local;
        }
      }
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    ordered_cross += local;
  });
  matrix.true_count = static_cast<std::uint64_t>(n) + ordered_cross;
  return matrix;
}

DiagonalHistogram diagonal_histogram(const TimeSeries& series, double epsilon,
                                     std::size_t m_max, bool include_self) {
  validate(series);
  if (!(epsilon > 0.0))
    throw ArgumentError("diagonal_histogram: epsilon must be > 0");
  const std::size_t N = series.values.size();
  if (m_max < 1 || m_max >= N)
    throw ArgumentError("diagonal_histogram: need 1 <= m_max < N");

  DiagonalHistogram hist;
  hist.epsilon = epsilon;
  hist.series_length = N;
  hist.self_pairs = include_self;
  hist.counts.assign(m_max, 0);
  const double* u = series.values.data();

  // Offset 0 is one unbroken run of length N.
  if (include_self)
    for (std::size_t m = 1; m <= m_max; ++m)
      hist.counts[m - 1] += static_cast<std::uint64_t>(N - m + 1);

  std::mutex merge_mutex;
  parallel_chunks(1, N, [&](std::size_t lo, std::size_t hi) {
    std::vector<std::uint64_t> local(m_max, 0);
    for (std::size_t t = lo; t < hi; ++t) {
      const std::size_t len = N - t;
      std::size_t run = 0;
      for (std::size_t i = 0; i <= len; ++i) {
        const bool match = i < len && std::abs(u[i] - u[i + t]) < epsilon;
        if (match) {
          ++run;
        } else if (run > 0) {
          const std::size_t top = std::min(run, m_max);
          for (std::size_t m = 1; m <= top; ++m)
            local[m - 1] += static_cast<std::uint64_t>(run - m + 1);
          run = 0;
        }
      }
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    // Both orientations of each cross pair.
    for (std::size_t m = 0; m < m_max; ++m) hist.counts[m] += 2 * local[m];
  });
  return hist;
}

EntropyEstimate k2_estimate(const DiagonalHistogram& hist, double dt,
                            std::size_t m_lo, std::size_t m_hi,
                            std::uint64_t count_floor) {
  if (!(dt > 0.0)) throw ArgumentError("k2_estimate: dt must be > 0");
  if (m_lo < 1 || m_hi <= m_lo)
    throw ArgumentError("k2_estimate: need 1 <= m_lo < m_hi");
  if (hist.m_max() < m_hi + 1)
    throw ArgumentError("k2_estimate: histogram too short, need counts up to m=" +
                        std::to_string(m_hi + 1));
  for (std::size_t m = m_lo; m <= m_hi + 1; ++m) {
    // The floor measures cross-pair statistics: the i = j diagonal always
    // matches, so it cannot signal a starved radius.
    std::uint64_t informative = hist.at(m);
    if (hist.self_pairs) {
      const std::uint64_t self =
          static_cast<std::uint64_t>(hist.series_length - m + 1);
      informative -= std::min(informative, self);
    }
    if (informative < count_floor)
      throw InsufficientDataError(
          "k2_estimate: diagonal count below floor at m=" + std::to_string(m) +
          " (radius too small or series too short)");
  }
  std::vector<double> ms;
  std::vector<double> logs;
  for (std::size_t m = m_lo; m <= m_hi; ++m) {
    ms.push_back(static_cast<double>(m));
    logs.push_back(std::log(static_cast<double>(hist.at(m))));
  }
  const LineFit fit = ols_fit(ms, logs);
  return EntropyEstimate{-fit.slope / dt, hist.epsilon, m_lo, m_hi, dt};
}

std::vector<K2Point> k2_curve(const TimeSeries& series,
                              const std::vector<double>& radii,
                              std::size_t m_lo, std::size_t m_hi,
                              std::uint64_t count_floor, bool include_self) {
  validate(series);
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0.0)) throw ArgumentError("k2_curve: radii must be positive");
    if (k > 0 && !(radii[k] > radii[k - 1]))
      throw ArgumentError("k2_curve: radii must be strictly increasing");
  }
  std::vector<K2Point> curve(radii.size());
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const auto hist =
        diagonal_histogram(series, radii[k], m_hi + 1, include_self);
    try {
      const auto estimate = k2_estimate(hist, series.dt, m_lo, m_hi, count_floor);
      curve[k] = K2Point{radii[k], estimate.k2, true};
    } catch (const InsufficientDataError&) {
      curve[k] = K2Point{radii[k], 0.0, false};
    }
  }
  return curve;
}

void write_pbm(std::ostream& out, const RecurrenceMatrix& matrix) {
  out << "P1\n" << matrix.n << ' ' << matrix.n << '\n';
  for (std::size_t i = 0; i < matrix.n; ++i) {
    for (std::size_t j = 0; j < matrix.n; ++j) {
      if (j) out << ' ';
      out << (matrix.at(i, j) ? '1' : '0');
    }
    out << '\n';
  }
}

void write_pairs_csv(std::ostream& out, const RecurrenceMatrix& matrix) {
  CsvWriter csv(out);
  csv.row({"i", "j"});
  for (std::size_t i = 0; i < matrix.n; ++i)
    for (std::size_t j = 0; j < matrix.n; ++j)
      if (matrix.at(i, j)) csv.row({std::to_string(i), std::to_string(j)});
}

void write_histogram_csv(std::ostream& out, const DiagonalHistogram& hist) {
  CsvWriter csv(out);
  csv.row({"m", "count"});
  for (std::size_t m = 1; m <= hist.m_max(); ++m)
    csv.row({std::to_string(m), std::to_string(hist.at(m))});
}

void write_k2_curve_csv(std::ostream& out, const std::vector<K2Point>& curve) {
  CsvWriter csv(out);
  csv.row({"r", "log_r", "k2", "ok"});
  for (const auto& point : curve)
    csv.row({format_double(point.r), format_double(std::log(point.r)),
             point.ok ? format_double(point.k2) : "", point.ok ? "1" : "0"});
}

}  // namespace nlrad
