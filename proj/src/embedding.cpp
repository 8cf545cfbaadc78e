#include "nlrad/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace nlrad {

Trajectory delay_embed(const TimeSeries& series, const EmbeddingSpec& spec,
                       Norm norm) {
  validate(series);
  if (spec.d < 1) throw ArgumentError("delay_embed: d must be >= 1");
  if (spec.tau < 1) throw ArgumentError("delay_embed: tau must be >= 1");
  const std::size_t N = series.values.size();
  const std::size_t window = (spec.d - 1) * spec.tau;
  const std::size_t min_length = window + 2;
  if (N < min_length)
    throw ArgumentError("delay_embed: series of length " + std::to_string(N) +
                        " too short for d=" + std::to_string(spec.d) +
                        ", tau=" + std::to_string(spec.tau) +
                        " (need at least " + std::to_string(min_length) + ")");
  const std::size_t n = N - window;
  Trajectory trajectory;
  trajectory.n = n;
  trajectory.d = spec.d;
  trajectory.tau = spec.tau;
  trajectory.norm = norm;
  trajectory.data.resize(n * spec.d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < spec.d; ++k)
      trajectory.data[i * spec.d + k] = series.values[i + k * spec.tau];
  return trajectory;
}

double mutual_information(const TimeSeries& series, std::size_t lag,
                          std::size_t bins) {
  validate(series);
  if (bins < 2) throw ArgumentError("mutual_information: bins must be >= 2");
  const std::size_t N = series.values.size();
  if (lag + 2 > N)
    throw ArgumentError("mutual_information: lag leaves fewer than 2 pairs");
  const auto [min_it, max_it] =
      std::minmax_element(series.values.begin(), series.values.end());
  const double lo = *min_it;
  const double width = *max_it - lo;
  if (!(width > 0.0))
    throw DegenerateInputError("mutual_information: constant series");

  auto bin_of = [&](double v) {
    auto b = static_cast<std::size_t>((v - lo) / width *
                                      static_cast<double>(bins));
    return std::min(b, bins - 1);
  };

  const std::size_t pairs = N - lag;
  std::vector<std::uint32_t> joint(bins * bins, 0);
  std::vector<std::uint32_t> row(bins, 0);
  std::vector<std::uint32_t> col(bins, 0);
  for (std::size_t t = 0; t < pairs; ++t) {
    const std::size_t bi = bin_of(series.values[t]);
    const std::size_t bj = bin_of(series.values[t + lag]);
    ++joint[bi * bins + bj];
    ++row[bi];
    ++col[bj];
  }
  const double total = static_cast<double>(pairs);
  double mi = 0.0;
  for (std::size_t i = 0; i < bins; ++i) {
    if (row[i] == 0) continue;
    for (std::size_t j = 0; j < bins; ++j) {
      const std::uint32_t c = joint[i * bins + j];
      if (c == 0) continue;
      const double p = static_cast<double>(c) / total;
      mi += p * std::log(p * total * total /
                         (static_cast<double>(row[i]) *
                          static_cast<double>(col[j])));
    }
  }
  // Plug-in MI is nonnegative; rounding can leave a tiny negative residue.
  return std::max(mi, 0.0);
}

DelaySelection select_delay_mi(const TimeSeries& series, std::size_t max_tau,
                               std::size_t bins) {
  validate(series);
  if (max_tau < 2) throw ArgumentError("select_delay_mi: max_tau must be >= 2");
  if (max_tau + 2 > series.values.size())
    throw ArgumentError("select_delay_mi: max_tau too large for series length " +
                        std::to_string(series.values.size()));
  DelaySelection selection;
  selection.mi.resize(max_tau + 1);
  for (std::size_t lag = 0; lag <= max_tau; ++lag)
    selection.mi[lag] = mutual_information(series, lag, bins);
  for (std::size_t tau = 1; tau + 1 <= max_tau; ++tau) {
    if (selection.mi[tau - 1] > selection.mi[tau] &&
        selection.mi[tau] < selection.mi[tau + 1]) {
      selection.tau = tau;
      selection.found_minimum = true;
      return selection;
    }
  }
  // No interior minimum: fall back to the flat argmin, first index on ties.
  std::size_t best = 1;
  for (std::size_t tau = 2; tau <= max_tau; ++tau)
    if (selection.mi[tau] < selection.mi[best]) best = tau;
  selection.tau = best;
  selection.found_minimum = false;
  return selection;
}

}  // namespace nlrad
