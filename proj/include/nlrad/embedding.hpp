#pragma once

#include <cstddef>
#include <vector>

#include "nlrad/types.hpp"

namespace nlrad {

struct EmbeddingSpec {
  std::size_t d = 1;    // embedding dimension
  std::size_t tau = 1;  // delay, in samples
};

/// Takens delay embedding: point i is (u_i, u_{i+tau}, ..., u_{i+(d-1)tau}),
/// giving n = N - (d-1)*tau points. Throws ArgumentError (with the required
/// minimum length) when the series is too short for n >= 2.
Trajectory delay_embed(const TimeSeries& series, const EmbeddingSpec& spec,
                       Norm norm);

/// Histogram plug-in estimate of the mutual information between u_t and
/// u_{t+lag}, in nats. Equal-width bins span [min, max] of the series.
double mutual_information(const TimeSeries& series, std::size_t lag,
                          std::size_t bins = 64);

struct DelaySelection {
  std::size_t tau = 1;
  bool found_minimum = false;  // false: no interior minimum, argmin returned
  std::vector<double> mi;      // mi[k] = I(u_t; u_{t+k}) for k = 0..max_tau
};

/// First strict local minimum of the lagged mutual information, scanning
/// tau = 1..max_tau. Without an interior minimum, returns the argmin over
/// the scanned range with found_minimum = false (ties break to smaller tau).
DelaySelection select_delay_mi(const TimeSeries& series, std::size_t max_tau,
                               std::size_t bins = 64);

}  // namespace nlrad
