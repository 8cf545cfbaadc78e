#include "nlrad/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

namespace nlrad {

double distance(std::span<const double> a, std::span<const double> b,
                Norm norm) {
  if (a.size() != b.size())
    throw ArgumentError("distance: dimension mismatch (" +
                        std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()) + ")");
  switch (norm) {
    case Norm::L1: {
      double sum = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) sum += std::abs(a[k] - b[k]);
      return sum;
    }
    case Norm::L2: {
      double sum = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        sum += diff * diff;
      }
      return std::sqrt(sum);
    }
    case Norm::Linf: {
      double best = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k)
        best = std::max(best, std::abs(a[k] - b[k]));
      return best;
    }
  }
  throw ArgumentError("distance: invalid norm");
}

double unit_ball_volume(Norm norm, std::size_t d) {
  if (d == 0) throw ArgumentError("unit_ball_volume: d must be >= 1");
  const double dim = static_cast<double>(d);
  switch (norm) {
    case Norm::L1:
      if (d <= 20) {
        std::uint64_t factorial = 1;
        for (std::uint64_t k = 2; k <= d; ++k) factorial *= k;
        return std::pow(2.0, dim) / static_cast<double>(factorial);
      }
      return std::exp(dim * std::numbers::ln2 - std::lgamma(dim + 1.0));
    case Norm::L2:
      return std::exp(0.5 * dim * std::log(std::numbers::pi) -
                      std::lgamma(0.5 * dim + 1.0));
    case Norm::Linf:
      return std::pow(2.0, dim);
  }
  throw ArgumentError("unit_ball_volume: invalid norm");
}

}  // namespace nlrad
