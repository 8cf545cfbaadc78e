#include "nlrad/types.hpp"

#include <cmath>

namespace nlrad {

const char* norm_name(Norm norm) {
  switch (norm) {
    case Norm::L1:
      return "L1";
    case Norm::L2:
      return "L2";
    case Norm::Linf:
      return "Linf";
  }
  return "?";
}

Norm norm_from_string(std::string_view name) {
  if (name == "L1" || name == "l1" || name == "1") return Norm::L1;
  if (name == "L2" || name == "l2" || name == "2") return Norm::L2;
  if (name == "Linf" || name == "linf" || name == "inf" || name == "max")
    return Norm::Linf;
  throw ArgumentError("unknown norm '" + std::string(name) +
                      "' (expected L1, L2 or Linf)");
}

void validate(const TimeSeries& series) {
  if (series.values.size() < 2)
    throw ArgumentError("time series needs at least 2 samples, got " +
                        std::to_string(series.values.size()));
  if (!(series.dt > 0.0))
    throw ArgumentError("time series dt must be positive");
  for (double v : series.values)
    if (!std::isfinite(v))
      throw ArgumentError("time series contains a non-finite value");
}

void validate(const Trajectory& trajectory) {
  if (trajectory.d < 1) throw ArgumentError("trajectory dimension must be >= 1");
  if (trajectory.n < 2)
    throw ArgumentError("trajectory needs at least 2 points, got " +
                        std::to_string(trajectory.n));
  if (trajectory.data.size() != trajectory.n * trajectory.d)
    throw ArgumentError("trajectory storage does not match n x d");
  for (double v : trajectory.data)
    if (!std::isfinite(v))
      throw ArgumentError("trajectory contains a non-finite coordinate");
}

}  // namespace nlrad
