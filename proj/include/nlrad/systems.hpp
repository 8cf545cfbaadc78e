#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>

#include "nlrad/types.hpp"

namespace nlrad {

struct LorenzParams {
  double sigma = 10.0;
  double beta = 8.0 / 3.0;
  double rho = 28.0;
  double dt = 0.01;
};

struct RosslerParams {
  double a = 0.1;
  double b = 0.1;
  double c = 14.0;
  double dt = 0.05;
};

struct HenonParams {
  double a = 1.4;
  double b = 0.3;
};

/// Benchmark system to simulate. Flows are integrated with an adaptive
/// Dormand-Prince 4(5) scheme (rtol 1e-9, atol 1e-12) and sampled at fixed
/// dt; the map is iterated exactly. Initial states are drawn uniformly from
/// a box near each attractor ([-10,10]^3 for Lorenz, rejecting states within
/// 0.5 of the origin equilibrium; [-5,5]^3 for Rossler; [-0.1,0.1]^2 for the
/// map) unless initial_state pins them. The first `transient` samples are
/// discarded.
struct SystemSpec {
  std::variant<LorenzParams, RosslerParams, HenonParams> kind;
  std::uint64_t seed = 0;
  std::size_t transient = 1000;  // samples (1000 flows, 100 maps by default)
  std::size_t length = 1000;     // N samples kept
  std::optional<std::array<double, 3>> initial_state;  // first d entries used
  double rtol = 1e-9;   // integrator tolerances (flows only)
  double atol = 1e-12;
};

/// Named spec with the canonical parameters and default transients.
SystemSpec make_system_spec(std::string_view name, std::size_t length,
                            std::uint64_t seed);

std::size_t system_dimension(const SystemSpec& spec);
const char* system_name(const SystemSpec& spec);
double system_dt(const SystemSpec& spec);

struct GeneratedSeries {
  TimeSeries x;        // first coordinate, the observable used throughout
  Trajectory states;   // full native state trajectory (n x d)
};

/// Deterministic per seed: same spec and seed give bit-identical output.
/// Throws DivergenceError if the state norm exceeds 1e6.
GeneratedSeries generate(const SystemSpec& spec);

/// Adds white Gaussian observational noise with standard deviation
/// k * sample_std(series). k = 0 returns the input unchanged.
TimeSeries add_observational_noise(const TimeSeries& series, double k,
                                   std::uint64_t seed);

}  // namespace nlrad
