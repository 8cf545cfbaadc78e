#include "nlrad/systems.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <string>

#include "nlrad/descriptive.hpp"
#include "nlrad/rng.hpp"

namespace nlrad {

namespace {

constexpr double kDivergenceLimit = 1e6;

using State3 = std::array<double, 3>;

void check_finite_box(const State3& s, std::size_t d) {
  for (std::size_t k = 0; k < d; ++k)
    if (!std::isfinite(s[k]) || std::abs(s[k]) > kDivergenceLimit)
      throw DivergenceError(
          "trajectory diverged (bad initial box or parameters)");
}

State3 draw_initial(const SystemSpec& spec, Rng& rng) {
  if (spec.initial_state) return *spec.initial_state;
  State3 s{0.0, 0.0, 0.0};
  if (std::holds_alternative<LorenzParams>(spec.kind)) {
    // Reject states next to the origin equilibrium.
    do {
      for (auto& v : s) v = rng.uniform(-10.0, 10.0);
    } while (std::max({std::abs(s[0]), std::abs(s[1]), std::abs(s[2])}) < 0.5);
  } else if (std::holds_alternative<RosslerParams>(spec.kind)) {
    for (auto& v : s) v = rng.uniform(-5.0, 5.0);
  } else {
    s[0] = rng.uniform(-0.1, 0.1);
    s[1] = rng.uniform(-0.1, 0.1);
  }
  return s;
}

template <typename Rhs>
GeneratedSeries integrate_flow(const SystemSpec& spec, double dt, Rhs rhs,
                               State3 state) {
  namespace ode = boost::numeric::odeint;
  const std::size_t total = spec.transient + spec.length;
  auto stepper = ode::make_dense_output(spec.atol, spec.rtol,
                                        ode::runge_kutta_dopri5<State3>());
  stepper.initialize(state, 0.0, dt);

  GeneratedSeries out;
  out.x.dt = dt;
  out.x.values.reserve(spec.length);
  out.states.n = spec.length;
  out.states.d = 3;
  out.states.tau = 1;
  out.states.norm = Norm::L2;
  out.states.data.reserve(spec.length * 3);

  State3 sampled;
  for (std::size_t k = 1; k <= total; ++k) {
    const double t_target = static_cast<double>(k) * dt;
    while (stepper.current_time() < t_target) {
      stepper.do_step(rhs);
      check_finite_box(stepper.current_state(), 3);
    }
    stepper.calc_state(t_target, sampled);
    if (k > spec.transient) {
      out.x.values.push_back(sampled[0]);
      for (double v : sampled) out.states.data.push_back(v);
    }
  }
  return out;
}

GeneratedSeries iterate_henon(const SystemSpec& spec, const HenonParams& p,
                              State3 state) {
  GeneratedSeries out;
  out.x.dt = 1.0;
  out.x.values.reserve(spec.length);
  out.states.n = spec.length;
  out.states.d = 2;
  out.states.tau = 1;
  out.states.norm = Norm::L2;
  out.states.data.reserve(spec.length * 2);

  double x = state[0];
  double y = state[1];
  const std::size_t total = spec.transient + spec.length;
  for (std::size_t k = 1; k <= total; ++k) {
    const double x_next = 1.0 - p.a * x * x + y;
    const double y_next = p.b * x;
    x = x_next;
    y = y_next;
    if (!std::isfinite(x) || std::abs(x) > kDivergenceLimit ||
        std::abs(y) > kDivergenceLimit)
      throw DivergenceError("map orbit diverged (bad initial box or parameters)");
    if (k > spec.transient) {
      out.x.values.push_back(x);
      out.states.data.push_back(x);
      out.states.data.push_back(y);
    }
  }
  return out;
}

}  // namespace

SystemSpec make_system_spec(std::string_view name, std::size_t length,
                            std::uint64_t seed) {
  SystemSpec spec;
  spec.length = length;
  spec.seed = seed;
  if (name == "lorenz") {
    spec.kind = LorenzParams{};
    spec.transient = 1000;
  } else if (name == "rossler") {
    spec.kind = RosslerParams{};
    spec.transient = 1000;
  } else if (name == "henon") {
    spec.kind = HenonParams{};
    spec.transient = 100;
  } else {
    throw ArgumentError("unknown system '" + std::string(name) +
                        "' (expected lorenz, rossler or henon)");
  }
  return spec;
}

std::size_t system_dimension(const SystemSpec& spec) {
  return std::holds_alternative<HenonParams>(spec.kind) ? 2 : 3;
}

const char* system_name(const SystemSpec& spec) {
  if (std::holds_alternative<LorenzParams>(spec.kind)) return "lorenz";
  if (std::holds_alternative<RosslerParams>(spec.kind)) return "rossler";
  return "henon";
}

double system_dt(const SystemSpec& spec) {
  if (const auto* lorenz = std::get_if<LorenzParams>(&spec.kind))
    return lorenz->dt;
  if (const auto* rossler = std::get_if<RosslerParams>(&spec.kind))
    return rossler->dt;
  return 1.0;
}

GeneratedSeries generate(const SystemSpec& spec) {
  if (spec.length < 2) throw ArgumentError("generate: length must be >= 2");
  Rng rng(spec.seed);
  const State3 initial = draw_initial(spec, rng);

  if (const auto* p = std::get_if<LorenzParams>(&spec.kind)) {
    if (!(p->dt > 0.0)) throw ArgumentError("generate: dt must be > 0");
    const LorenzParams lp = *p;
    auto rhs = [lp](const State3& s, State3& dsdt, double) {
      dsdt[0] = lp.sigma * (s[1] - s[0]);
      dsdt[1] = s[0] * (lp.rho - s[2]) - s[1];
      dsdt[2] = s[0] * s[1] - lp.beta * s[2];
    };
    return integrate_flow(spec, lp.dt, rhs, initial);
  }
  if (const auto* p = std::get_if<RosslerParams>(&spec.kind)) {
    if (!(p->dt > 0.0)) throw ArgumentError("generate: dt must be > 0");
    const RosslerParams rp = *p;
    auto rhs = [rp](const State3& s, State3& dsdt, double) {
      dsdt[0] = -s[1] - s[2];
      dsdt[1] = s[0] + rp.a * s[1];
      dsdt[2] = rp.b + s[2] * (s[0] - rp.c);
    };
    return integrate_flow(spec, rp.dt, rhs, initial);
  }
  return iterate_henon(spec, std::get<HenonParams>(spec.kind), initial);
}

TimeSeries add_observational_noise(const TimeSeries& series, double k,
                                   std::uint64_t seed) {
  validate(series);
  if (k < 0.0) throw ArgumentError("noise level k must be >= 0");
  if (k == 0.0) return series;
  const double sigma_noise = k * sample_std(series.values);
  Rng rng(seed);
  TimeSeries out = series;
  for (double& v : out.values) v += sigma_noise * rng.gaussian();
  return out;
}

}  // namespace nlrad
