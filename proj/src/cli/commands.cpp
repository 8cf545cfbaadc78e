#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>

#include "nlrad/correlation.hpp"
#include "nlrad/descriptive.hpp"
#include "nlrad/embedding.hpp"
#include "nlrad/io.hpp"
#include "nlrad/parallel.hpp"
#include "nlrad/radius.hpp"
#include "nlrad/recurrence.hpp"
#include "nlrad/rng.hpp"
#include "nlrad/stats.hpp"
#include "nlrad/systems.hpp"

namespace nlrad::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

const char* error_code_name(int code) {
  switch (code) {
    case kArgument:
      return "argument";
    case kParse:
      return "parse";
    case kDegenerate:
      return "degenerate_input";
    case kInsufficient:
      return "insufficient_statistics";
    case kDivergence:
      return "divergence";
    case kIo:
      return "io";
    default:
      return "failure";
  }
}

int classify_current_exception() {
  try {
    throw;
  } catch (const ParseError&) {
    return kParse;
  } catch (const DegenerateInputError&) {
    return kDegenerate;
  } catch (const InsufficientDataError&) {
    return kInsufficient;
  } catch (const DivergenceError&) {
    return kDivergence;
  } catch (const IoError&) {
    return kIo;
  } catch (const ArgumentError&) {
    return kArgument;
  } catch (...) {
    return kFailure;
  }
}

std::string current_exception_message() {
  try {
    throw;
  } catch (const std::exception& e) {
    return e.what();
  } catch (...) {
    return "unknown error";
  }
}

/// label used in the "error" column of long-format outputs.
std::string current_error_label() {
  return error_code_name(classify_current_exception());
}

struct RunPlan {
  std::size_t length_idx;
  std::size_t noise_idx;
  std::size_t seed_idx;
  std::size_t run_index;
  std::size_t N;
  double k;
};

std::vector<RunPlan> enumerate_runs(const ExperimentConfig& cfg,
                                    const std::vector<std::size_t>& lengths) {
  std::vector<RunPlan> runs;
  std::size_t index = 0;
  for (std::size_t li = 0; li < lengths.size(); ++li)
    for (std::size_t ki = 0; ki < cfg.noise_levels.size(); ++ki)
      for (std::size_t si = 0; si < cfg.seeds; ++si) {
        runs.push_back(
            RunPlan{li, ki, si, index, lengths[li], cfg.noise_levels[ki]});
        ++index;
      }
  return runs;
}

SystemSpec build_spec(const ExperimentConfig& cfg, std::size_t N,
                      std::uint64_t seed) {
  SystemSpec spec = make_system_spec(cfg.system, N, seed);
  if (cfg.transient >= 0)
    spec.transient = static_cast<std::size_t>(cfg.transient);
  if (cfg.dt > 0.0) {
    if (auto* lorenz = std::get_if<LorenzParams>(&spec.kind))
      lorenz->dt = cfg.dt;
    else if (auto* rossler = std::get_if<RosslerParams>(&spec.kind))
      rossler->dt = cfg.dt;
  }
  return spec;
}

struct SourceData {
  TimeSeries file_series;  // only for input mode
  bool from_file = false;
  std::string label;
};

SourceData load_source(const ExperimentConfig& cfg) {
  SourceData source;
  if (!cfg.input.empty() && !cfg.system.empty())
    throw ArgumentError("config: set either system or input, not both");
  if (cfg.input.empty() && cfg.system.empty())
    throw ArgumentError("config: one of system or input is required");
  if (!cfg.input.empty()) {
    source.from_file = true;
    source.file_series = read_series(cfg.input, cfg.dt > 0.0 ? cfg.dt : 1.0);
    source.label = fs::path(cfg.input).stem().string();
  } else {
    source.label = cfg.system;
  }
  return source;
}

std::vector<std::size_t> effective_lengths(const ExperimentConfig& cfg,
                                           const SourceData& source) {
  if (!cfg.lengths.empty()) return cfg.lengths;
  if (source.from_file) return {source.file_series.values.size()};
  throw ArgumentError("config: lengths is required for system runs");
}

TimeSeries run_series(const ExperimentConfig& cfg, const SourceData& source,
                      const RunPlan& run) {
  TimeSeries series;
  if (source.from_file) {
    const auto& values = source.file_series.values;
    if (run.N > values.size())
      throw ArgumentError("length " + std::to_string(run.N) +
                          " exceeds input file size " +
                          std::to_string(values.size()));
    series.values.assign(values.begin(), values.begin() + run.N);
    series.dt = source.file_series.dt;
  } else {
    series =
        generate(build_spec(cfg, run.N, run_series_seed(cfg.master_seed,
                                                        run.run_index)))
            .x;
  }
  if (run.k > 0.0)
    series = add_observational_noise(
        series, run.k, run_noise_seed(cfg.master_seed, run.run_index));
  return series;
}

std::size_t default_dimension(const ExperimentConfig& cfg,
                              const SourceData& source) {
  if (cfg.d > 0) return cfg.d;
  if (source.from_file) return 1;
  return std::holds_alternative<HenonParams>(
             make_system_spec(cfg.system, 2, 0).kind)
             ? 2
             : 3;
}

std::size_t pick_delay(const ExperimentConfig& cfg, const SourceData& source,
                       const TimeSeries& series) {
  if (cfg.tau > 0) return static_cast<std::size_t>(cfg.tau);
  // Auto rule: the map and plain files default to 1, flows use the MI
  // first minimum.
  if (source.from_file || cfg.system == "henon") return 1;
  const std::size_t N = series.values.size();
  std::size_t max_tau = cfg.mi_max_tau > 0 ? cfg.mi_max_tau : N / 10;
  max_tau = std::clamp<std::size_t>(max_tau, 2, N >= 4 ? N - 2 : 2);
  return select_delay_mi(series, max_tau, cfg.mi_bins).tau;
}

void write_manifest(const fs::path& dir,
                    const std::vector<std::pair<std::string, std::string>>&
                        entries) {
  auto out = open_output(dir / "manifest.txt");
  for (const auto& [name, description] : entries)
    out << name << ": " << description << '\n';
}

std::string csv_opt(const std::optional<double>& value) {
  return value ? format_double(*value) : "";
}

}  // namespace

int report_current_exception(std::ostream& err) {
  const int code = classify_current_exception();
  err << "error (" << error_code_name(code)
      << "): " << current_exception_message() << '\n';
  return code;
}

int cmd_simulate(const ExperimentConfig& cfg, bool also_csv) {
  set_thread_count(cfg.threads);
  if (cfg.system.empty())
    throw ArgumentError("simulate: a system is required");
  if (cfg.lengths.empty())
    throw ArgumentError("simulate: lengths is required");
  const fs::path dir(cfg.out_dir);
  const auto runs = enumerate_runs(cfg, cfg.lengths);
  for (const auto& run : runs) {
    const SystemSpec spec =
        build_spec(cfg, run.N, run_series_seed(cfg.master_seed, run.run_index));
    GeneratedSeries generated = generate(spec);
    TimeSeries series = generated.x;
    if (run.k > 0.0)
      series = add_observational_noise(
          series, run.k, run_noise_seed(cfg.master_seed, run.run_index));
    std::ostringstream name;
    name << cfg.system << "_N" << run.N << "_k" << short_double(run.k) << "_s"
         << run.seed_idx;
    std::vector<std::string> comments;
    comments.push_back("system=" + cfg.system);
    comments.push_back("N=" + std::to_string(run.N) +
                       " noise_k=" + short_double(run.k) +
                       " seed_index=" + std::to_string(run.seed_idx));
    comments.push_back("master_seed=" + std::to_string(cfg.master_seed) +
                       " transient=" + std::to_string(spec.transient) +
                       " dt=" + short_double(system_dt(spec)));
    write_series(dir / (name.str() + ".txt"), series, comments);
    if (also_csv)
      write_states_csv(dir / (name.str() + "_states.csv"), generated.states,
                       system_dt(spec));
  }
  return kOk;
}

int cmd_radius(const RadiusOptions& options, std::ostream& out) {
  const TimeSeries series = read_series(options.input, options.dt);
  const std::size_t N = series.values.size();
  const std::size_t window = (options.d - 1) * options.tau;
  if (options.d < 1 || options.tau < 1)
    throw ArgumentError("radius: need d >= 1 and tau >= 1");
  if (N < window + 2)
    throw ArgumentError("radius: series too short for d=" +
                        std::to_string(options.d) +
                        ", tau=" + std::to_string(options.tau));
  const std::size_t n = N - window;
  const double spread = spread_estimate(series);
  const RadiusSelection sel =
      reference_radius(spread, n, options.d, options.norm);
  json summary;
  summary["alpha"] = sel.alpha;
  summary["spread"] = sel.spread;
  summary["n"] = sel.n;
  summary["r_opt"] = sel.r_opt;
  summary["d"] = sel.d;
  summary["tau"] = options.tau;
  summary["norm"] = norm_name(sel.norm);
  out << summary.dump() << '\n';
  return kOk;
}

int cmd_embed_delay(const EmbedDelayOptions& options, std::ostream& out) {
  const TimeSeries series = read_series(options.input, options.dt);
  const std::size_t N = series.values.size();
  std::size_t tau;
  bool automatic = options.tau <= 0;
  bool found_minimum = true;
  if (automatic) {
    std::size_t max_tau = options.max_tau > 0 ? options.max_tau : N / 10;
    max_tau = std::clamp<std::size_t>(max_tau, 2, N >= 4 ? N - 2 : 2);
    const DelaySelection sel = select_delay_mi(series, max_tau, options.bins);
    tau = sel.tau;
    found_minimum = sel.found_minimum;
  } else {
    tau = static_cast<std::size_t>(options.tau);
  }
  const Trajectory trajectory =
      delay_embed(series, EmbeddingSpec{options.d, tau}, options.norm);
  if (!options.out.empty()) {
    auto file = open_output(options.out);
    CsvWriter csv(file);
    std::vector<std::string> header;
    for (std::size_t k = 0; k < trajectory.d; ++k)
      header.push_back("x" + std::to_string(k));
    csv.row(header);
    for (std::size_t i = 0; i < trajectory.n; ++i) {
      std::vector<std::string> row;
      for (std::size_t k = 0; k < trajectory.d; ++k)
        row.push_back(format_double(trajectory.coord(i, k)));
      csv.row(row);
    }
  }
  json summary;
  summary["tau"] = tau;
  summary["auto"] = automatic;
  if (automatic) summary["found_minimum"] = found_minimum;
  summary["n"] = trajectory.n;
  summary["d"] = trajectory.d;
  summary["norm"] = norm_name(options.norm);
  out << summary.dump() << '\n';
  return kOk;
}

namespace {

struct FitOutcome {
  std::string method;  // "full" or "beta"
  std::optional<double> beta;
  std::optional<double> d2;
  std::string error;
};

struct CorrdimRun {
  RunPlan plan;
  std::vector<FitOutcome> fits;
  // curves kept only for the first seed of each combination
  std::optional<CorrelationCurve> full_curve;
  std::vector<std::pair<double, CorrelationCurve>> beta_curves;
};

}  // namespace

int cmd_corrdim(const ExperimentConfig& cfg) {
  set_thread_count(cfg.threads);
  const SourceData source = load_source(cfg);
  const auto lengths = effective_lengths(cfg, source);
  if (cfg.betas.empty()) throw ArgumentError("corrdim: betas is required");
  const auto plans = enumerate_runs(cfg, lengths);
  const std::size_t d = default_dimension(cfg, source);

  std::vector<CorrdimRun> results(plans.size());
  parallel_index(plans.size(), [&](std::size_t idx) {
    CorrdimRun result;
    result.plan = plans[idx];
    const bool keep_curves = plans[idx].seed_idx == 0;
    try {
      const TimeSeries series = run_series(cfg, source, plans[idx]);
      const std::size_t tau = pick_delay(cfg, source, series);
      const Trajectory trajectory =
          delay_embed(series, EmbeddingSpec{d, tau}, cfg.norm);
      const double spread = spread_estimate(series);
      const RadiusSelection sel =
          reference_radius(spread, trajectory.n, d, cfg.norm);
      const double sigma = sample_std(series.values);

      {
        FitOutcome fit;
        fit.method = "full";
        try {
          CorrelationCurve curve = correlation_curve(
              trajectory,
              geometric_grid(cfg.full_lo, cfg.full_hi_sigmas * sigma,
                             cfg.radii),
              false);
          fit.d2 = gp_dimension(curve).d2;
          if (keep_curves) result.full_curve = std::move(curve);
        } catch (...) {
          fit.error = current_error_label();
        }
        result.fits.push_back(std::move(fit));
      }
      for (double beta : cfg.betas) {
        FitOutcome fit;
        fit.method = "beta";
        fit.beta = beta;
        try {
          const RadiusRange range = radius_range(sel, beta);
          CorrelationCurve curve = correlation_curve(
              trajectory, geometric_grid(range.lower, range.upper, cfg.radii),
              false);
          fit.d2 = gp_dimension(curve).d2;
          if (keep_curves) result.beta_curves.emplace_back(beta, std::move(curve));
        } catch (...) {
          fit.error = current_error_label();
        }
        result.fits.push_back(std::move(fit));
      }
    } catch (...) {
      // Whole-run failure: one row per method with the error code.
      const std::string label = current_error_label();
      result.fits.clear();
      FitOutcome full;
      full.method = "full";
      full.error = label;
      result.fits.push_back(full);
      for (double beta : cfg.betas) {
        FitOutcome fit;
        fit.method = "beta";
        fit.beta = beta;
        fit.error = label;
        result.fits.push_back(fit);
      }
    }
    results[idx] = std::move(result);
  });

  const fs::path dir(cfg.out_dir);
  std::vector<std::pair<std::string, std::string>> manifest;
  {
    auto out = open_output(dir / "estimates.csv");
    CsvWriter csv(out);
    csv.row({"system", "N", "k", "seed", "method", "beta", "d2", "error"});
    for (const auto& result : results)
      for (const auto& fit : result.fits)
        csv.row({source.label, std::to_string(result.plan.N),
                 short_double(result.plan.k),
                 std::to_string(result.plan.seed_idx), fit.method,
                 fit.beta ? short_double(*fit.beta) : "",
                 csv_opt(fit.d2), fit.error});
    manifest.emplace_back(
        "estimates.csv",
        "long-format D2 estimates; one row per (N, noise k, seed, method); "
        "method full spans the whole grid, method beta fits inside "
        "[beta*r_opt, r_opt]");
  }
  for (const auto& result : results) {
    if (result.plan.seed_idx != 0) continue;
    const std::string suffix = "N" + std::to_string(result.plan.N) + "_k" +
                               short_double(result.plan.k);
    if (result.full_curve) {
      const std::string name = "curve_full_" + suffix + ".csv";
      auto out = open_output(dir / name);
      write_curve_csv(out, *result.full_curve);
      manifest.emplace_back(name,
                            "correlation sum vs radius, full grid, seed 0; "
                            "axes log_r vs log_C");
    }
    for (const auto& [beta, curve] : result.beta_curves) {
      const std::string name =
          "curve_beta" + short_double(beta) + "_" + suffix + ".csv";
      auto out = open_output(dir / name);
      write_curve_csv(out, curve);
      manifest.emplace_back(name,
                            "correlation sum vs radius inside the meaningful "
                            "range, seed 0; axes log_r vs log_C");
    }
  }
  write_manifest(dir, manifest);
  return kOk;
}

namespace {

struct K2Run {
  RunPlan plan;
  std::vector<K2Point> curve;
  std::optional<double> r_opt;
  std::optional<double> k2_at_ropt;
  std::string error;
};

}  // namespace

int cmd_k2(const ExperimentConfig& cfg) {
  set_thread_count(cfg.threads);
  const SourceData source = load_source(cfg);
  const auto lengths = effective_lengths(cfg, source);
  const auto plans = enumerate_runs(cfg, lengths);
  if (cfg.k2_radii < 2) throw ArgumentError("k2: need at least 2 radii");

  std::vector<double> grid(cfg.k2_radii);
  for (std::size_t i = 0; i < cfg.k2_radii; ++i)
    grid[i] = std::exp(cfg.k2_log_lo +
                       (cfg.k2_log_hi - cfg.k2_log_lo) *
                           static_cast<double>(i) /
                           static_cast<double>(cfg.k2_radii - 1));

  std::vector<K2Run> results(plans.size());
  parallel_index(plans.size(), [&](std::size_t idx) {
    K2Run result;
    result.plan = plans[idx];
    try {
      const TimeSeries series = run_series(cfg, source, plans[idx]);
      result.curve =
          k2_curve(series, grid, cfg.m_lo, cfg.m_hi, cfg.count_floor);
      const RadiusSelection sel = reference_radius(
          spread_estimate(series), series.values.size(), 1, cfg.norm);
      result.r_opt = sel.r_opt;
      try {
        const auto hist =
            diagonal_histogram(series, sel.r_opt, cfg.m_hi + 1, false);
        result.k2_at_ropt =
            k2_estimate(hist, series.dt, cfg.m_lo, cfg.m_hi, cfg.count_floor)
                .k2;
      } catch (...) {
        result.error = current_error_label();
      }
    } catch (...) {
      result.error = current_error_label();
    }
    results[idx] = std::move(result);
  });

  const fs::path dir(cfg.out_dir);
  std::vector<std::pair<std::string, std::string>> manifest;

  {
    auto out = open_output(dir / "k2_estimates.csv");
    CsvWriter csv(out);
    csv.row({"system", "N", "k", "seed", "r_opt", "k2_at_r_opt", "error"});
    for (const auto& result : results)
      csv.row({source.label, std::to_string(result.plan.N),
               short_double(result.plan.k),
               std::to_string(result.plan.seed_idx), csv_opt(result.r_opt),
               csv_opt(result.k2_at_ropt), result.error});
    manifest.emplace_back("k2_estimates.csv",
                          "per-run K2 at the reference radius");
  }

  // Aggregate per (length, noise) combination in plan order.
  for (std::size_t li = 0; li < lengths.size(); ++li) {
    for (std::size_t ki = 0; ki < cfg.noise_levels.size(); ++ki) {
      std::vector<const K2Run*> combo;
      for (const auto& result : results)
        if (result.plan.length_idx == li && result.plan.noise_idx == ki)
          combo.push_back(&result);
      const std::string suffix = "N" + std::to_string(lengths[li]) + "_k" +
                                 short_double(cfg.noise_levels[ki]);

      {
        const std::string name = "k2_curve_" + suffix + ".csv";
        auto out = open_output(dir / name);
        CsvWriter csv(out);
        csv.row({"r", "log_r", "n_ok", "k2_mean", "k2_std", "ci_low",
                 "ci_high"});
        for (std::size_t g = 0; g < grid.size(); ++g) {
          std::vector<double> ok;
          for (const auto* run : combo)
            if (g < run->curve.size() && run->curve[g].ok)
              ok.push_back(run->curve[g].k2);
          std::vector<std::string> row{format_double(grid[g]),
                                       format_double(std::log(grid[g])),
                                       std::to_string(ok.size())};
          if (ok.size() >= 2) {
            const SampleSummary summary = gaussian_ci(ok);
            row.push_back(format_double(summary.mean));
            row.push_back(format_double(summary.sample_std));
            row.push_back(format_double(summary.ci_low));
            row.push_back(format_double(summary.ci_high));
          } else {
            row.insert(row.end(), {"", "", "", ""});
          }
          csv.row(row);
        }
        manifest.emplace_back(name,
                              "K2 vs radius with 95% Gaussian CI over seeds; "
                              "axes log_r vs k2");
      }

      {
        const std::string name = "k2_ref_" + suffix + ".csv";
        auto out = open_output(dir / name);
        CsvWriter csv(out);
        csv.row({"N", "k", "n_ok", "r_opt_mean", "k2_mean", "ci_low",
                 "ci_high", "mse_at_r_opt"});
        std::vector<double> ropts;
        std::vector<double> estimates;
        for (const auto* run : combo) {
          if (run->r_opt) ropts.push_back(*run->r_opt);
          if (run->k2_at_ropt) estimates.push_back(*run->k2_at_ropt);
        }
        std::vector<std::string> row{std::to_string(lengths[li]),
                                     short_double(cfg.noise_levels[ki]),
                                     std::to_string(estimates.size())};
        row.push_back(ropts.empty() ? "" : format_double(mean(ropts)));
        if (estimates.size() >= 2) {
          const SampleSummary summary = gaussian_ci(estimates);
          row.push_back(format_double(summary.mean));
          row.push_back(format_double(summary.ci_low));
          row.push_back(format_double(summary.ci_high));
          row.push_back(cfg.truth ? format_double(mse_point(0.0, estimates,
                                                            *cfg.truth)
                                                      .mse)
                                  : "");
        } else {
          row.insert(row.end(), {"", "", "", ""});
        }
        csv.row(row);
        manifest.emplace_back(name,
                              "reference-radius marker: mean r_opt and K2 at "
                              "r_opt over seeds");
      }

      if (cfg.truth) {
        const std::string name = "k2_mse_" + suffix + ".csv";
        auto out = open_output(dir / name);
        CsvWriter csv(out);
        csv.row({"r", "log_r", "n_ok", "mse", "log_mse", "ci_low", "ci_high"});
        const std::size_t combo_index = li * cfg.noise_levels.size() + ki;
        for (std::size_t g = 0; g < grid.size(); ++g) {
          std::vector<double> ok;
          for (const auto* run : combo)
            if (g < run->curve.size() && run->curve[g].ok)
              ok.push_back(run->curve[g].k2);
          std::vector<std::string> row{format_double(grid[g]),
                                       format_double(std::log(grid[g])),
                                       std::to_string(ok.size())};
          if (ok.size() >= 2) {
            const MsePoint point = mse_point(grid[g], ok, *cfg.truth);
            row.push_back(format_double(point.mse));
            row.push_back(point.finite ? format_double(point.log_mse) : "");
            // Percentile bootstrap of the MSE: resample the estimate set,
            // recompute MSE per resample.
            Rng rng(derive_seed(cfg.master_seed,
                                (1ull << 40) + combo_index * grid.size() + g));
            std::vector<double> resampled(1000);
            std::vector<double> draw(ok.size());
            for (auto& value : resampled) {
              for (auto& x : draw) x = ok[rng.next() % ok.size()];
              value = mse_point(grid[g], draw, *cfg.truth).mse;
            }
            std::sort(resampled.begin(), resampled.end());
            row.push_back(format_double(quantile_sorted(resampled, 0.025)));
            row.push_back(format_double(quantile_sorted(resampled, 0.975)));
          } else {
            row.insert(row.end(), {"", "", "", ""});
          }
          csv.row(row);
        }
        manifest.emplace_back(name,
                              "MSE of the K2 estimator vs radius against the "
                              "supplied truth, with 95% bootstrap CI; axes "
                              "log_r vs log_mse");
      }
    }
  }
  write_manifest(dir, manifest);
  return kOk;
}

int cmd_ingest(const IngestOptions& options, std::ostream& out) {
  const TimeSeries series = read_series(options.input, options.dt);
  const std::size_t N = series.values.size();
  std::size_t segment = options.segment == 0 ? N : options.segment;
  if (segment < 2) throw ArgumentError("ingest: segment must be >= 2");
  const std::size_t segments = N / segment;
  if (segments == 0)
    throw ArgumentError("ingest: segment longer than the file (" +
                        std::to_string(N) + " samples)");
  for (std::size_t s = 0; s < segments; ++s) {
    TimeSeries chunk;
    chunk.dt = series.dt;
    chunk.values.assign(series.values.begin() + s * segment,
                        series.values.begin() + (s + 1) * segment);
    const std::size_t window = (options.d - 1) * options.tau;
    if (chunk.values.size() < window + 2)
      throw ArgumentError("ingest: segment too short for d=" +
                          std::to_string(options.d) +
                          ", tau=" + std::to_string(options.tau));
    const std::size_t n = chunk.values.size() - window;
    const double sigma = sample_std(chunk.values);
    const double iqr = interquartile_range(chunk.values);
    const double spread = spread_estimate(chunk);
    const RadiusSelection sel =
        reference_radius(spread, n, options.d, options.norm);
    json summary;
    summary["file"] = options.input;
    summary["segment"] = s;
    summary["start"] = s * segment;
    summary["n_samples"] = chunk.values.size();
    summary["sigma"] = sigma;
    summary["iqr"] = iqr;
    summary["spread"] = spread;
    summary["d"] = options.d;
    summary["tau"] = options.tau;
    summary["n"] = n;
    summary["alpha"] = sel.alpha;
    summary["r_opt"] = sel.r_opt;
    summary["norm"] = norm_name(options.norm);
    out << summary.dump() << '\n';
  }
  return kOk;
}

namespace {

struct RadiusRuleSpec {
  std::string name;
  std::function<double(const TimeSeries&, const Trajectory&)> radius;
};

std::vector<RadiusRuleSpec> comparison_rules() {
  auto sigma_rule = [](double c) {
    return [c](const TimeSeries& series, const Trajectory&) {
      return c * sample_std(series.values);
    };
  };
  return {
      {"reference",
       [](const TimeSeries& series, const Trajectory& trajectory) {
         return reference_radius(spread_estimate(series), trajectory.n, 1,
                                 trajectory.norm)
             .r_opt;
       }},
      {"sigma_0.2", sigma_rule(0.2)},
      {"sigma_0.1", sigma_rule(0.1)},
      {"max_extent_0.1",
       [](const TimeSeries&, const Trajectory& trajectory) {
         return baseline_radius(
             trajectory,
             BaselineRule{BaselineRule::Kind::FractionOfMaxExtent, 0.1});
       }},
      {"recurrence_rate_0.10",
       [](const TimeSeries&, const Trajectory& trajectory) {
         return baseline_radius(
             trajectory,
             BaselineRule{BaselineRule::Kind::FixedRecurrenceRate, 0.10});
       }},
      {"recurrence_rate_0.04",
       [](const TimeSeries&, const Trajectory& trajectory) {
         return baseline_radius(
             trajectory,
             BaselineRule{BaselineRule::Kind::FixedRecurrenceRate, 0.04});
       }},
  };
}

std::vector<TimeSeries> load_group(const std::vector<std::string>& files,
                                   double dt, std::size_t segment) {
  std::vector<TimeSeries> group;
  for (const auto& file : files) {
    const TimeSeries whole = read_series(file, dt);
    if (segment == 0) {
      group.push_back(whole);
      continue;
    }
    const std::size_t chunks = whole.values.size() / segment;
    if (chunks == 0)
      throw ArgumentError("compare-rules: segment longer than '" + file + "'");
    for (std::size_t s = 0; s < chunks; ++s) {
      TimeSeries chunk;
      chunk.dt = whole.dt;
      chunk.values.assign(whole.values.begin() + s * segment,
                          whole.values.begin() + (s + 1) * segment);
      group.push_back(std::move(chunk));
    }
  }
  return group;
}

}  // namespace

int cmd_compare_rules(const CompareRulesOptions& options, std::ostream& out) {
  if (options.group_a.empty() || options.group_b.empty())
    throw ArgumentError("compare-rules: both groups need at least one file");
  const auto group_a = load_group(options.group_a, options.dt, options.segment);
  const auto group_b = load_group(options.group_b, options.dt, options.segment);

  auto estimate = [&](const TimeSeries& series,
                      const RadiusRuleSpec& rule) -> std::optional<double> {
    try {
      const Trajectory trajectory =
          delay_embed(series, EmbeddingSpec{1, 1}, Norm::L2);
      const double epsilon = rule.radius(series, trajectory);
      const auto hist =
          diagonal_histogram(series, epsilon, options.m_hi + 1, false);
      return k2_estimate(hist, series.dt, options.m_lo, options.m_hi,
                         options.count_floor)
          .k2;
    } catch (...) {
      return std::nullopt;
    }
  };

  std::ostringstream table;
  CsvWriter csv(table);
  csv.row({"rule", "z", "mean_" + options.label_a, "mean_" + options.label_b,
           "n_" + options.label_a, "n_" + options.label_b, "error"});
  for (const auto& rule : comparison_rules()) {
    std::vector<double> estimates_a;
    std::vector<double> estimates_b;
    for (const auto& series : group_a)
      if (auto k2 = estimate(series, rule)) estimates_a.push_back(*k2);
    for (const auto& series : group_b)
      if (auto k2 = estimate(series, rule)) estimates_b.push_back(*k2);
    std::vector<std::string> row{rule.name};
    try {
      const double z = two_sample_z(estimates_a, estimates_b);
      row.push_back(format_double(z));
      row.push_back(format_double(mean(estimates_a)));
      row.push_back(format_double(mean(estimates_b)));
      row.push_back(std::to_string(estimates_a.size()));
      row.push_back(std::to_string(estimates_b.size()));
      row.push_back("");
    } catch (...) {
      row.push_back("");
      row.push_back(estimates_a.empty() ? "" : format_double(mean(estimates_a)));
      row.push_back(estimates_b.empty() ? "" : format_double(mean(estimates_b)));
      row.push_back(std::to_string(estimates_a.size()));
      row.push_back(std::to_string(estimates_b.size()));
      row.push_back(current_error_label());
    }
    csv.row(row);
  }
  if (!options.out.empty()) {
    auto file = open_output(options.out);
    file << table.str();
  } else {
    out << table.str();
  }
  return kOk;
}

int cmd_rqa_export(const RqaExportOptions& options, std::ostream& out) {
  const TimeSeries series = read_series(options.input, options.dt);
  const Trajectory trajectory =
      delay_embed(series, EmbeddingSpec{options.d, options.tau}, options.norm);
  double epsilon = options.epsilon;
  if (!(epsilon > 0.0))
    epsilon = reference_radius(spread_estimate(series), trajectory.n,
                               options.d, options.norm)
                  .r_opt;
  const RecurrenceMatrix matrix = recurrence_matrix(trajectory, epsilon);
  if (!options.pbm.empty()) {
    auto file = open_output(options.pbm);
    write_pbm(file, matrix);
  }
  if (!options.pairs.empty()) {
    auto file = open_output(options.pairs);
    write_pairs_csv(file, matrix);
  }
  if (!options.hist.empty()) {
    const auto hist = diagonal_histogram(series, epsilon, options.m_max);
    auto file = open_output(options.hist);
    write_histogram_csv(file, hist);
  }
  if (!options.k2.empty()) {
    std::vector<double> grid(options.k2_radii);
    for (std::size_t i = 0; i < options.k2_radii; ++i)
      grid[i] = std::exp(options.k2_log_lo +
                         (options.k2_log_hi - options.k2_log_lo) *
                             static_cast<double>(i) /
                             static_cast<double>(options.k2_radii - 1));
    const auto curve =
        k2_curve(series, grid, options.m_lo, options.m_hi, options.count_floor);
    auto file = open_output(options.k2);
    write_k2_curve_csv(file, curve);
  }
  json summary;
  summary["n"] = matrix.n;
  summary["d"] = options.d;
  summary["tau"] = options.tau;
  summary["epsilon"] = epsilon;
  summary["recurrence_rate"] = matrix.recurrence_rate();
  summary["norm"] = norm_name(options.norm);
  out << summary.dump() << '\n';
  return kOk;
}

int cmd_alpha_table(const std::string& out_path, std::size_t d_max,
                    std::ostream& out) {
  if (out_path.empty()) {
    write_alpha_table_csv(out, d_max);
  } else {
    auto file = open_output(out_path);
    write_alpha_table_csv(file, d_max);
  }
  return kOk;
}

}  // namespace nlrad::cli
