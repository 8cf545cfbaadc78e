#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "nlrad/types.hpp"

namespace {

using nlrad::cli::ExperimentConfig;

void add_norm_option(CLI::App* app, std::string& storage) {
  app->add_option("--norm", storage, "distance norm: L1, L2 or Linf");
}

std::string config_placeholder;

/// Common experiment keys; every config-file key has a flag of the same name.
/// The config file itself is applied before parsing (see main), so flags
/// override file values.
void add_experiment_options(CLI::App* app, ExperimentConfig& cfg,
                            std::string& norm_value) {
  app->add_option("--config", config_placeholder,
                  "flat key=value config file (flags override keys)");
  app->add_option("--system", cfg.system, "lorenz, rossler or henon");
  app->add_option("--input", cfg.input,
                  "single-column series file instead of a simulated system");
  app->add_option("--lengths", cfg.lengths, "series lengths N, comma separated")
      ->delimiter(',');
  app->add_option("--noise-levels", cfg.noise_levels,
                  "observational noise levels k, comma separated")
      ->delimiter(',');
  app->add_option("--seeds", cfg.seeds, "number of runs per combination");
  app->add_option("--master-seed", cfg.master_seed,
                  "master seed; all run seeds derive from it");
  app->add_option("--d", cfg.d, "embedding dimension (0 = system default)");
  app->add_option("--tau", cfg.tau,
                  "embedding delay (0 = auto: MI first minimum, 1 for maps)");
  add_norm_option(app, norm_value);
  app->add_option("--betas", cfg.betas, "range parameters, comma separated")
      ->delimiter(',');
  app->add_option("--radii", cfg.radii, "points per correlation-sum grid");
  app->add_option("--full-lo", cfg.full_lo, "full-range grid lower bound");
  app->add_option("--full-hi-sigmas", cfg.full_hi_sigmas,
                  "full-range upper bound in units of sigma");
  app->add_option("--k2-radii", cfg.k2_radii, "points on the K2 radius grid");
  app->add_option("--k2-log-lo", cfg.k2_log_lo, "K2 grid: lower log r");
  app->add_option("--k2-log-hi", cfg.k2_log_hi, "K2 grid: upper log r");
  app->add_option("--m-lo", cfg.m_lo, "lower diagonal length for the K2 fit");
  app->add_option("--m-hi", cfg.m_hi, "upper diagonal length for the K2 fit");
  app->add_option("--count-floor", cfg.count_floor,
                  "minimum diagonal count for a usable radius");
  app->add_option("--mi-bins", cfg.mi_bins, "histogram bins for the MI delay");
  app->add_option("--mi-max-tau", cfg.mi_max_tau,
                  "largest delay scanned (0 = N/10)");
  app->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
  app->add_option("--out-dir", cfg.out_dir, "output directory");
  app->add_option("--dt", cfg.dt, "sampling step override (0 = default)");
  app->add_option("--transient", cfg.transient,
                  "transient samples to discard (-1 = system default)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "nonlinear time-series radius toolkit: reference-rule radius "
      "selection, correlation dimension and K2 entropy"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string experiment_norm = "L2";
  bool simulate_csv = false;
  std::optional<double> truth_value;

  auto* simulate = app.add_subcommand(
      "simulate", "generate seeded benchmark series files");
  add_experiment_options(simulate, cfg, experiment_norm);
  simulate->add_flag("--csv", simulate_csv,
                     "also write full-state CSV (t,x[,y,z])");

  nlrad::cli::RadiusOptions radius_options;
  std::string radius_norm = "L2";
  auto* radius = app.add_subcommand(
      "radius", "reference-rule radius for a series file");
  radius->add_option("--input", radius_options.input, "series file")
      ->required();
  radius->add_option("--d", radius_options.d, "embedding dimension")
      ->default_val(1);
  radius->add_option("--tau", radius_options.tau, "embedding delay")
      ->default_val(1);
  radius->add_option("--dt", radius_options.dt, "sampling step")
      ->default_val(1.0);
  add_norm_option(radius, radius_norm);

  nlrad::cli::EmbedDelayOptions embed_options;
  std::string embed_norm = "L2";
  auto* embed = app.add_subcommand(
      "embed-delay", "delay embedding with optional MI delay selection");
  embed->add_option("--input", embed_options.input, "series file")->required();
  embed->add_option("--d", embed_options.d, "embedding dimension")
      ->default_val(2);
  embed->add_option("--tau", embed_options.tau,
                    "embedding delay (0 = MI first minimum)")
      ->default_val(0);
  embed->add_option("--max-tau", embed_options.max_tau,
                    "largest delay scanned (0 = N/10)");
  embed->add_option("--bins", embed_options.bins, "MI histogram bins")
      ->default_val(64);
  embed->add_option("--dt", embed_options.dt, "sampling step")->default_val(1.0);
  embed->add_option("--out", embed_options.out, "trajectory CSV output path");
  add_norm_option(embed, embed_norm);

  auto* corrdim = app.add_subcommand(
      "corrdim", "correlation-dimension study over lengths/noise/seeds");
  add_experiment_options(corrdim, cfg, experiment_norm);

  auto* k2 = app.add_subcommand(
      "k2", "K2 entropy curves, reference markers and MSE table");
  add_experiment_options(k2, cfg, experiment_norm);
  k2->add_option("--truth", truth_value,
                 "reference entropy for the MSE table");

  nlrad::cli::IngestOptions ingest_options;
  std::string ingest_norm = "L2";
  auto* ingest = app.add_subcommand(
      "ingest", "validate a series file and report its reference radius");
  ingest->add_option("--input", ingest_options.input, "series file")
      ->required();
  ingest->add_option("--dt", ingest_options.dt, "sampling step")
      ->default_val(1.0);
  ingest->add_option("--segment", ingest_options.segment,
                     "split into segments of this many samples");
  ingest->add_option("--d", ingest_options.d, "embedding dimension")
      ->default_val(1);
  ingest->add_option("--tau", ingest_options.tau, "embedding delay")
      ->default_val(1);
  add_norm_option(ingest, ingest_norm);

  nlrad::cli::CompareRulesOptions compare_options;
  auto* compare = app.add_subcommand(
      "compare-rules",
      "two-group Z-test of K2 under six radius selection rules");
  compare->add_option("--group-a", compare_options.group_a, "group A files")
      ->required()
      ->delimiter(',');
  compare->add_option("--group-b", compare_options.group_b, "group B files")
      ->required()
      ->delimiter(',');
  compare->add_option("--label-a", compare_options.label_a, "group A label");
  compare->add_option("--label-b", compare_options.label_b, "group B label");
  compare->add_option("--dt", compare_options.dt, "sampling step")
      ->default_val(1.0);
  compare->add_option("--segment", compare_options.segment,
                      "split each file into segments of this many samples");
  compare->add_option("--m-lo", compare_options.m_lo, "lower diagonal length")
      ->default_val(2);
  compare->add_option("--m-hi", compare_options.m_hi, "upper diagonal length")
      ->default_val(8);
  compare->add_option("--count-floor", compare_options.count_floor,
                      "minimum diagonal count")
      ->default_val(10);
  compare->add_option("--out", compare_options.out, "output CSV (default stdout)");

  nlrad::cli::RqaExportOptions rqa_options;
  std::string rqa_norm = "L2";
  auto* rqa = app.add_subcommand(
      "rqa-export", "recurrence matrix and diagonal histogram export");
  rqa->add_option("--input", rqa_options.input, "series file")->required();
  rqa->add_option("--dt", rqa_options.dt, "sampling step")->default_val(1.0);
  rqa->add_option("--d", rqa_options.d, "embedding dimension")->default_val(1);
  rqa->add_option("--tau", rqa_options.tau, "embedding delay")->default_val(1);
  rqa->add_option("--epsilon", rqa_options.epsilon,
                  "radius (0 = reference rule)");
  rqa->add_option("--m-max", rqa_options.m_max, "histogram depth")
      ->default_val(10);
  rqa->add_option("--pbm", rqa_options.pbm, "recurrence matrix PBM path");
  rqa->add_option("--pairs", rqa_options.pairs, "recurrent pairs CSV path");
  rqa->add_option("--hist", rqa_options.hist, "diagonal histogram CSV path");
  rqa->add_option("--k2-curve", rqa_options.k2, "K2(r) scan CSV path");
  rqa->add_option("--k2-radii", rqa_options.k2_radii, "K2 scan grid size");
  rqa->add_option("--k2-log-lo", rqa_options.k2_log_lo, "K2 scan lower log r");
  rqa->add_option("--k2-log-hi", rqa_options.k2_log_hi, "K2 scan upper log r");
  rqa->add_option("--m-lo", rqa_options.m_lo, "lower diagonal length");
  rqa->add_option("--m-hi", rqa_options.m_hi, "upper diagonal length");
  rqa->add_option("--count-floor", rqa_options.count_floor,
                  "minimum diagonal count");
  add_norm_option(rqa, rqa_norm);

  std::string alpha_out;
  std::size_t alpha_dmax = 5;
  auto* alpha = app.add_subcommand(
      "alpha-table", "radius coefficient table as CSV (p,d,alpha)");
  alpha->add_option("--out", alpha_out, "output CSV (default stdout)");
  alpha->add_option("--d-max", alpha_dmax, "largest dimension")->default_val(5);

  // The config file loads before CLI11 writes flag values, so explicit
  // flags override file keys.
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    std::string path;
    if (arg == "--config" && i + 1 < argc)
      path = argv[i + 1];
    else if (arg.rfind("--config=", 0) == 0)
      path = arg.substr(9);
    if (!path.empty()) {
      try {
        nlrad::cli::load_config_file(path, cfg, experiment_norm);
      } catch (...) {
        return nlrad::cli::report_current_exception(std::cerr);
      }
      break;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return nlrad::cli::kArgument;
  }

  try {
    cfg.norm = nlrad::norm_from_string(experiment_norm);
    if (truth_value) cfg.truth = truth_value;  // config-file value otherwise
    if (simulate->parsed()) return nlrad::cli::cmd_simulate(cfg, simulate_csv);
    if (radius->parsed()) {
      radius_options.norm = nlrad::norm_from_string(radius_norm);
      return nlrad::cli::cmd_radius(radius_options, std::cout);
    }
    if (embed->parsed()) {
      embed_options.norm = nlrad::norm_from_string(embed_norm);
      return nlrad::cli::cmd_embed_delay(embed_options, std::cout);
    }
    if (corrdim->parsed()) return nlrad::cli::cmd_corrdim(cfg);
    if (k2->parsed()) return nlrad::cli::cmd_k2(cfg);
    if (ingest->parsed()) {
      ingest_options.norm = nlrad::norm_from_string(ingest_norm);
      return nlrad::cli::cmd_ingest(ingest_options, std::cout);
    }
    if (compare->parsed())
      return nlrad::cli::cmd_compare_rules(compare_options, std::cout);
    if (rqa->parsed()) {
      rqa_options.norm = nlrad::norm_from_string(rqa_norm);
      return nlrad::cli::cmd_rqa_export(rqa_options, std::cout);
    }
    if (alpha->parsed())
      return nlrad::cli::cmd_alpha_table(alpha_out, alpha_dmax, std::cout);
  } catch (...) {
    return nlrad::cli::report_current_exception(std::cerr);
  }
  return nlrad::cli::kFailure;
}
