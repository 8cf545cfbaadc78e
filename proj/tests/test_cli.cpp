#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>
#include <string>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "nlrad/io.hpp"
#include "nlrad/rng.hpp"
#include "nlrad/types.hpp"

using namespace nlrad;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("nlrad_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::size_t count_lines(const std::string& text) {
  std::size_t lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  return lines;
}

int run_cli(const std::string& args, const fs::path& dir,
            std::string* output = nullptr) {
  const fs::path capture = dir / "cli_output.txt";
  const std::string command = std::string(NLRAD_CLI_PATH) + " " + args + " > " +
                              capture.string() + " 2>&1";
  const int status = std::system(command.c_str());
  if (output) *output = slurp(capture);
  return WEXITSTATUS(status);
}

TimeSeries gaussian_series(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  TimeSeries series;
  series.values.resize(n);
  for (auto& v : series.values) v = rng.gaussian();
  return series;
}

}  // namespace

TEST_CASE("cmd_radius reports a consistent selection") {
  const auto dir = fresh_dir("radius");
  write_series(dir / "series.txt", gaussian_series(1024, 3));

  cli::RadiusOptions options;
  options.input = (dir / "series.txt").string();
  std::ostringstream out;
  CHECK(cli::cmd_radius(options, out) == cli::kOk);
  const json summary = json::parse(out.str());
  CHECK(summary["n"] == 1024);
  CHECK(summary["d"] == 1);
  const double expected = summary["alpha"].get<double>() *
                          summary["spread"].get<double>() *
                          std::pow(1024.0, -0.2);
  CHECK(summary["r_opt"].get<double>() == doctest::Approx(expected));
}

TEST_CASE("cmd_radius embedding bookkeeping n = N - (d-1) tau") {
  const auto dir = fresh_dir("radius_embed");
  write_series(dir / "series.txt", gaussian_series(4000, 4));
  cli::RadiusOptions options;
  options.input = (dir / "series.txt").string();
  options.d = 3;
  options.tau = 17;
  std::ostringstream out;
  CHECK(cli::cmd_radius(options, out) == cli::kOk);
  CHECK(json::parse(out.str())["n"] == 3966);
}

TEST_CASE("cli exit codes: degenerate, parse, argument") {
  const auto dir = fresh_dir("exit_codes");
  {
    std::ofstream constant(dir / "constant.txt");
    for (int i = 0; i < 64; ++i) constant << "1.0\n";
  }
  CHECK(run_cli("radius --input " + (dir / "constant.txt").string(), dir) ==
        cli::kDegenerate);

  {
    std::ofstream bad(dir / "bad.txt");
    bad << "1.0\n2.0\npotato\n";
  }
  std::string output;
  CHECK(run_cli("radius --input " + (dir / "bad.txt").string(), dir,
                &output) == cli::kParse);
  CHECK(output.find("line 3") != std::string::npos);

  {
    std::ofstream empty(dir / "empty.txt");
  }
  CHECK(run_cli("radius --input " + (dir / "empty.txt").string(), dir) ==
        cli::kArgument);

  CHECK(run_cli("radius", dir) == cli::kArgument);  // missing --input
  CHECK(run_cli("radius --input " + (dir / "missing.txt").string(), dir) ==
        cli::kIo);
}

TEST_CASE("exception mapping covers the library error types") {
  auto code_for = [](auto&& raise) {
    std::ostringstream sink;
    try {
      raise();
    } catch (...) {
      return cli::report_current_exception(sink);
    }
    return 0;
  };
  CHECK(code_for([] { throw ArgumentError("x"); }) == cli::kArgument);
  CHECK(code_for([] { throw ParseError("x", 3); }) == cli::kParse);
  CHECK(code_for([] { throw DegenerateInputError("x"); }) == cli::kDegenerate);
  CHECK(code_for([] { throw InsufficientDataError("x"); }) ==
        cli::kInsufficient);
  CHECK(code_for([] { throw DivergenceError("x"); }) == cli::kDivergence);
  CHECK(code_for([] { throw IoError("x"); }) == cli::kIo);
}

TEST_CASE("cmd_simulate writes one file per run, reproducibly") {
  const auto dir_a = fresh_dir("simulate_a");
  const auto dir_b = fresh_dir("simulate_b");
  cli::ExperimentConfig cfg;
  cfg.system = "henon";
  cfg.lengths = {200};
  cfg.seeds = 3;
  cfg.out_dir = dir_a.string();
  CHECK(cli::cmd_simulate(cfg) == cli::kOk);
  for (int s = 0; s < 3; ++s) {
    const auto file = dir_a / ("henon_N200_k0_s" + std::to_string(s) + ".txt");
    REQUIRE(fs::exists(file));
    const std::string text = slurp(file);
    std::size_t samples = 0;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line))
      if (!line.empty() && line[0] != '#') ++samples;
    CHECK(samples == 200);
  }
  cfg.out_dir = dir_b.string();
  CHECK(cli::cmd_simulate(cfg) == cli::kOk);
  CHECK(slurp(dir_a / "henon_N200_k0_s0.txt") ==
        slurp(dir_b / "henon_N200_k0_s0.txt"));
  CHECK(slurp(dir_a / "henon_N200_k0_s1.txt") !=
        slurp(dir_a / "henon_N200_k0_s2.txt"));
}

TEST_CASE("cmd_ingest segments a long record") {
  const auto dir = fresh_dir("ingest");
  write_series(dir / "record.txt", gaussian_series(4096, 9),
               {"synthetic record"});
  cli::IngestOptions options;
  options.input = (dir / "record.txt").string();
  options.segment = 1024;
  std::ostringstream out;
  CHECK(cli::cmd_ingest(options, out) == cli::kOk);
  std::istringstream lines(out.str());
  std::string line;
  std::size_t segments = 0;
  while (std::getline(lines, line)) {
    const json summary = json::parse(line);
    CHECK(summary["n_samples"] == 1024);
    CHECK(summary["segment"] == segments);
    CHECK(summary["r_opt"].get<double>() > 0.0);
    ++segments;
  }
  CHECK(segments == 4);
}

TEST_CASE("cmd_corrdim emits the long-format table and curves") {
  const auto dir = fresh_dir("corrdim");
  cli::ExperimentConfig cfg;
  cfg.system = "henon";
  cfg.lengths = {100};
  cfg.seeds = 2;
  cfg.betas = {0.1, 0.5};
  cfg.out_dir = dir.string();
  CHECK(cli::cmd_corrdim(cfg) == cli::kOk);
  const std::string table = slurp(dir / "estimates.csv");
  // header + 2 runs x (full + 2 betas)
  CHECK(count_lines(table) == 1 + 2 * 3);
  CHECK(table.find("system,N,k,seed,method,beta,d2,error") == 0);
  CHECK(fs::exists(dir / "curve_full_N100_k0.csv"));
  CHECK(fs::exists(dir / "curve_beta0.1_N100_k0.csv"));
  CHECK(fs::exists(dir / "curve_beta0.5_N100_k0.csv"));
  CHECK(fs::exists(dir / "manifest.txt"));
}

TEST_CASE("cmd_corrdim is byte-deterministic") {
  cli::ExperimentConfig cfg;
  cfg.system = "henon";
  cfg.lengths = {80, 120};
  cfg.seeds = 2;
  cfg.noise_levels = {0.0, 0.1};
  const auto dir_a = fresh_dir("corrdim_det_a");
  const auto dir_b = fresh_dir("corrdim_det_b");
  cfg.out_dir = dir_a.string();
  CHECK(cli::cmd_corrdim(cfg) == cli::kOk);
  cfg.out_dir = dir_b.string();
  CHECK(cli::cmd_corrdim(cfg) == cli::kOk);
  CHECK(slurp(dir_a / "estimates.csv") == slurp(dir_b / "estimates.csv"));
}

TEST_CASE("cmd_k2 writes curves, markers and the MSE table") {
  const auto dir = fresh_dir("k2");
  cli::ExperimentConfig cfg;
  cfg.system = "henon";
  cfg.lengths = {150};
  cfg.seeds = 3;
  cfg.k2_radii = 10;
  cfg.truth = 0.42;
  cfg.out_dir = dir.string();
  CHECK(cli::cmd_k2(cfg) == cli::kOk);
  CHECK(fs::exists(dir / "k2_estimates.csv"));
  const std::string curve = slurp(dir / "k2_curve_N150_k0.csv");
  CHECK(count_lines(curve) == 1 + 10);
  CHECK(fs::exists(dir / "k2_ref_N150_k0.csv"));
  CHECK(fs::exists(dir / "k2_mse_N150_k0.csv"));

  // Without the truth value the MSE table is omitted, curves stay.
  const auto bare = fresh_dir("k2_bare");
  cfg.truth.reset();
  cfg.out_dir = bare.string();
  CHECK(cli::cmd_k2(cfg) == cli::kOk);
  CHECK(fs::exists(bare / "k2_curve_N150_k0.csv"));
  CHECK_FALSE(fs::exists(bare / "k2_mse_N150_k0.csv"));
}

TEST_CASE("cmd_compare_rules emits six rows and z=0 on identical groups") {
  const auto dir = fresh_dir("compare");
  for (int i = 0; i < 3; ++i)
    write_series(dir / ("series" + std::to_string(i) + ".txt"),
                 gaussian_series(400, 100 + i));
  cli::CompareRulesOptions options;
  for (int i = 0; i < 3; ++i) {
    options.group_a.push_back((dir / ("series" + std::to_string(i) + ".txt")).string());
    options.group_b.push_back((dir / ("series" + std::to_string(i) + ".txt")).string());
  }
  std::ostringstream out;
  CHECK(cli::cmd_compare_rules(options, out) == cli::kOk);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line.find("rule,z,mean_a,mean_b,n_a,n_b,error") == 0);
  std::size_t rules = 0;
  while (std::getline(lines, line)) {
    if (line.empty() || line == "\r") continue;
    ++rules;
    const auto comma = line.find(',');
    const auto next = line.find(',', comma + 1);
    const std::string z_field = line.substr(comma + 1, next - comma - 1);
    if (!z_field.empty()) CHECK(std::stod(z_field) == doctest::Approx(0.0));
  }
  CHECK(rules == 6);
}

TEST_CASE("cmd_rqa_export writes matrix, pairs, histogram and K2 scan") {
  const auto dir = fresh_dir("rqa");
  write_series(dir / "series.txt", gaussian_series(120, 11));
  cli::RqaExportOptions options;
  options.input = (dir / "series.txt").string();
  options.pbm = (dir / "matrix.pbm").string();
  options.pairs = (dir / "pairs.csv").string();
  options.hist = (dir / "hist.csv").string();
  options.k2 = (dir / "k2.csv").string();
  options.k2_radii = 12;
  std::ostringstream out;
  CHECK(cli::cmd_rqa_export(options, out) == cli::kOk);
  const json summary = json::parse(out.str());
  CHECK(summary["n"] == 120);
  CHECK(summary["epsilon"].get<double>() > 0.0);
  CHECK(summary["recurrence_rate"].get<double>() > 0.0);
  const std::string pbm = slurp(dir / "matrix.pbm");
  CHECK(pbm.rfind("P1\n120 120\n", 0) == 0);
  CHECK(count_lines(slurp(dir / "hist.csv")) == 1 + 10);
  const std::string k2_csv = slurp(dir / "k2.csv");
  CHECK(count_lines(k2_csv) == 1 + 12);
  CHECK(k2_csv.find("r,log_r,k2,ok") == 0);
}

TEST_CASE("cmd_corrdim records per-run failures as error rows") {
  const auto dir = fresh_dir("corrdim_errors");
  {
    std::ofstream constant(dir / "flat.txt");
    for (int i = 0; i < 64; ++i) constant << "2.0\n";
  }
  cli::ExperimentConfig cfg;
  cfg.input = (dir / "flat.txt").string();
  cfg.seeds = 1;
  cfg.betas = {0.1};
  cfg.out_dir = (dir / "out").string();
  CHECK(cli::cmd_corrdim(cfg) == cli::kOk);  // run continues, rows carry codes
  const std::string table = slurp(dir / "out" / "estimates.csv");
  CHECK(count_lines(table) == 1 + 2);  // full + one beta
  CHECK(table.find("degenerate_input") != std::string::npos);
}

TEST_CASE("cmd_compare_rules segments long records") {
  const auto dir = fresh_dir("compare_segment");
  write_series(dir / "a.txt", gaussian_series(1200, 301));
  write_series(dir / "b.txt", gaussian_series(1200, 302));
  cli::CompareRulesOptions options;
  options.group_a = {(dir / "a.txt").string()};
  options.group_b = {(dir / "b.txt").string()};
  options.segment = 400;
  std::ostringstream out;
  CHECK(cli::cmd_compare_rules(options, out) == cli::kOk);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);  // header
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty() || line == "\r") continue;
    ++rows;
    // three segments per group whenever the rule produced estimates
    if (line.find(",,") == std::string::npos)
      CHECK(line.find(",3,3") != std::string::npos);
  }
  CHECK(rows == 6);
}

TEST_CASE("cmd_embed_delay auto-selects a delay and writes the trajectory") {
  const auto dir = fresh_dir("embed");
  TimeSeries sine;
  sine.values.resize(1000);
  for (std::size_t i = 0; i < sine.values.size(); ++i)
    sine.values[i] =
        std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / 100.0);
  write_series(dir / "sine.txt", sine);
  cli::EmbedDelayOptions options;
  options.input = (dir / "sine.txt").string();
  options.d = 2;
  options.out = (dir / "trajectory.csv").string();
  std::ostringstream out;
  CHECK(cli::cmd_embed_delay(options, out) == cli::kOk);
  const json summary = json::parse(out.str());
  CHECK(summary["auto"] == true);
  const std::size_t tau = summary["tau"].get<std::size_t>();
  CHECK(tau >= 1);
  CHECK(summary["n"].get<std::size_t>() == 1000 - tau);
  const std::string csv = slurp(dir / "trajectory.csv");
  CHECK(count_lines(csv) == 1 + summary["n"].get<std::size_t>());

  // Fixed delay bypasses the selector.
  options.tau = 17;
  options.out.clear();
  std::ostringstream fixed;
  CHECK(cli::cmd_embed_delay(options, fixed) == cli::kOk);
  const json fixed_summary = json::parse(fixed.str());
  CHECK(fixed_summary["auto"] == false);
  CHECK(fixed_summary["tau"] == 17);
  CHECK(fixed_summary["n"] == 983);
}

TEST_CASE("alpha-table subcommand emits 15 coefficients") {
  std::ostringstream out;
  CHECK(cli::cmd_alpha_table("", 5, out) == cli::kOk);
  CHECK(count_lines(out.str()) == 1 + 15);
}

TEST_CASE("config file keys merge under flag overrides") {
  const auto dir = fresh_dir("config");
  {
    std::ofstream config(dir / "experiment.cfg");
    config << "# comment line\n"
           << "system=henon\n"
           << "lengths=60,90\n"
           << "seeds=2\n"
           << "betas=0.1,0.5\n"
           << "out-dir=" << (dir / "out_from_file").string() << "\n";
  }
  std::string output;
  const int code = run_cli("corrdim --config " +
                               (dir / "experiment.cfg").string() +
                               " --out-dir " + (dir / "out_flag").string(),
                           dir, &output);
  CHECK(code == cli::kOk);
  CHECK_FALSE(fs::exists(dir / "out_from_file"));
  const std::string table = slurp(dir / "out_flag" / "estimates.csv");
  CHECK(count_lines(table) == 1 + 4 * 3);  // 2 lengths x 2 seeds x 3 methods

  // Config-file-only keys survive when no flag overrides them: truth from
  // the file must switch the MSE table on.
  {
    std::ofstream config(dir / "k2.cfg");
    config << "system=henon\nlengths=150\nseeds=2\nk2-radii=8\n"
           << "truth=0.42\nout-dir=" << (dir / "k2_out").string() << "\n";
  }
  CHECK(run_cli("k2 --config " + (dir / "k2.cfg").string(), dir, &output) ==
        cli::kOk);
  CHECK(fs::exists(dir / "k2_out" / "k2_mse_N150_k0.csv"));

  // Unknown keys are parse errors with the line number.
  {
    std::ofstream config(dir / "bad.cfg");
    config << "system=henon\nwibble=3\n";
  }
  CHECK(run_cli("corrdim --config " + (dir / "bad.cfg").string(), dir,
                &output) == cli::kParse);
  CHECK(output.find("line 2") != std::string::npos);
}
