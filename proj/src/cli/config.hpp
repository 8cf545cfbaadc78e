#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlrad/types.hpp"

namespace nlrad::cli {

// Exit codes reported by the tool. Library exceptions map 1:1.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kArgument = 2,
  kParse = 3,
  kDegenerate = 4,
  kInsufficient = 5,
  kDivergence = 6,
  kIo = 7,
};

/// Shared experiment description for simulate/corrdim/k2. Loaded from a flat
/// key=value config file and/or flags; flags win.
struct ExperimentConfig {
  std::string system;  // lorenz | rossler | henon; empty when input is set
  std::string input;   // single-column series file, alternative to system
  std::vector<std::size_t> lengths;
  std::vector<double> noise_levels{0.0};
  std::size_t seeds = 1;
  std::uint64_t master_seed = 12345;

  std::size_t d = 0;  // 0 -> native system dimension (1 for file input)
  long tau = 0;       // 0 -> auto (MI first minimum; 1 for the map)
  Norm norm = Norm::L2;

  std::vector<double> betas{0.01, 0.1, 0.5};
  std::size_t radii = 20;       // correlation-sum grid size
  double full_lo = 1e-8;        // full-range grid lower bound
  double full_hi_sigmas = 2.0;  // upper bound as a multiple of sigma

  std::size_t k2_radii = 50;  // K2 grid: k2_radii points, log r in
  double k2_log_lo = -4.0;    // [k2_log_lo, k2_log_hi] (natural log)
  double k2_log_hi = 0.5;
  std::optional<double> truth;  // reference entropy for the MSE table
  std::size_t m_lo = 2;
  std::size_t m_hi = 8;
  std::uint64_t count_floor = 10;

  std::size_t mi_bins = 64;
  std::size_t mi_max_tau = 0;  // 0 -> N/10

  unsigned threads = 0;  // 0 -> hardware
  std::string out_dir = ".";
  double dt = 0.0;                 // 0 -> system default (1 for files)
  long transient = -1;             // -1 -> system default
};

/// Applies a flat key=value config file ('#' comments, lists comma
/// separated). Keys are spelled like the corresponding long flags; flags
/// parsed afterwards override file values. norm_text receives the raw norm
/// name so the caller can validate it alongside the flag.
void load_config_file(const std::string& path, ExperimentConfig& config,
                      std::string& norm_text);

/// Seeds for run #index under one master seed: the series generator and the
/// noise injector get consecutive derived streams.
std::uint64_t run_series_seed(std::uint64_t master, std::size_t run_index);
std::uint64_t run_noise_seed(std::uint64_t master, std::size_t run_index);

/// Compact value formatting for file names (0.05 -> "0.05").
std::string short_double(double value);

}  // namespace nlrad::cli
