#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "nlrad/types.hpp"

namespace nlrad::cli {

/// Prints the active exception to err and returns its exit code.
int report_current_exception(std::ostream& err);

int cmd_simulate(const ExperimentConfig& config, bool also_csv = false);

struct RadiusOptions {
  std::string input;
  std::size_t d = 1;
  std::size_t tau = 1;
  Norm norm = Norm::L2;
  double dt = 1.0;
};
int cmd_radius(const RadiusOptions& options, std::ostream& out);

struct EmbedDelayOptions {
  std::string input;
  std::size_t d = 2;
  long tau = 0;  // 0 -> auto (MI first minimum)
  std::size_t max_tau = 0;
  std::size_t bins = 64;
  Norm norm = Norm::L2;
  double dt = 1.0;
  std::string out;  // trajectory CSV, optional
};
int cmd_embed_delay(const EmbedDelayOptions& options, std::ostream& out);

int cmd_corrdim(const ExperimentConfig& config);
int cmd_k2(const ExperimentConfig& config);

struct IngestOptions {
  std::string input;
  double dt = 1.0;
  std::size_t segment = 0;  // 0 -> whole file
  std::size_t d = 1;
  std::size_t tau = 1;
  Norm norm = Norm::L2;
};
int cmd_ingest(const IngestOptions& options, std::ostream& out);

struct CompareRulesOptions {
  std::vector<std::string> group_a;
  std::vector<std::string> group_b;
  std::string label_a = "a";
  std::string label_b = "b";
  double dt = 1.0;
  std::size_t segment = 0;
  std::size_t m_lo = 2;
  std::size_t m_hi = 8;
  std::uint64_t count_floor = 10;
  std::string out;  // CSV path; empty -> stdout only summary
};
int cmd_compare_rules(const CompareRulesOptions& options, std::ostream& out);

struct RqaExportOptions {
  std::string input;
  double dt = 1.0;
  std::size_t d = 1;
  std::size_t tau = 1;
  Norm norm = Norm::L2;
  double epsilon = 0.0;  // 0 -> reference rule
  std::size_t m_max = 10;
  std::string pbm;    // output paths; empty entries are skipped
  std::string pairs;
  std::string hist;
  std::string k2;     // K2(r) scan over k2_radii points
  std::size_t k2_radii = 50;
  double k2_log_lo = -4.0;
  double k2_log_hi = 0.5;
  std::size_t m_lo = 2;
  std::size_t m_hi = 8;
  std::uint64_t count_floor = 10;
};
int cmd_rqa_export(const RqaExportOptions& options, std::ostream& out);

int cmd_alpha_table(const std::string& out_path, std::size_t d_max,
                    std::ostream& out);

}  // namespace nlrad::cli
