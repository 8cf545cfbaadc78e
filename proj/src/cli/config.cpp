#include "cli/config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "nlrad/rng.hpp"

namespace nlrad::cli {

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) parts.push_back(item);
  return parts;
}

double to_double(const std::string& text, std::size_t line) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ParseError("config: expected a number, got '" + text + "'", line);
  }
}

long long to_integer(const std::string& text, std::size_t line) {
  try {
    std::size_t used = 0;
    const long long value = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ParseError("config: expected an integer, got '" + text + "'", line);
  }
}

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

}  // namespace

void load_config_file(const std::string& path, ExperimentConfig& config,
                      std::string& norm_text) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");

  const std::map<std::string,
                 std::function<void(const std::string&, std::size_t)>>
      setters = {
          {"system", [&](const std::string& v, std::size_t) { config.system = v; }},
          {"input", [&](const std::string& v, std::size_t) { config.input = v; }},
          {"lengths",
           [&](const std::string& v, std::size_t line) {
             config.lengths.clear();
             for (const auto& item : split_list(v))
               config.lengths.push_back(
                   static_cast<std::size_t>(to_integer(item, line)));
           }},
          {"noise-levels",
           [&](const std::string& v, std::size_t line) {
             config.noise_levels.clear();
             for (const auto& item : split_list(v))
               config.noise_levels.push_back(to_double(item, line));
           }},
          {"seeds",
           [&](const std::string& v, std::size_t line) {
             config.seeds = static_cast<std::size_t>(to_integer(v, line));
           }},
          {"master-seed",
           [&](const std::string& v, std::size_t line) {
             config.master_seed =
                 static_cast<std::uint64_t>(to_integer(v, line));
           }},
          {"d",
           [&](const std::string& v, std::size_t line) {
             config.d = static_cast<std::size_t>(to_integer(v, line));
           }},
          {"tau",
           [&](const std::string& v, std::size_t line) {
             config.tau = static_cast<long>(to_integer(v, line));
           }},
          {"norm", [&](const std::string& v, std::size_t) { norm_text = v; }},
          {"betas",
           [&](const std::string& v, std::size_t line) {
             config.betas.clear();
             for (const auto& item : split_list(v))
               config.betas.push_back(to_double(item, line));
           }},
          {"radii",
           [&](const std::string& v, std::size_t line) {
             config.radii = static_cast<std::size_t>(to_integer(v, line));
           }},
          {"full-lo",
           [&](const std::string& v, std::size_t line) {
             config.full_lo = to_double(v, line);
           }},
          {"full-hi-sigmas",
           [&](const std::string& v, std::size_t line) {
             config.full_hi_sigmas = to_double(v, line);
           }},
          {"k2-radii",
           [&](const std::string& v, std::size_t line) {
             config.k2_radii = static_cast<std::size_t>(to_integer(v, line));
           }},
          {"k2-log-lo",
           [&](const std::string& v, std::size_t line) {
             config.k2_log_lo = to_double(v, line);
           }},
          {"k2-log-hi",
           [&](const std::string& v, std::size_t line) {
             config.k2_log_hi = to_double(v, line);
           }},
          {"truth",
           [&](const std::string& v, std::size_t line) {
             config.truth = to_double(v, line);
           }},
          {"m-lo",
           [&](const std::string& v, std::size_t line) {
             config.m_lo = static_cast<std::size_t>(to_integer(v, line));
           }},
          {"m-hi",
           [&](const std::string& v, std::size_t line) {
             config.m_hi = static_cast<std::size_t>(to_integer(v, line));
           }},
          {"count-floor",
           [&](const std::string& v, std::size_t line) {
             config.count_floor =
                 static_cast<std::uint64_t>(to_integer(v, line));
           }},
          {"mi-bins",
           [&](const std::string& v, std::size_t line) {
             config.mi_bins = static_cast<std::size_t>(to_integer(v, line));
           }},
          {"mi-max-tau",
           [&](const std::string& v, std::size_t line) {
             config.mi_max_tau = static_cast<std::size_t>(to_integer(v, line));
           }},
          {"threads",
           [&](const std::string& v, std::size_t line) {
             config.threads = static_cast<unsigned>(to_integer(v, line));
           }},
          {"out-dir",
           [&](const std::string& v, std::size_t) { config.out_dir = v; }},
          {"dt",
           [&](const std::string& v, std::size_t line) {
             config.dt = to_double(v, line);
           }},
          {"transient",
           [&](const std::string& v, std::size_t line) {
             config.transient = static_cast<long>(to_integer(v, line));
           }},
      };

  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto equals = text.find('=');
    if (equals == std::string::npos)
      throw ParseError("config: expected key=value, got '" + text + "'",
                       line_number);
    const std::string key = trim(text.substr(0, equals));
    const std::string value = trim(text.substr(equals + 1));
    const auto setter = setters.find(key);
    if (setter == setters.end())
      throw ParseError("config: unknown key '" + key + "'", line_number);
    setter->second(value, line_number);
  }
}

std::uint64_t run_series_seed(std::uint64_t master, std::size_t run_index) {
  return derive_seed(master, 2 * static_cast<std::uint64_t>(run_index));
}

std::uint64_t run_noise_seed(std::uint64_t master, std::size_t run_index) {
  return derive_seed(master, 2 * static_cast<std::uint64_t>(run_index) + 1);
}

std::string short_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", value);
  return buf;
}

}  // namespace nlrad::cli
