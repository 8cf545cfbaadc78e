#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "nlrad/types.hpp"

namespace nlrad {

/// Shortest-width round-trippable formatting is not portable pre-C++23;
/// every emitted double goes through "%.17g" so re-ingesting reproduces the
/// exact bits.
std::string format_double(double value);

/// One real per line; lines starting with '#' are comments. Non-numeric
/// content raises ParseError with the 1-based line number.
TimeSeries read_series(const std::filesystem::path& path, double dt = 1.0);
TimeSeries read_series_stream(std::istream& in, double dt,
                              const std::string& name);

void write_series(const std::filesystem::path& path, const TimeSeries& series,
                  const std::vector<std::string>& comment_lines = {});

/// CSV with header t,x[,y,z] for native state trajectories.
void write_states_csv(const std::filesystem::path& path,
                      const Trajectory& states, double dt);

/// Minimal RFC-4180 writer: comma separation, CRLF line endings, quoting
/// only when a field needs it.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

std::ofstream open_output(const std::filesystem::path& path);

}  // namespace nlrad
