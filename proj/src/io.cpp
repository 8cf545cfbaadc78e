#include "nlrad/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace nlrad {

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

TimeSeries read_series_stream(std::istream& in, double dt,
                              const std::string& name) {
  TimeSeries series;
  series.dt = dt;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;  // blank
    if (line[start] == '#') continue;          // comment
    const char* begin = line.c_str() + start;
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin)
      throw ParseError(name + ": expected a number, got '" + line + "'",
                       line_number);
    while (*end && std::isspace(static_cast<unsigned char>(*end))) ++end;
    if (*end)
      throw ParseError(name + ": trailing content after number in '" + line +
                           "'",
                       line_number);
    if (!std::isfinite(value))
      throw ParseError(name + ": non-finite value", line_number);
    series.values.push_back(value);
  }
  if (series.values.size() < 2)
    throw ArgumentError(name + ": needs at least 2 samples, got " +
                        std::to_string(series.values.size()));
  return series;
}

TimeSeries read_series(const std::filesystem::path& path, double dt) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return read_series_stream(in, dt, path.filename().string());
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void write_series(const std::filesystem::path& path, const TimeSeries& series,
                  const std::vector<std::string>& comment_lines) {
  auto out = open_output(path);
  for (const auto& comment : comment_lines) out << "# " << comment << '\n';
  for (double v : series.values) out << format_double(v) << '\n';
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void write_states_csv(const std::filesystem::path& path,
                      const Trajectory& states, double dt) {
  auto out = open_output(path);
  CsvWriter csv(out);
  std::vector<std::string> header{"t", "x"};
  if (states.d >= 2) header.push_back("y");
  if (states.d >= 3) header.push_back("z");
  csv.row(header);
  for (std::size_t i = 0; i < states.n; ++i) {
    std::vector<std::string> row;
    row.push_back(format_double(static_cast<double>(i) * dt));
    for (std::size_t k = 0; k < states.d; ++k)
      row.push_back(format_double(states.coord(i, k)));
    csv.row(row);
  }
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k) out_ << ',';
    const std::string& field = fields[k];
    if (field.find_first_of(",\"\r\n") != std::string::npos) {
      out_ << '"';
      for (char c : field) {
        if (c == '"') out_ << '"';
        out_ << c;
      }
      out_ << '"';
    } else {
      out_ << field;
    }
  }
  out_ << "\r\n";
}

}  // namespace nlrad
