#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "micropolar/errors.hpp"
#include "micropolar/harness.hpp"

namespace micropolar::harness {

namespace {

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

void write_csv(const NormSeries& series, std::ostream& out) {
  if (series.empty()) throw StructuralError("cannot write an empty series");
  const auto labels = series.labels();
  out << "t";
  for (const auto& l : labels) out << ',' << l;
  out << '\n';
  std::vector<const std::vector<double>*> cols;
  for (const auto& l : labels) cols.push_back(&series.column(l));
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << format_value(series.times()[i]);
    for (const auto* c : cols) out << ',' << format_value((*c)[i]);
    out << '\n';
  }
}

void emit_csv(const NormSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_csv(series, out);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

NormSeries parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw StructuralError("series CSV is empty");
  const auto header = split_row(line);
  if (header.empty() || header.front() != "t") {
    throw StructuralError("series CSV must start with a 't' column");
  }
  NormSeries series;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_row(line);
    if (cells.size() != header.size()) {
      throw StructuralError("series CSV row " + std::to_string(row) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(header.size()));
    }
    std::vector<double> v(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto& s = cells[c];
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v[c]);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw StructuralError("series CSV row " + std::to_string(row) + ": bad number '" + s + "'");
      }
    }
    std::map<std::string, double> record;
    for (std::size_t c = 1; c < cells.size(); ++c) record[header[c]] = v[c];
    series.append(v[0], record);
  }
  return series;
}

NormSeries read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return parse_csv(in);
}

}  // namespace micropolar::harness
