#include "zzsim/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "zzsim/errors.hpp"

namespace zzsim {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

CsvWriter::CsvWriter(CsvMetadata meta, std::vector<std::string> columns)
    : meta_(std::move(meta)), columns_(std::move(columns)) {
  if (columns_.empty()) throw DomainError("CSV needs at least one column");
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_number(v));
  row(cells);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size()) throw DomainError("CSV row width does not match header");
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  lines_.push_back(std::move(line));
}

std::string CsvWriter::str() const {
  std::string out = "# tool: zzsim " ZZSIM_VERSION "\n";
  out += "# device_hash: " + meta_.device_hash + "\n";
  out += "# seed: " + std::to_string(meta_.seed) + "\n";
  out += "# command: " + meta_.command_line + "\n";
  for (const auto& [k, v] : meta_.extra) out += "# " + k + ": " + v + "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i) out += (i ? "," : "") + columns_[i];
  out += '\n';
  for (const auto& l : lines_) out += l + '\n';
  return out;
}

void CsvWriter::save(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot write " + path.string());
  f << str();
}

}  // namespace zzsim
