#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace zzsim {

/// Contents of the '#' comment block that opens every CSV.
struct CsvMetadata {
  std::string command_line;
  std::string device_hash = "none";
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> extra;
};

/// "%.10g"; NaN prints as "nan".
std::string format_number(double v);

/// Buffers rows and writes the file in one go on save(). Output depends only
/// on the metadata and the rows, so identical runs give identical bytes.
class CsvWriter {
 public:
  CsvWriter(CsvMetadata meta, std::vector<std::string> columns);

  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& cells);

  std::string str() const;
  void save(const std::filesystem::path& path) const;

 private:
  CsvMetadata meta_;
  std::vector<std::string> columns_;
  std::vector<std::string> lines_;
};

}  // namespace zzsim
