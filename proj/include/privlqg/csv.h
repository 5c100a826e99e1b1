#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace privlqg {

inline constexpr std::string_view kToolVersion = "privlqg 0.1.0";

/// Shortest decimal text that round-trips to the same double.
std::string FormatDouble(double value);

// Writes a provenance comment line, then a header row, then data rows.
// Throws std::runtime_error naming the path if the file cannot be written.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::string_view config_hash,
            std::uint64_t seed, const std::vector<std::string>& header);

  CsvWriter& Add(std::string_view field);
  CsvWriter& Add(double value);
  CsvWriter& Add(long long value);
  CsvWriter& Add(int value) { return Add(static_cast<long long>(value)); }
  void EndRow();

  /// Flushes and throws if any write failed.
  void Close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  bool row_started_ = false;
};

}  // namespace privlqg
