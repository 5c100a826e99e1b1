#include "privlqg/csv.h"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace privlqg {

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     std::string_view config_hash, std::uint64_t seed,
                     const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw std::runtime_error("cannot write " + path.string());
  out_ << "# " << kToolVersion << " config_hash=" << config_hash
       << " seed=" << seed << '\n';
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i > 0) out_ << ',';
    out_ << header[i];
  }
  out_ << '\n';
}

CsvWriter& CsvWriter::Add(std::string_view field) {
  if (row_started_) out_ << ',';
  out_ << field;
  row_started_ = true;
  return *this;
}

CsvWriter& CsvWriter::Add(double value) { return Add(FormatDouble(value)); }

CsvWriter& CsvWriter::Add(long long value) {
  return Add(std::string_view(std::to_string(value)));
}

void CsvWriter::EndRow() {
  out_ << '\n';
  row_started_ = false;
}

void CsvWriter::Close() {
  out_.flush();
  if (!out_) throw std::runtime_error("failed writing " + path_.string());
  out_.close();
}

}  // namespace privlqg
