#include "rgfn/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "rgfn/error.hpp"

namespace rgfn {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string format_number(std::uint64_t value) { return std::to_string(value); }

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  if (header.empty()) throw std::invalid_argument("CSV header must not be empty");
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw std::invalid_argument("CSV row has the wrong number of cells");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].find_first_of(",\"\n\r") != std::string::npos)
      throw std::invalid_argument("CSV cell contains a separator: " + cells[i]);
    if (i) body_ += ',';
    body_ += cells[i];
  }
  body_ += '\n';
}

std::string CsvWriter::str(std::uint64_t seed) const {
  return body_ + "# seed=" + std::to_string(seed) + ", version=" + std::string(kVersion) + "\n";
}

void CsvWriter::write(const std::filesystem::path& path, std::uint64_t seed) const {
  write_file(path, str(seed));
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError(path.string() + ": cannot open for writing");
  out << text;
  if (!out) throw ConfigError(path.string() + ": write failed");
}

}  // namespace rgfn
