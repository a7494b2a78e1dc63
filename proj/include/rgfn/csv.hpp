#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace rgfn {

inline constexpr std::string_view kVersion = "0.1.0";

/// Shortest decimal that round-trips to the same double.
std::string format_number(double value);
std::string format_number(std::uint64_t value);

/// Comma-separated, LF line endings, header row first and a trailing
/// `# seed=..., version=...` comment line.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  /// Cells must not contain commas, quotes or newlines.
  void row(const std::vector<std::string>& cells);

  std::string str(std::uint64_t seed) const;
  void write(const std::filesystem::path& path, std::uint64_t seed) const;

 private:
  std::size_t columns_;
  std::string body_;
};

/// Writes `text` verbatim (binary mode, so LF stays LF).
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace rgfn
