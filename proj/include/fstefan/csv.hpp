#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace fstefan
{

/// "%.17g" in the C locale.
std::string format_real(double v);

/// Comma-separated table with a `#` metadata block, a header row and `\n` line endings.
class CsvWriter
{
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& metadata,
            const std::vector<std::string>& columns);

  void row(const std::vector<double>& values);
  /// Row whose leading cell is text (names in the selftest table).
  void row(const std::string& label, const std::vector<double>& values);

 private:
  std::ofstream out_;
  std::string path_;
  std::size_t width_;
};

}  // namespace fstefan
