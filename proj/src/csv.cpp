#include "fstefan/csv.hpp"

#include <cstdio>

#include "fstefan/error.hpp"

namespace fstefan
{

std::string format_real(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& metadata,
                     const std::vector<std::string>& columns)
    : out_(path, std::ios::binary | std::ios::trunc), path_(path), width_(columns.size())
{
  if (!out_) throw ConfigError("cannot write '" + path + "'");
  for (const auto& m : metadata) out_ << "# " << m << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values)
{
  if (values.size() != width_) throw Error("csv row width mismatch in " + path_);
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_real(values[i]);
  out_ << '\n';
}

void CsvWriter::row(const std::string& label, const std::vector<double>& values)
{
  if (values.size() + 1 != width_) throw Error("csv row width mismatch in " + path_);
  out_ << label;
  for (double v : values) out_ << ',' << format_real(v);
  out_ << '\n';
}

}  // namespace fstefan
