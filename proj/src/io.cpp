#include "resfluo/io.hpp"

#include <cstdio>
#include <stdexcept>

namespace resfluo {
namespace io {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string CsvWriter::escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void CsvWriter::header(const std::vector<std::string>& names) {
  width_ = names.size();
  row(names);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (width_ != 0 && fields.size() != width_)
    throw std::logic_error("csv row width does not match header");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << escape(fields[i]);
  }
  out_ << '\n';
}

}  // namespace io
}  // namespace resfluo
