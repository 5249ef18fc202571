#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace resfluo {
namespace io {

// Shortest round-trippable decimal form; output is locale-independent.
std::string format_g17(double x);

inline constexpr const char* kSchemaVersion = "resfluo-1";

// Minimal RFC-4180 style writer: fields containing separators, quotes or newlines are
// quoted, quotes doubled. Row width is locked by the header.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void header(const std::vector<std::string>& names);
  void row(const std::vector<std::string>& fields);

  static std::string escape(const std::string& field);

 private:
  std::ostream& out_;
  std::size_t width_ = 0;
};

}  // namespace io
}  // namespace resfluo
