#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace commnet::csv {

// RFC 4180 field quoting: quotes only when the field needs it.
std::string escape(std::string_view field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

// Reads rows, honoring quoted fields that span lines. Returns false at EOF.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}
  bool next(std::vector<std::string>& row);
  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

std::string fixed(double value, int decimals = 9);
// Shortest form that round-trips a double.
std::string exact(double value);

}  // namespace commnet::csv
