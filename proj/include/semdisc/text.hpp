#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace semdisc {

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

/// Whole-string parse; nullopt-free: throws Error(validation) naming `what`.
double parse_double(std::string_view text, std::string_view what);
int parse_int(std::string_view text, std::string_view what);

std::vector<std::string> split(std::string_view line, char sep);
std::string_view trim(std::string_view s) noexcept;

/// Minimal CSV reader for the unquoted comma-separated files this tool uses.
/// Strips a UTF-8 BOM and trailing CR; skips blank lines.
class CsvReader
{
 public:
   explicit CsvReader(std::istream& in);

   const std::vector<std::string>& header() const noexcept { return header_; }

   /// Next data row; false at end. `line_number()` is the 1-based file line.
   bool next(std::vector<std::string>& fields);
   std::size_t line_number() const noexcept { return line_; }

 private:
   std::istream& in_;
   std::vector<std::string> header_;
   std::size_t line_ = 0;
};

} // namespace semdisc
