#include "semdisc/text.hpp"

#include "semdisc/error.hpp"

#include <charconv>
#include <istream>
#include <system_error>

namespace semdisc {

std::string format_double(double v)
{
   if(v == 0.0) return "0"; // folds -0
   char buf[32];
   const auto res = std::to_chars(buf, buf + sizeof buf, v);
   return std::string(buf, res.ptr);
}

double parse_double(std::string_view text, std::string_view what)
{
   text = trim(text);
   if(!text.empty() && text.front() == '+') text.remove_prefix(1);
   double v = 0.0;
   const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
   if(text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size())
      fail(ErrorKind::validation,
           std::string(what) + ": not a number: '" + std::string(text) + "'");
   return v;
}

int parse_int(std::string_view text, std::string_view what)
{
   text = trim(text);
   int v = 0;
   const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
   if(text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size())
      fail(ErrorKind::validation,
           std::string(what) + ": not an integer: '" + std::string(text) + "'");
   return v;
}

std::vector<std::string> split(std::string_view line, char sep)
{
   std::vector<std::string> out;
   std::size_t start = 0;
   while(true) {
      const auto pos = line.find(sep, start);
      out.emplace_back(trim(line.substr(start, pos - start)));
      if(pos == std::string_view::npos) break;
      start = pos + 1;
   }
   return out;
}

std::string_view trim(std::string_view s) noexcept
{
   constexpr std::string_view ws = " \t\r\n";
   const auto b = s.find_first_not_of(ws);
   if(b == std::string_view::npos) return {};
   const auto e = s.find_last_not_of(ws);
   return s.substr(b, e - b + 1);
}

CsvReader::CsvReader(std::istream& in)
    : in_(in)
{
   std::string line;
   while(std::getline(in_, line)) {
      ++line_;
      if(line_ == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
      if(trim(line).empty()) continue;
      header_ = split(line, ',');
      return;
   }
   fail(ErrorKind::validation, "CSV input is empty (no header)");
}

bool CsvReader::next(std::vector<std::string>& fields)
{
   std::string line;
   while(std::getline(in_, line)) {
      ++line_;
      if(trim(line).empty()) continue;
      fields = split(line, ',');
      if(fields.size() != header_.size())
         fail(ErrorKind::validation,
              "line " + std::to_string(line_) + ": expected " + std::to_string(header_.size())
                  + " fields, found " + std::to_string(fields.size()));
      return true;
   }
   return false;
}

} // namespace semdisc
