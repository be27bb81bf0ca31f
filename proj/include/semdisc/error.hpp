#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace semdisc {

enum class ErrorKind {
   validation,  // malformed or out-of-range input
   not_found,   // unknown concept name or color id
   degenerate,  // mathematically undefined input (e.g. y = 0 chromaticity)
   infeasible,  // constraints admit no result
   io,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error
{
 public:
   Error(ErrorKind kind, const std::string& message)
       : std::runtime_error(message)
       , kind_(kind)
   {}

   ErrorKind kind() const noexcept { return kind_; }

 private:
   ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message)
{
   throw Error(kind, message);
}

} // namespace semdisc
