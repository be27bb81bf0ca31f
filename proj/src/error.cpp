#include "semdisc/error.hpp"

namespace semdisc {

std::string_view to_string(ErrorKind kind) noexcept
{
   switch(kind) {
   case ErrorKind::validation: return "validation";
   case ErrorKind::not_found: return "not_found";
   case ErrorKind::degenerate: return "degenerate";
   case ErrorKind::infeasible: return "infeasible";
   case ErrorKind::io: return "io";
   }
   return "unknown";
}

} // namespace semdisc
