#include "symtt/boundary.hpp"

#include <string>

#include "symtt/error.hpp"

namespace symtt {

std::string_view boundary_name(Boundary b) {
  return b == Boundary::kOpen ? "open" : "periodic";
}

Boundary parse_boundary(std::string_view s) {
  if (s == "open" || s == "obc") return Boundary::kOpen;
  if (s == "periodic" || s == "pbc") return Boundary::kPeriodic;
  throw Error(ErrorCode::kBadParams, "unknown boundary '" + std::string(s) + "'");
}

}  // namespace symtt
