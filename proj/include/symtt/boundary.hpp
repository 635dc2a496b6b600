#pragma once

#include <string_view>

namespace symtt {

enum class Boundary { kOpen, kPeriodic };

std::string_view boundary_name(Boundary b);
// Accepts "open"/"obc" and "periodic"/"pbc"; throws BadParams otherwise.
Boundary parse_boundary(std::string_view s);

}  // namespace symtt
