#pragma once

#include <string>

#include "orbifold/category.hpp"

namespace orbifold {

/// Vertices as nodes, arrows as labelled edges; identity loops suppressed
/// unless requested.
std::string to_dot(const Category& c, bool include_identities = false,
                   const std::string& name = "category");

}  // namespace orbifold
