#pragma once

#include <string>

#include "cubic/surface.hpp"

namespace cubic {

/// Versioned JSON document with exact expression strings and floats at 15
/// significant digits.
std::string surface_to_json(const Surface& surface, int indent = 2);

}  // namespace cubic
