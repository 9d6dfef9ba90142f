#pragma once

#include <string>
#include <vector>

#include "gdrr/solution.hpp"

namespace gdrr {

// One standalone SVG document per pattern, in bin units. Items are filled
// dark and labeled with their item id, leftovers are light and dashed.
// The output depends only on the solution.
std::vector<std::string> render_svg(const Solution& s);

std::string render_pattern_svg(const Instance& inst, const Pattern& p);

}  // namespace gdrr
