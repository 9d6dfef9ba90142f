#pragma once

#include <cstdint>
#include <vector>

#include "gdrr/rng.hpp"
#include "gdrr/solution.hpp"

namespace gdrr {

// One removal performed by ruin: which pattern (index at the time of the
// draw), which node (preorder position among its removable nodes) and the
// stable id of that node.
struct RuinStep {
    std::size_t pattern = 0;
    std::size_t node_rank = 0;
    std::uint32_t node_id = 0;
    std::size_t released = 0;
};

// Partially destroys s. Draws a removal count uniformly from {1, ..., 2mu-1}
// (zero when mu == 0) and keeps removing random nodes while that count is
// positive or the total bin area is at least `limit`. Each removal picks a
// pattern uniformly, then one of its item/structure nodes uniformly.
void ruin(Solution& s, Area limit, int mu, Rng& rng, std::vector<RuinStep>* trace = nullptr);

}  // namespace gdrr
