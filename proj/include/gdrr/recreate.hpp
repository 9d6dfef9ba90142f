#pragma once

#include <cstddef>
#include <span>

#include "gdrr/rng.hpp"
#include "gdrr/solution.hpp"
#include "gdrr/treeops.hpp"

namespace gdrr {

struct RecreateParams {
    double alpha = 1.2;
    double beta = 0.05;
    // Open any bin type with area below the remaining budget, even one that
    // cannot hold the item that triggered the opening.
    bool strict_bin_open = false;
};

// Position in `candidates` of the copy with the fewest insertion options.
// Ties are broken uniformly at random (one draw, only when tied).
std::size_t most_restricted(const Solution& s, std::span<const int> candidates, Rng& rng);

// Best-fit with blinks: every option is skipped with probability beta and the
// cheapest surviving option wins; cost ties go to the first one scanned. If
// every option blinked, the cheapest overall is returned. One draw per
// option when beta > 0, none otherwise.
std::size_t select_with_blinks(std::span<const InsertionOption> options, double beta, Rng& rng);

// Gives every currently excluded copy one insertion attempt, most restricted
// first. New bins are opened only while the total bin area stays strictly
// below `limit`. Patterns left without items are dropped at the end.
void recreate(Solution& s, Area limit, const RecreateParams& params, Rng& rng);

}  // namespace gdrr
