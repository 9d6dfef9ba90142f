#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>

#include "gdrr/solution.hpp"

namespace gdrr {

// Limits for the exhaustive solvers. Instances above max_copies are refused.
struct OracleBudget {
    std::size_t max_copies = 6;
    std::size_t max_bin_sets = 200'000;
    std::uint64_t node_budget = 50'000'000;
};

class OracleBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OracleResult {
    Area optimum = 0;
    Solution witness;
};

// Exact minimum total bin area for tiny instances. Bin multisets are tried
// in non-decreasing area; for each one, every split of the item copies over
// the bins is tested with a memoized search over guillotine cut trees. The
// first packable multiset is optimal. Throws OracleBudgetExceeded past the
// budget and InstanceError when no multiset packs the items.
OracleResult exact_min_area(std::shared_ptr<const Instance> inst, const OracleBudget& budget = {});

// Independent cross-check: items are placed at corner points in every order
// and each complete placement is tested for guillotine separability by
// explicit recursive cutting. Exponential; meant for about four copies.
Area exact_min_area_by_placement(const Instance& inst, const OracleBudget& budget = {});

}  // namespace gdrr
