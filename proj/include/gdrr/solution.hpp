#pragma once

#include <memory>
#include <vector>

#include "gdrr/instance.hpp"
#include "gdrr/pattern.hpp"

namespace gdrr {

// A set of cutting patterns plus the item copies currently left out.
// Feasible iff nothing is excluded.
struct Solution {
    std::shared_ptr<const Instance> instance;
    std::vector<Pattern> patterns;
    std::vector<int> excluded;  // item copy indices

    // No patterns, every copy excluded.
    static Solution empty(std::shared_ptr<const Instance> inst);

    const Instance& inst() const { return *instance; }
    bool feasible() const { return excluded.empty(); }
};

Area excluded_area(const Solution& s);
double leftover_value(const Solution& s, double alpha);
Area total_bin_area(const Solution& s);
Area placed_item_area(const Solution& s);
Area leftover_area(const Solution& s);

// Placed item area over used bin area, in percent. Throws std::domain_error
// when the solution has no patterns.
double utilization(const Solution& s);

// Number of patterns per bin type index.
std::vector<int> bins_used(const Solution& s);

}  // namespace gdrr
