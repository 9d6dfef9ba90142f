#include "gdrr/solution.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace gdrr {

Solution Solution::empty(std::shared_ptr<const Instance> inst) {
    Solution s;
    s.excluded.resize(inst->copy_count());
    std::iota(s.excluded.begin(), s.excluded.end(), 0);
    s.instance = std::move(inst);
    return s;
}

Area excluded_area(const Solution& s) {
    Area a = 0;
    for (int c : s.excluded) a += s.inst().copy(c).area();
    return a;
}

double leftover_value(const Solution& s, double alpha) {
    // Summed in ascending area order so that equal leftover multisets give
    // bit-equal values whatever the tree layout, at any scale.
    std::vector<Area> areas;
    std::vector<NodeIndex> nodes;
    for (const auto& p : s.patterns) {
        nodes.clear();
        p.collect_leftovers(nodes);
        for (NodeIndex n : nodes) areas.push_back(p.node(n).area());
    }
    std::sort(areas.begin(), areas.end());
    double v = 0.0;
    for (Area a : areas) v += area_value(a, alpha);
    return v;
}

Area total_bin_area(const Solution& s) {
    Area a = 0;
    for (const auto& p : s.patterns) a += p.area();
    return a;
}

Area placed_item_area(const Solution& s) {
    Area a = 0;
    for (const auto& p : s.patterns) a += p.item_area();
    return a;
}

Area leftover_area(const Solution& s) {
    Area a = 0;
    for (const auto& p : s.patterns) a += p.leftover_area();
    return a;
}

double utilization(const Solution& s) {
    const Area bins = total_bin_area(s);
    if (bins == 0) throw std::domain_error("utilization of a solution without cutting patterns");
    return 100.0 * static_cast<double>(placed_item_area(s)) / static_cast<double>(bins);
}

std::vector<int> bins_used(const Solution& s) {
    std::vector<int> counts(s.inst().bins().size(), 0);
    for (const auto& p : s.patterns) ++counts[static_cast<std::size_t>(p.bin_type())];
    return counts;
}

}  // namespace gdrr
