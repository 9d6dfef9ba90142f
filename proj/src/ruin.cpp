#include "gdrr/ruin.hpp"

#include "gdrr/treeops.hpp"

namespace gdrr {

void ruin(Solution& s, Area limit, int mu, Rng& rng, std::vector<RuinStep>* trace) {
    long long remaining = mu > 0 ? 1 + static_cast<long long>(rng.uniform_index(static_cast<std::size_t>(2 * mu - 1))) : 0;
    Area bin_area = total_bin_area(s);
    std::vector<NodeIndex> candidates;

    while (remaining > 0 || bin_area >= limit) {
        if (s.patterns.empty()) break;
        const std::size_t pi = rng.uniform_index(s.patterns.size());
        const Pattern& p = s.patterns[pi];
        candidates.clear();
        p.collect_removable(candidates);
        if (candidates.empty()) {
            // all-leftover pattern, nothing to release
            bin_area -= p.area();
            s.patterns.erase(s.patterns.begin() + static_cast<std::ptrdiff_t>(pi));
            continue;
        }
        const std::size_t rank = rng.uniform_index(candidates.size());
        const NodeIndex n = candidates[rank];
        const std::uint32_t id = p.node(n).id;
        const Area before = p.area();
        const std::size_t pattern_count = s.patterns.size();

        const auto released = remove_node(s, pi, n);
        if (s.patterns.size() < pattern_count) bin_area -= before;
        if (trace) trace->push_back({pi, rank, id, released.size()});
        --remaining;
    }
}

}  // namespace gdrr
