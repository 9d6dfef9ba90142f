#include "gdrr/recreate.hpp"

#include <algorithm>
#include <limits>

namespace gdrr {

std::size_t most_restricted(const Solution& s, std::span<const int> candidates, Rng& rng) {
    constexpr std::size_t kUnknown = std::numeric_limits<std::size_t>::max();
    const bool rot = s.inst().rotation_allowed();
    std::vector<LeftoverSize> leftovers;
    std::vector<NodeIndex> scratch;
    for (const auto& p : s.patterns) {
        scratch.clear();
        p.collect_leftovers(scratch);
        for (NodeIndex l : scratch) leftovers.push_back({p.node(l).width, p.node(l).height});
    }

    // copies of one item type share their option count
    std::vector<std::size_t> by_type(s.inst().items().size(), kUnknown);
    std::vector<std::size_t> ties;
    std::size_t best = kUnknown;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        const ItemCopy& ic = s.inst().copy(candidates[k]);
        std::size_t& cached = by_type[static_cast<std::size_t>(ic.type)];
        if (cached == kUnknown) {
            cached = 0;
            for (const auto& l : leftovers)
                for_each_insertion_geometry(l.width, l.height, ic.width, ic.height, rot,
                                            [&cached](Length, Length, bool, Cut) { ++cached; });
        }
        if (cached < best) {
            best = cached;
            ties.clear();
        }
        if (cached == best) ties.push_back(k);
    }
    if (ties.size() == 1) return ties.front();
    return ties[rng.uniform_index(ties.size())];
}

std::size_t select_with_blinks(std::span<const InsertionOption> options, double beta, Rng& rng) {
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::size_t best_any = 0;
    std::size_t best_kept = kNone;
    for (std::size_t k = 0; k < options.size(); ++k) {
        const bool blinked = beta > 0.0 && rng.bernoulli(beta);
        if (options[k].cost < options[best_any].cost) best_any = k;
        if (!blinked && (best_kept == kNone || options[k].cost < options[best_kept].cost)) best_kept = k;
    }
    return best_kept != kNone ? best_kept : best_any;
}

void recreate(Solution& s, Area limit, const RecreateParams& params, Rng& rng) {
    const Instance& inst = s.inst();
    std::vector<int> pending = s.excluded;
    std::vector<InsertionOption> options;
    std::vector<int> used = bins_used(s);
    std::vector<int> eligible;
    Area bin_area = total_bin_area(s);

    while (!pending.empty()) {
        const std::size_t pos = most_restricted(s, pending, rng);
        const int copy = pending[pos];

        options.clear();
        enumerate_options_into(s, copy, params.alpha, 0, options);
        if (options.empty()) {
            const Area budget = limit - bin_area;
            eligible.clear();
            for (std::size_t t = 0; t < inst.bins().size(); ++t) {
                const BinSpec& b = inst.bins()[t];
                if (b.area() >= budget) continue;
                if (b.quantity && used[t] >= *b.quantity) continue;
                if (!params.strict_bin_open && !inst.copy_fits_bin(copy, static_cast<int>(t))) continue;
                eligible.push_back(static_cast<int>(t));
            }
            if (!eligible.empty()) {
                const int t = eligible[rng.uniform_index(eligible.size())];
                const BinSpec& b = inst.bins()[static_cast<std::size_t>(t)];
                s.patterns.emplace_back(t, b.width, b.height);
                ++used[static_cast<std::size_t>(t)];
                bin_area += b.area();
                enumerate_options_into(s, copy, params.alpha, s.patterns.size() - 1, options);
            }
        }
        if (!options.empty()) {
            const std::size_t k = select_with_blinks(options, params.beta, rng);
            insert(s, options[k], copy);
        }
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(pos));
    }

    std::erase_if(s.patterns, [](const Pattern& p) { return p.empty(); });
}

}  // namespace gdrr
