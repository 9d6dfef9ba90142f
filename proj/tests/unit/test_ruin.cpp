#include <doctest.h>

#include <cmath>

#include "gdrr/recreate.hpp"
#include "gdrr/ruin.hpp"
#include "gdrr/validate.hpp"
#include "support.hpp"

using namespace gdrr;
using namespace gdrr::testing;

namespace {

// Fully packed solution built with the recreate greedy (beta = 0).
Solution packed(std::shared_ptr<const Instance> inst, std::uint64_t seed) {
    Solution s = Solution::empty(inst);
    Rng rng(seed);
    recreate(s, kUnlimitedArea, {1.2, 0.0, false}, rng);
    REQUIRE(s.feasible());
    return s;
}

}  // namespace

TEST_CASE("ruin with mu = 0 only enforces the limit") {
    auto inst = make_instance({{1, 3, 3, 12}}, {{1, 6, 6, {}}});
    Solution s = packed(inst, 1);
    REQUIRE(s.patterns.size() == 3);

    Rng rng(4);
    Solution same = s;
    ruin(same, total_bin_area(s) + 1, 0, rng);
    CHECK(same.patterns.size() == s.patterns.size());
    CHECK(same.excluded.empty());

    Solution cut = s;
    ruin(cut, total_bin_area(s), 0, rng);
    CHECK(total_bin_area(cut) < total_bin_area(s));
    CHECK(validate(*inst, cut).ok());

    Solution deep = s;
    ruin(deep, 36, 0, rng);
    CHECK(total_bin_area(deep) < 36);
    CHECK(deep.patterns.empty());
    CHECK(deep.excluded.size() == 12);
}

TEST_CASE("ruin replays the sampling order") {
    auto inst = make_instance({{1, 2, 3, 5}, {2, 4, 1, 4}, {3, 5, 5, 2}}, {{1, 6, 6, {}}});
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Solution s = packed(inst, seed);
        REQUIRE(s.patterns.size() >= 3);
        s.patterns.erase(s.patterns.begin() + 3, s.patterns.end());
        s.excluded.clear();
        for (std::size_t c = 0; c < inst->copy_count(); ++c) s.excluded.push_back(static_cast<int>(c));
        std::erase_if(s.excluded, [&](int c) {
            for (const auto& p : s.patterns)
                for (const auto& r : p.layout())
                    if (r.copy == c) return true;
            return false;
        });
        REQUIRE(validate(*inst, s).ok());

        // independent replay: i from {1, 2, 3}, pattern, then node rank
        Solution replay = s;
        Rng oracle(seed * 31 + 7);
        std::vector<std::pair<std::size_t, std::size_t>> expect;
        long long left = 1 + static_cast<long long>(oracle.uniform_index(3));
        while (left > 0 && !replay.patterns.empty()) {
            const std::size_t pi = oracle.uniform_index(replay.patterns.size());
            std::vector<NodeIndex> nodes;
            replay.patterns[pi].collect_removable(nodes);
            const std::size_t rank = oracle.uniform_index(nodes.size());
            expect.push_back({pi, rank});
            remove_node(replay, pi, nodes[rank]);
            --left;
        }

        Rng rng(seed * 31 + 7);
        std::vector<RuinStep> trace;
        ruin(s, kUnlimitedArea, 2, rng, &trace);
        REQUIRE(trace.size() == expect.size());
        for (std::size_t k = 0; k < trace.size(); ++k) {
            CHECK(trace[k].pattern == expect[k].first);
            CHECK(trace[k].node_rank == expect[k].second);
        }
        CHECK(s.excluded == replay.excluded);
        CHECK(oracle.next() == rng.next());
        CHECK(validate(*inst, s).ok());
    }
}

TEST_CASE("average removal count is mu") {
    auto inst = make_instance({{1, 1, 1, 400}}, {{1, 10, 10, {}}});
    const Solution s = packed(inst, 3);
    Rng rng(99);
    const int mu = 4;
    const int draws = 100000;
    double sum = 0.0;
    std::vector<RuinStep> trace;
    for (int k = 0; k < draws; ++k) {
        Solution t = s;
        trace.clear();
        ruin(t, kUnlimitedArea, mu, rng, &trace);
        sum += static_cast<double>(trace.size());
    }
    // uniform on {1..7}: mean 4, variance (7^2 - 1) / 12 = 4
    const double mean = sum / draws;
    CHECK(std::abs(mean - mu) < 3.0 * std::sqrt(4.0 / draws));
}

TEST_CASE("the root is hit with probability one over the node count") {
    auto inst = make_instance({{1, 2, 2, 3}}, {{1, 6, 4, {}}});
    Solution s = Solution::empty(inst);
    s.excluded.clear();
    s.patterns.push_back(Pattern::from_tree(
        0, TreeNode::structure(Cut::Vertical, 6, 4,
                               {TreeNode::structure(Cut::Horizontal, 2, 4, {TreeNode::item(0, 2, 2), TreeNode::item(1, 2, 2)}),
                                TreeNode::structure(Cut::Horizontal, 2, 4, {TreeNode::item(2, 2, 2), TreeNode::leftover(2, 2)}),
                                TreeNode::leftover(2, 4)})));
    std::vector<NodeIndex> nodes;
    s.patterns[0].collect_removable(nodes);
    REQUIRE(nodes.size() == 6);

    Rng rng(8);
    const int draws = 60000;
    int roots = 0;
    std::vector<RuinStep> trace;
    for (int k = 0; k < draws; ++k) {
        Solution t = s;
        trace.clear();
        ruin(t, kUnlimitedArea, 1, rng, &trace);
        REQUIRE(trace.size() == 1);
        if (trace[0].node_rank == 0) ++roots;
    }
    const double p = 1.0 / 6.0;
    CHECK(std::abs(roots - draws * p) < 3.0 * std::sqrt(draws * p * (1 - p)));
}
