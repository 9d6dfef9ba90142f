#include <doctest.h>

#include "gdrr/parallel.hpp"
#include "gdrr/search.hpp"
#include "gdrr/validate.hpp"
#include "support.hpp"

using namespace gdrr;
using namespace gdrr::testing;

TEST_CASE("compare orders by excluded area, then by leftover value") {
    CHECK(compare({5, 1.0}, {9, 1000.0}) == -1);
    CHECK(compare({9, 1000.0}, {5, 1.0}) == 1);
    CHECK(compare({3, 144.0}, {3, 100.0}) == -1);
    CHECK(compare({3, 100.0}, {3, 144.0}) == 1);
    CHECK(compare({3, 100.0}, {3, 100.0}) == 0);
}

TEST_CASE("late acceptance trace") {
    // ring of 3, all slots start at (10, 0)
    LateAcceptance lahc(3, {10, 0.0});
    Quality local{10, 0.0};

    // better than both: accepted, slot 0 overwritten
    CHECK(lahc.step({8, 0.0}, local));
    CHECK(lahc.accepted() == 1);
    CHECK(lahc.ring()[0] == Quality{8, 0.0});
    CHECK(local == Quality{8, 0.0});

    // equal to slot 1 but worse than local: accepted, slot unchanged
    CHECK(lahc.step({10, 0.0}, local));
    CHECK(lahc.accepted() == 2);
    CHECK(lahc.ring()[1] == Quality{10, 0.0});
    CHECK(local == Quality{10, 0.0});

    // worse than slot 2 and local: rejected, counter unchanged
    CHECK_FALSE(lahc.step({11, 0.0}, local));
    CHECK(lahc.accepted() == 2);
    CHECK(lahc.head() == 2);
    CHECK(local == Quality{10, 0.0});

    // equal to slot 2: accepted, slot unchanged
    CHECK(lahc.step({10, 0.0}, local));
    CHECK(lahc.accepted() == 3);
    CHECK(lahc.ring()[2] == Quality{10, 0.0});

    // head wraps to slot 0 (8): worse than the slot, better than local (10)
    CHECK(lahc.head() == 0);
    CHECK(lahc.step({9, 5.0}, local));
    CHECK(lahc.ring()[0] == Quality{8, 0.0});
    CHECK(local == Quality{9, 5.0});

    // slot 1 holds 10: same excluded area, higher leftover value wins
    CHECK(lahc.step({10, 7.0}, local));
    CHECK(lahc.ring()[1] == Quality{10, 7.0});

    lahc.reset({4, 1.0});
    CHECK(lahc.accepted() == 0);
    for (const auto& q : lahc.ring()) CHECK(q == Quality{4, 1.0});
}

TEST_CASE("parameter tiers") {
    auto tiered = [](int copies) {
        return make_instance({{1, 1, 1, copies}}, {{1, 100, 100, {}}});
    };
    SearchParams p;
    CHECK(resolve_mu(p, *tiered(100)) == 8);
    CHECK(resolve_history_length(p, *tiered(100)) == 2000);
    CHECK(resolve_mu(p, *tiered(101)) == 6);
    CHECK(resolve_history_length(p, *tiered(300)) == 1000);
    CHECK(resolve_mu(p, *tiered(301)) == 4);
    CHECK(resolve_history_length(p, *tiered(900)) == 500);

    p.time_limit = 60;
    CHECK(resolve_history_length(p, *tiered(20)) == 200);
    p.time_limit = 1;
    CHECK(resolve_history_length(p, *tiered(20)) == 50);
    p.time_limit = 601;
    CHECK(resolve_history_length(p, *tiered(20)) == 2004);
    p.scale_history_to_time = false;
    CHECK(resolve_history_length(p, *tiered(20)) == 2000);
    p.history_length = 7;
    p.mu = 2;
    CHECK(resolve_history_length(p, *tiered(20)) == 7);
    CHECK(resolve_mu(p, *tiered(20)) == 2);
}

TEST_CASE("an exact tiling is found") {
    auto inst = make_instance({{1, 2, 3, 6}, {2, 6, 2, 1}}, {{1, 6, 8, {}}, {2, 10, 10, {}}});
    SearchParams p;
    p.time_limit = 5;
    p.seed = 3;
    Rng rng(p.seed);
    StopCondition stop;
    stop.max_iterations = 20000;
    stop.target_area = 48;
    const auto res = gdrr::gdrr(Solution::empty(inst), kUnlimitedArea, p, std::nullopt, rng, stop);
    REQUIRE(res.best);
    CHECK(total_bin_area(*res.best) == 48);
    CHECK(utilization(*res.best) == 100.0);
    CHECK(validate(*inst, *res.best).ok());
}

TEST_CASE("goal limits strictly decrease and every best validates") {
    Rng gen(55);
    for (int trial = 0; trial < 8; ++trial) {
        auto inst = random_instance(gen, 10, 3, 2, 40, gen.bernoulli(0.5));
        SearchParams p;
        p.seed = gen.next();
        p.time_limit = 10;
        std::vector<Area> published;
        SearchHooks hooks;
        hooks.on_event = [&](const SearchEvent& e) {
            if (e.kind == EventKind::GoalLowered) published.push_back(e.limit);
        };
        Rng rng(p.seed);
        StopCondition stop;
        stop.max_iterations = 3000;
        const auto res = gdrr::gdrr(Solution::empty(inst), kUnlimitedArea, p, std::nullopt, rng, stop, hooks);
        REQUIRE(res.best);
        CHECK(res.best->feasible());
        CHECK(validate(*inst, *res.best).ok());
        for (std::size_t k = 1; k < res.limit_trace.size(); ++k) CHECK(res.limit_trace[k] < res.limit_trace[k - 1]);
        CHECK(published == res.limit_trace);
        CHECK(res.limit_trace.back() == total_bin_area(*res.best));
    }
}

TEST_CASE("acceptance trace is unchanged by scaling every dimension") {
    auto base = make_instance({{1, 3, 2, 3}, {2, 4, 4, 2}, {3, 1, 5, 2}, {4, 6, 3, 1}}, {{1, 10, 8, {}}, {2, 7, 7, 2}}, true);
    auto scaled = std::make_shared<const Instance>(base->scaled(2));
    SearchParams p;
    p.seed = 17;
    p.time_limit = 600;
    StopCondition stop;
    stop.max_iterations = 4000;

    auto run = [&](std::shared_ptr<const Instance> inst, std::vector<bool>& trace) {
        SearchHooks hooks;
        hooks.on_iteration = [&](std::uint64_t, bool accepted, const Quality&) { trace.push_back(accepted); };
        Rng rng(p.seed);
        return gdrr::gdrr(Solution::empty(inst), kUnlimitedArea, p, std::nullopt, rng, stop, hooks);
    };
    std::vector<bool> ta;
    std::vector<bool> tb;
    const auto a = run(base, ta);
    const auto b = run(scaled, tb);
    CHECK(ta == tb);
    REQUIRE(a.best);
    REQUIRE(b.best);
    REQUIRE(a.best->patterns.size() == b.best->patterns.size());
    for (std::size_t k = 0; k < a.best->patterns.size(); ++k) {
        auto la = a.best->patterns[k].layout();
        const auto lb = b.best->patterns[k].layout();
        for (auto& r : la) {
            r.x *= 2;
            r.y *= 2;
            r.width *= 2;
            r.height *= 2;
        }
        CHECK(la == lb);
    }
}
