#include "gdrr/search.hpp"

#include <algorithm>
#include <cmath>

#include "gdrr/ruin.hpp"

namespace gdrr {

Quality quality(const Solution& s, double alpha) { return {excluded_area(s), leftover_value(s, alpha)}; }

int compare(const Quality& a, const Quality& b) {
    if (a.excluded_area < b.excluded_area) return -1;
    if (a.excluded_area > b.excluded_area) return 1;
    if (a.leftover_value > b.leftover_value) return -1;
    if (a.leftover_value < b.leftover_value) return 1;
    return 0;
}

LateAcceptance::LateAcceptance(std::size_t history_length, const Quality& initial)
    : ring_(std::max<std::size_t>(history_length, 1), initial) {}

bool LateAcceptance::step(const Quality& candidate, Quality& local_opt) {
    Quality& slot = ring_[head()];
    if (compare(candidate, slot) > 0 && compare(candidate, local_opt) > 0) return false;
    local_opt = candidate;
    if (compare(candidate, slot) < 0) slot = candidate;
    ++accepted_;
    return true;
}

void LateAcceptance::reset(const Quality& q) {
    std::fill(ring_.begin(), ring_.end(), q);
    accepted_ = 0;
}

namespace {

struct Tier {
    int history;
    int mu;
};

Tier tier_for(const Instance& inst) {
    const auto n = inst.copy_count();
    if (n <= 100) return {2000, 8};
    if (n <= 300) return {1000, 6};
    return {500, 4};
}

}  // namespace

int resolve_mu(const SearchParams& p, const Instance& inst) { return p.mu ? *p.mu : tier_for(inst).mu; }

int resolve_history_length(const SearchParams& p, const Instance& inst) {
    if (p.history_length) return *p.history_length;
    int h = tier_for(inst).history;
    if (p.scale_history_to_time && p.time_limit != 600.0) {
        h = static_cast<int>(std::ceil(h * p.time_limit / 600.0));
        h = std::max(h, 50);
    }
    return h;
}

const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::GoalLowered: return "goal_lowered";
        case EventKind::BestUpdated: return "best_updated";
        case EventKind::LimitAdopted: return "limit_adopted";
    }
    return "unknown";
}

SearchResult gdrr(Solution start, Area limit, const SearchParams& params, std::optional<Solution> best, Rng& rng,
                  const StopCondition& stop, const SearchHooks& hooks) {
    using Clock = std::chrono::steady_clock;
    const auto t0 = Clock::now();
    const Instance& inst = start.inst();
    const int mu = resolve_mu(params, inst);
    const auto history = static_cast<std::size_t>(resolve_history_length(params, inst));
    const RecreateParams rp{params.alpha, params.beta, params.strict_bin_open};

    SearchResult result;
    result.best = std::move(best);
    Area best_area = result.best ? total_bin_area(*result.best) : kUnlimitedArea;

    Solution local = std::move(start);
    Quality local_q = quality(local, params.alpha);
    LateAcceptance lahc(history, local_q);

    auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };
    auto emit = [&](EventKind kind) {
        if (!hooks.on_event) return;
        hooks.on_event({kind, hooks.worker, result.iterations, elapsed(), limit,
                        best_area == kUnlimitedArea ? 0 : best_area,
                        result.best ? result.best->patterns.size() : 0});
    };
    auto should_stop = [&] {
        if (stop.max_iterations && result.iterations >= *stop.max_iterations) return true;
        if (stop.cancel && stop.cancel->load(std::memory_order_relaxed)) return true;
        if (best_area <= stop.target_area) return true;
        if (hooks.channel && hooks.channel->limit() <= stop.target_area) return true;
        if (stop.deadline && Clock::now() >= *stop.deadline) return true;
        return false;
    };

    while (!should_stop()) {
        if (hooks.channel) {
            const Area shared = hooks.channel->limit();
            if (shared < limit) {
                limit = shared;
                result.limit_trace.push_back(limit);
                ruin(local, limit, 0, rng);
                local_q = quality(local, params.alpha);
                lahc.reset(local_q);
                emit(EventKind::LimitAdopted);
            }
        }

        Solution candidate = local;
        ruin(candidate, limit, mu, rng);
        recreate(candidate, limit, rp, rng);
        const Quality q = quality(candidate, params.alpha);
        const bool accepted = lahc.step(q, local_q);
        if (accepted) local = std::move(candidate);
        ++result.iterations;
        if (hooks.on_iteration) hooks.on_iteration(result.iterations, accepted, q);

        if (accepted && local.feasible()) {
            const Area area = total_bin_area(local);
            result.best = local;
            best_area = area;
            result.time_to_best = elapsed();
            emit(EventKind::BestUpdated);
            if (hooks.channel) hooks.channel->publish(local, area, hooks.worker);

            limit = area;
            if (hooks.channel) limit = std::min(limit, hooks.channel->limit());
            result.limit_trace.push_back(limit);
            emit(EventKind::GoalLowered);

            ruin(local, limit, 0, rng);
            local_q = quality(local, params.alpha);
            lahc.reset(local_q);
        }
    }
    return result;
}

}  // namespace gdrr
