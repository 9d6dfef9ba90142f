#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gdrr/recreate.hpp"
#include "gdrr/rng.hpp"
#include "gdrr/solution.hpp"

namespace gdrr {

// What solution comparison looks at: excluded item area first, total
// leftover value as tiebreaker. Total bin area is not part of it.
struct Quality {
    Area excluded_area = 0;
    double leftover_value = 0.0;

    bool operator==(const Quality&) const = default;
};

Quality quality(const Solution& s, double alpha);

// -1 if a is better, +1 if b is better, 0 if equal.
int compare(const Quality& a, const Quality& b);

// Late-acceptance ring with the counter advanced only on acceptance.
class LateAcceptance {
public:
    LateAcceptance(std::size_t history_length, const Quality& initial);

    // Accepts when the candidate is no worse than the ring entry at the head or
    // than the local optimum. On acceptance local_opt takes the candidate, the
    // head slot is overwritten only by a strict improvement and the counter
    // advances. Rejections change nothing.
    bool step(const Quality& candidate, Quality& local_opt);

    void reset(const Quality& q);

    std::uint64_t accepted() const { return accepted_; }
    std::size_t head() const { return static_cast<std::size_t>(accepted_ % ring_.size()); }
    const std::vector<Quality>& ring() const { return ring_; }

private:
    std::vector<Quality> ring_;
    std::uint64_t accepted_ = 0;
};

struct SearchParams {
    double alpha = 1.2;
    double beta = 0.05;
    std::optional<int> mu;              // empty: tiered by item count
    std::optional<int> history_length;  // empty: tiered by item count
    double time_limit = 600.0;          // seconds
    std::optional<std::uint64_t> max_iterations;  // per worker
    std::uint64_t seed = 0;
    bool strict_bin_open = false;
    bool scale_history_to_time = true;
};

// Tiers by item copy count: <=100, <=300, larger.
int resolve_mu(const SearchParams& p, const Instance& inst);
int resolve_history_length(const SearchParams& p, const Instance& inst);

// Link between a worker and the shared bin-area limit. The single-worker
// search runs without one.
class GoalChannel {
public:
    virtual ~GoalChannel() = default;
    virtual Area limit() const = 0;
    // Stores a feasible solution and lowers the shared limit to `area` if
    // that is strictly smaller.
    virtual void publish(const Solution& feasible, Area area, int worker) = 0;
};

struct StopCondition {
    std::optional<std::chrono::steady_clock::time_point> deadline;
    std::optional<std::uint64_t> max_iterations;
    // A proven lower bound on the total bin area; reaching it ends the search.
    Area target_area = 0;
    const std::atomic<bool>* cancel = nullptr;
};

enum class EventKind { GoalLowered, BestUpdated, LimitAdopted };

const char* to_string(EventKind k);

struct SearchEvent {
    EventKind kind = EventKind::GoalLowered;
    int worker = 0;
    std::uint64_t iteration = 0;
    double seconds = 0.0;
    Area limit = 0;
    Area best_area = 0;
    std::size_t bins = 0;
};

struct SearchHooks {
    std::function<void(const SearchEvent&)> on_event;
    std::function<void(std::uint64_t iteration, bool accepted, const Quality& candidate)> on_iteration;
    GoalChannel* channel = nullptr;
    int worker = 0;
};

struct SearchResult {
    std::optional<Solution> best;
    std::vector<Area> limit_trace;  // every limit this worker adopted, in order
    std::uint64_t iterations = 0;
    double time_to_best = 0.0;
};

// Goal-driven ruin-and-recreate. Repeats ruin, recreate and late acceptance
// under the current bin-area limit. Each time the local optimum becomes
// feasible it is recorded as best, the limit drops to its bin area and the
// search continues from that solution ruined down below the new limit.
SearchResult gdrr(Solution start, Area limit, const SearchParams& params, std::optional<Solution> best, Rng& rng,
                  const StopCondition& stop, const SearchHooks& hooks = {});

}  // namespace gdrr
