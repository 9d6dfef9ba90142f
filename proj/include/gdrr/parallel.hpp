#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gdrr/search.hpp"

namespace gdrr {

// The one piece of state all workers share: a bin-area limit that only ever
// decreases. Lowering is conditional and serialized, reads are lock-free.
class SharedGoal {
public:
    explicit SharedGoal(Area initial = kUnlimitedArea) : limit_(initial) {}

    Area limit() const { return limit_.load(std::memory_order_acquire); }

    // Returns true when `area` was strictly below the current limit.
    bool lower(Area area);

    std::uint64_t revision() const;
    std::vector<Area> history() const;

private:
    mutable std::mutex mutex_;
    std::atomic<Area> limit_;
    std::uint64_t revision_ = 0;
    std::vector<Area> history_;
};

// Guarded store of the best feasible solution published by any worker.
class BestStore {
public:
    struct Record {
        int worker;
        Area area;
        double seconds;
    };

    // Keeps `s` if its area is strictly below the stored one.
    bool offer(const Solution& s, Area area, int worker, double seconds);

    std::optional<Solution> best() const;
    Area best_area() const;
    double time_to_best() const;
    std::vector<Record> published() const;

private:
    mutable std::mutex mutex_;
    std::optional<Solution> best_;
    Area best_area_ = kUnlimitedArea;
    double time_to_best_ = 0.0;
    std::vector<Record> published_;
};

class NoFeasibleSolution : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct WorkerReport {
    std::uint64_t seed = 0;
    std::uint64_t iterations = 0;
    std::vector<Area> limit_trace;
};

struct RunReport {
    Solution best;
    Area best_area = 0;
    Area lower_bound = 0;
    double time_to_best = 0.0;
    double seconds = 0.0;
    std::vector<Area> limit_trace;  // shared limit, every successful lowering
    std::vector<BestStore::Record> published;
    std::vector<WorkerReport> workers;
};

struct ParallelOptions {
    int workers = 1;
    // End the run once the bin-area lower bound is reached.
    bool stop_at_lower_bound = true;
    std::function<void(const SearchEvent&)> on_event;  // called from worker threads
    std::function<void(int worker, std::uint64_t iteration, bool accepted, const Quality&)> on_iteration;
};

// Runs `workers` independent searches, worker k seeded with seed + k. Only
// the bin-area limit is shared; solutions never move between workers.
// Throws NoFeasibleSolution if no worker finds a complete solution in time.
RunReport run_parallel(std::shared_ptr<const Instance> inst, const SearchParams& params, const ParallelOptions& opts);

}  // namespace gdrr
