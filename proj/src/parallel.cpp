#include "gdrr/parallel.hpp"

#include <chrono>
#include <thread>

namespace gdrr {

bool SharedGoal::lower(Area area) {
    std::lock_guard lock(mutex_);
    if (area >= limit_.load(std::memory_order_relaxed)) return false;
    limit_.store(area, std::memory_order_release);
    ++revision_;
    history_.push_back(area);
    return true;
}

std::uint64_t SharedGoal::revision() const {
    std::lock_guard lock(mutex_);
    return revision_;
}

std::vector<Area> SharedGoal::history() const {
    std::lock_guard lock(mutex_);
    return history_;
}

bool BestStore::offer(const Solution& s, Area area, int worker, double seconds) {
    std::lock_guard lock(mutex_);
    published_.push_back({worker, area, seconds});
    if (area >= best_area_) return false;
    best_ = s;
    best_area_ = area;
    time_to_best_ = seconds;
    return true;
}

std::optional<Solution> BestStore::best() const {
    std::lock_guard lock(mutex_);
    return best_;
}

Area BestStore::best_area() const {
    std::lock_guard lock(mutex_);
    return best_area_;
}

double BestStore::time_to_best() const {
    std::lock_guard lock(mutex_);
    return time_to_best_;
}

std::vector<BestStore::Record> BestStore::published() const {
    std::lock_guard lock(mutex_);
    return published_;
}

namespace {

using Clock = std::chrono::steady_clock;

class WorkerChannel final : public GoalChannel {
public:
    WorkerChannel(SharedGoal& goal, BestStore& store, Clock::time_point t0) : goal_(goal), store_(store), t0_(t0) {}

    Area limit() const override { return goal_.limit(); }

    void publish(const Solution& feasible, Area area, int worker) override {
        const double seconds = std::chrono::duration<double>(Clock::now() - t0_).count();
        store_.offer(feasible, area, worker, seconds);
        goal_.lower(area);
    }

private:
    SharedGoal& goal_;
    BestStore& store_;
    Clock::time_point t0_;
};

}  // namespace

RunReport run_parallel(std::shared_ptr<const Instance> inst, const SearchParams& params, const ParallelOptions& opts) {
    if (opts.workers < 1) throw std::invalid_argument("run_parallel: workers must be positive");

    const auto t0 = Clock::now();
    SharedGoal goal;
    BestStore store;
    WorkerChannel channel(goal, store, t0);

    StopCondition stop;
    stop.deadline = t0 + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(params.time_limit));
    stop.max_iterations = params.max_iterations;
    const Area lower_bound = bin_area_lower_bound(*inst);
    stop.target_area = opts.stop_at_lower_bound ? lower_bound : 0;

    std::vector<WorkerReport> reports(static_cast<std::size_t>(opts.workers));
    auto work = [&](int k) {
        SearchHooks hooks;
        hooks.channel = &channel;
        hooks.worker = k;
        hooks.on_event = opts.on_event;
        if (opts.on_iteration)
            hooks.on_iteration = [&opts, k](std::uint64_t it, bool acc, const Quality& q) { opts.on_iteration(k, it, acc, q); };
        const std::uint64_t seed = params.seed + static_cast<std::uint64_t>(k);
        Rng rng(seed);
        auto res = gdrr(Solution::empty(inst), kUnlimitedArea, params, std::nullopt, rng, stop, hooks);
        auto& r = reports[static_cast<std::size_t>(k)];
        r.seed = seed;
        r.iterations = res.iterations;
        r.limit_trace = std::move(res.limit_trace);
    };

    if (opts.workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(opts.workers));
        for (int k = 0; k < opts.workers; ++k) threads.emplace_back(work, k);
        for (auto& t : threads) t.join();
    }

    auto best = store.best();
    if (!best)
        throw NoFeasibleSolution("no worker found a feasible solution within " + std::to_string(params.time_limit) +
                                 " s (the bin set may be too small for the items)");

    RunReport report{std::move(*best), store.best_area(), lower_bound, store.time_to_best(),
                     std::chrono::duration<double>(Clock::now() - t0).count(), goal.history(), store.published(),
                     std::move(reports)};
    return report;
}

}  // namespace gdrr
