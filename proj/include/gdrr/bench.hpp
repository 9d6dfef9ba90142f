#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gdrr/parallel.hpp"

namespace gdrr {

// One solver run on one instance file.
struct BenchRow {
    std::string cls;  // directory of the file relative to the bench root
    std::string instance;
    int n = 0;  // item copies
    int threads = 1;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    Area best_area = 0;
    Area lower_bound = 0;
    int bins = 0;
    std::string bins_per_type;  // "id:count" pairs joined by ';'
    double utilization = 0.0;
    double time_to_best = 0.0;
    double seconds = 0.0;
    std::uint64_t iterations = 0;
    std::string limit_trace;  // areas joined by ';'
};

struct BenchOptions {
    SearchParams params;
    std::vector<int> threads{1};
    std::vector<std::uint64_t> seeds;  // empty: params.seed only
    std::optional<bool> rotation;      // overrides the files
    bool stop_at_lower_bound = true;
    std::function<void(const BenchRow&)> on_row;
};

// Rows grouped by (class, n, threads, seed). Failed rows only count towards
// `failures`.
struct BenchCell {
    std::string cls;
    int n = 0;
    int threads = 1;
    std::uint64_t seed = 0;
    int instances = 0;
    int failures = 0;
    long long bins_sum = 0;
    double mean_utilization = 0.0;
};

// Instance files below `root`, sorted by path. Hidden files and files with a
// .csv, .md or .svg extension are skipped.
std::vector<std::filesystem::path> bench_files(const std::filesystem::path& root);

// Runs every instance for every thread count and seed. A failing instance
// is recorded in its row and the run continues.
std::vector<BenchRow> run_bench(const std::filesystem::path& root, const BenchOptions& opts);

BenchRow bench_instance(const std::filesystem::path& file, const std::string& cls, int threads, std::uint64_t seed,
                        const BenchOptions& opts);

std::vector<BenchCell> aggregate(const std::vector<BenchRow>& rows);

std::string rows_csv(const std::vector<BenchRow>& rows);
std::string cells_csv(const std::vector<BenchCell>& cells);
std::vector<BenchRow> parse_rows_csv(const std::string& text);

// Random instance of one of the ten classic identical-bin classes, n items
// of demand 1. Classes 1-6 draw both sides uniformly in a class range inside
// a square bin; classes 7-10 mix four item shapes in a 100x100 bin with 70%
// of the items taken from one shape.
Instance generate_class_instance(int cls, int n, std::uint64_t seed, bool rotation_allowed = false);

}  // namespace gdrr
