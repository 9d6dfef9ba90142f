// Command line front end: solve, validate, oracle, bench, generate.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>

#include <CLI11.hpp>
#include <json.hpp>

#include "gdrr/bench.hpp"
#include "gdrr/io.hpp"
#include "gdrr/oracle.hpp"
#include "gdrr/parallel.hpp"
#include "gdrr/svg.hpp"
#include "gdrr/validate.hpp"

namespace fs = std::filesystem;
using namespace gdrr;

namespace {

std::optional<bool> rotation_flag(const std::string& variant) {
    if (variant.empty()) return std::nullopt;
    return variant == "r";
}

struct SolveArgs {
    std::string instance;
    std::string variant;
    double time_limit = 600.0;
    int threads = 1;
    std::uint64_t seed = 0;
    double alpha = 1.2;
    double beta = 0.05;
    std::optional<int> mu;
    std::optional<int> history_length;
    std::optional<std::uint64_t> max_iterations;
    bool strict_bin_open = false;
    bool no_bound_stop = false;
    bool quiet = false;
    std::string out;
    std::string svg_dir;
};

void add_search_flags(CLI::App* cmd, SolveArgs& a) {
    cmd->add_option("--variant", a.variant, "o: fixed orientation, r: 90 degree rotation (overrides the file)")
        ->check(CLI::IsMember({"o", "r"}));
    cmd->add_option("--time-limit", a.time_limit, "Wall-clock budget in seconds")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", a.seed, "Seed of worker 0; worker k uses seed + k");
    cmd->add_option("--alpha", a.alpha, "Leftover value exponent")->check(CLI::PositiveNumber);
    cmd->add_option("--beta", a.beta, "Blink probability")->check(CLI::Range(0.0, 0.999999));
    cmd->add_option("--mu", a.mu, "Average removed nodes per ruin (default: tiered by item count)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--history-length", a.history_length, "Late-acceptance history length (default: tiered)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-iterations", a.max_iterations, "Iteration cap per worker")->check(CLI::PositiveNumber);
    cmd->add_flag("--strict-bin-open", a.strict_bin_open,
                  "Open new bins by area alone, without checking that the item fits");
    cmd->add_flag("--no-bound-stop", a.no_bound_stop, "Keep searching after the area lower bound is reached");
}

SearchParams to_params(const SolveArgs& a) {
    SearchParams p;
    p.alpha = a.alpha;
    p.beta = a.beta;
    p.mu = a.mu;
    p.history_length = a.history_length;
    p.time_limit = a.time_limit;
    p.max_iterations = a.max_iterations;
    p.seed = a.seed;
    p.strict_bin_open = a.strict_bin_open;
    return p;
}

int run_solve(const SolveArgs& a) {
    auto inst = std::make_shared<const Instance>(load_instance(a.instance, rotation_flag(a.variant)));
    const SearchParams params = to_params(a);

    std::mutex log_mutex;
    ParallelOptions opts;
    opts.workers = a.threads;
    opts.stop_at_lower_bound = !a.no_bound_stop;
    if (!a.quiet)
        opts.on_event = [&](const SearchEvent& e) {
            nlohmann::ordered_json j{{"event", to_string(e.kind)}, {"worker", e.worker},   {"iteration", e.iteration},
                                     {"seconds", e.seconds},      {"limit", e.limit},     {"best_area", e.best_area},
                                     {"bins", e.bins}};
            std::lock_guard lock(log_mutex);
            std::cerr << j.dump() << "\n";
        };

    const auto rep = run_parallel(inst, params, opts);
    const auto check = validate(*inst, rep.best);
    if (!check.ok()) {
        std::cerr << "internal error: best solution does not validate: " << check.violations.front().message << "\n";
        return 3;
    }

    SolutionMeta meta{params, a.threads, resolve_mu(params, *inst), resolve_history_length(params, *inst)};
    if (!a.out.empty()) write_file(a.out, write_solution(rep.best, meta));
    if (!a.svg_dir.empty()) {
        const auto svgs = render_svg(rep.best);
        for (std::size_t k = 0; k < svgs.size(); ++k)
            write_file(fs::path(a.svg_dir) / ("pattern_" + std::to_string(k + 1) + ".svg"), svgs[k]);
    }

    std::uint64_t iterations = 0;
    for (const auto& w : rep.workers) iterations += w.iterations;
    nlohmann::ordered_json summary{{"instance", inst->name()},
                                   {"bins", rep.best.patterns.size()},
                                   {"total_bin_area", rep.best_area},
                                   {"lower_bound", rep.lower_bound},
                                   {"utilization", utilization(rep.best)},
                                   {"time_to_best", rep.time_to_best},
                                   {"seconds", rep.seconds},
                                   {"iterations", iterations}};
    std::cout << summary.dump() << "\n";
    return 0;
}

int run_validate(const std::string& instance, const std::string& variant, const std::string& solution) {
    auto inst = std::make_shared<const Instance>(load_instance(instance, rotation_flag(variant)));
    const Solution s = read_solution(read_file(solution), inst);
    const auto report = validate(*inst, s);
    for (const auto& v : report.violations) std::cout << to_string(v.kind) << ": " << v.message << "\n";
    if (!report.ok()) {
        std::cout << "INVALID (" << report.violations.size() << " violation(s))\n";
        return 2;
    }
    if (!s.feasible()) {
        std::cout << "INCOMPLETE: " << s.excluded.size() << " item copies not placed\n";
        return 2;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "OK bins=%zu total_bin_area=%lld utilization=%.4f\n", s.patterns.size(),
                  static_cast<long long>(total_bin_area(s)), utilization(s));
    std::cout << buf;
    return 0;
}

int run_oracle(const std::string& instance, const std::string& variant, std::size_t max_copies,
               const std::string& out) {
    auto inst = std::make_shared<const Instance>(load_instance(instance, rotation_flag(variant)));
    OracleBudget budget;
    budget.max_copies = max_copies;
    const auto res = exact_min_area(inst, budget);
    if (!out.empty()) write_file(out, write_solution(res.witness, SolutionMeta{}));
    std::cout << nlohmann::ordered_json{{"instance", inst->name()},
                                        {"optimum", res.optimum},
                                        {"bins", res.witness.patterns.size()}}
                     .dump()
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Guillotine bin packing by goal-driven ruin and recreate"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* cmd_solve = app.add_subcommand("solve", "Solve one instance");
    cmd_solve->add_option("--instance", solve.instance, "Instance file (JSON or plain text)")->required();
    add_search_flags(cmd_solve, solve);
    cmd_solve->add_option("--threads", solve.threads, "Worker threads")->check(CLI::PositiveNumber);
    cmd_solve->add_option("--out", solve.out, "Write the best solution as JSON");
    cmd_solve->add_option("--svg-dir", solve.svg_dir, "Write one SVG per bin");
    cmd_solve->add_flag("--quiet", solve.quiet, "No progress records on stderr");

    std::string v_instance, v_variant, v_solution;
    auto* cmd_validate = app.add_subcommand("validate", "Check a solution file against its instance");
    cmd_validate->add_option("--instance", v_instance)->required();
    cmd_validate->add_option("--solution", v_solution)->required();
    cmd_validate->add_option("--variant", v_variant)->check(CLI::IsMember({"o", "r"}));

    std::string o_instance, o_variant, o_out;
    std::size_t o_max = 6;
    auto* cmd_oracle = app.add_subcommand("oracle", "Exact minimum bin area for tiny instances");
    cmd_oracle->add_option("--instance", o_instance)->required();
    cmd_oracle->add_option("--variant", o_variant)->check(CLI::IsMember({"o", "r"}));
    cmd_oracle->add_option("--max-copies", o_max, "Refuse instances with more item copies");
    cmd_oracle->add_option("--out", o_out, "Write an optimal solution as JSON");

    SolveArgs bench;
    std::string b_dir, b_rows, b_cells;
    std::vector<int> b_threads{1};
    std::vector<std::uint64_t> b_seeds;
    auto* cmd_bench = app.add_subcommand("bench", "Run every instance below a directory");
    cmd_bench->add_option("--dir", b_dir, "Instance root; subdirectories name the classes")->required();
    add_search_flags(cmd_bench, bench);
    cmd_bench->add_option("--threads", b_threads, "Thread counts to sweep, e.g. --threads 1 2 4 8");
    cmd_bench->add_option("--seeds", b_seeds, "Seeds to run (default: --seed)");
    cmd_bench->add_option("--rows", b_rows, "Per-run CSV report");
    cmd_bench->add_option("--cells", b_cells, "Aggregated CSV report");

    int g_class = 1, g_n = 20, g_count = 10;
    std::uint64_t g_seed = 1;
    std::string g_out, g_format = "text";
    auto* cmd_gen = app.add_subcommand("generate", "Write random instances of the classic classes 1-10");
    cmd_gen->add_option("--class", g_class)->check(CLI::Range(1, 10));
    cmd_gen->add_option("--n", g_n, "Items per instance")->check(CLI::PositiveNumber);
    cmd_gen->add_option("--count", g_count, "Instances to write")->check(CLI::PositiveNumber);
    cmd_gen->add_option("--seed", g_seed);
    cmd_gen->add_option("--format", g_format)->check(CLI::IsMember({"text", "json"}));
    cmd_gen->add_option("--out-dir", g_out)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_solve) return run_solve(solve);
        if (*cmd_validate) return run_validate(v_instance, v_variant, v_solution);
        if (*cmd_oracle) return run_oracle(o_instance, o_variant, o_max, o_out);
        if (*cmd_bench) {
            BenchOptions opts;
            opts.params = to_params(bench);
            opts.threads = b_threads;
            opts.seeds = b_seeds;
            opts.rotation = rotation_flag(bench.variant);
            opts.stop_at_lower_bound = !bench.no_bound_stop;
            opts.on_row = [](const BenchRow& r) {
                std::cerr << r.cls << "/" << r.instance << " threads=" << r.threads << " seed=" << r.seed << " "
                          << (r.ok ? "bins=" + std::to_string(r.bins) : "FAILED: " + r.error) << "\n";
            };
            const auto rows = run_bench(b_dir, opts);
            const auto cells = aggregate(rows);
            if (!b_rows.empty()) write_file(b_rows, rows_csv(rows));
            if (!b_cells.empty()) write_file(b_cells, cells_csv(cells));
            std::cout << cells_csv(cells);
            return std::all_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.ok; }) ? 0 : 1;
        }
        if (*cmd_gen) {
            for (int k = 0; k < g_count; ++k) {
                const auto inst = generate_class_instance(g_class, g_n, g_seed + static_cast<std::uint64_t>(k));
                const bool json = g_format == "json";
                char name[64];
                std::snprintf(name, sizeof name, "cl%02d_%03d_%02d.%s", g_class, g_n, k + 1, json ? "json" : "txt");
                write_file(fs::path(g_out) / name, json ? format_json_instance(inst) : format_text_instance(inst));
            }
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const InstanceError& e) {
        std::cerr << "invalid instance: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
