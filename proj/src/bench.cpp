#include "gdrr/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

#include "gdrr/io.hpp"
#include "gdrr/rng.hpp"
#include "gdrr/validate.hpp"

namespace gdrr {

namespace fs = std::filesystem;

std::vector<fs::path> bench_files(const fs::path& root) {
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (!e.is_regular_file()) continue;
        const auto name = e.path().filename().string();
        const auto ext = e.path().extension().string();
        if (name.empty() || name[0] == '.' || ext == ".csv" || ext == ".md" || ext == ".svg") continue;
        files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

namespace {

std::string join_trace(const std::vector<Area>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ";" : "") + std::to_string(v[k]);
    return s;
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

// Fields never contain commas or quotes except error text, which is quoted.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c == '\n' ? ' ' : c;
    }
    return q + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

constexpr const char* kRowHeader =
    "class,instance,n,threads,seed,ok,best_area,lower_bound,bins,bins_per_type,utilization,time_to_best,seconds,"
    "iterations,limit_trace,error";

}  // namespace

BenchRow bench_instance(const fs::path& file, const std::string& cls, int threads, std::uint64_t seed,
                        const BenchOptions& opts) {
    BenchRow row;
    row.cls = cls;
    row.instance = file.filename().string();
    row.threads = threads;
    row.seed = seed;
    try {
        auto inst = std::make_shared<const Instance>(load_instance(file, opts.rotation));
        row.instance = inst->name();
        row.n = static_cast<int>(inst->copy_count());
        SearchParams p = opts.params;
        p.seed = seed;
        ParallelOptions po;
        po.workers = threads;
        po.stop_at_lower_bound = opts.stop_at_lower_bound;
        const auto rep = run_parallel(inst, p, po);
        const auto check = validate(*inst, rep.best);
        if (!check.ok() || !rep.best.feasible())
            throw std::logic_error("solver returned an invalid solution: " +
                                   (check.ok() ? std::string("items excluded") : check.violations.front().message));
        row.best_area = rep.best_area;
        row.lower_bound = rep.lower_bound;
        row.bins = static_cast<int>(rep.best.patterns.size());
        const auto used = bins_used(rep.best);
        for (std::size_t t = 0; t < used.size(); ++t) {
            if (!used[t]) continue;
            if (!row.bins_per_type.empty()) row.bins_per_type += ';';
            row.bins_per_type += std::to_string(inst->bins()[t].id) + ":" + std::to_string(used[t]);
        }
        row.utilization = utilization(rep.best);
        row.time_to_best = rep.time_to_best;
        row.seconds = rep.seconds;
        for (const auto& w : rep.workers) row.iterations += w.iterations;
        row.limit_trace = join_trace(rep.limit_trace);
        row.ok = true;
    } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
    }
    return row;
}

std::vector<BenchRow> run_bench(const fs::path& root, const BenchOptions& opts) {
    std::vector<BenchRow> rows;
    std::vector<std::uint64_t> seeds = opts.seeds;
    if (seeds.empty()) seeds.push_back(opts.params.seed);
    for (const auto& file : bench_files(root)) {
        auto rel = fs::relative(file.parent_path(), root).generic_string();
        if (rel.empty() || rel == ".") rel = root.filename().string();
        for (int t : opts.threads) {
            for (auto seed : seeds) {
                rows.push_back(bench_instance(file, rel, t, seed, opts));
                if (opts.on_row) opts.on_row(rows.back());
            }
        }
    }
    return rows;
}

std::vector<BenchCell> aggregate(const std::vector<BenchRow>& rows) {
    std::map<std::tuple<std::string, int, int, std::uint64_t>, BenchCell> cells;
    std::map<std::tuple<std::string, int, int, std::uint64_t>, double> util_sum;
    for (const auto& r : rows) {
        const auto key = std::make_tuple(r.cls, r.n, r.threads, r.seed);
        auto& c = cells[key];
        c.cls = r.cls;
        c.n = r.n;
        c.threads = r.threads;
        c.seed = r.seed;
        if (!r.ok) {
            ++c.failures;
            continue;
        }
        ++c.instances;
        c.bins_sum += r.bins;
        util_sum[key] += r.utilization;
    }
    std::vector<BenchCell> out;
    for (auto& [key, c] : cells) {
        if (c.instances > 0) c.mean_utilization = util_sum[key] / c.instances;
        out.push_back(c);
    }
    return out;
}

std::string rows_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << kRowHeader << "\n";
    for (const auto& r : rows)
        out << csv_field(r.cls) << ',' << csv_field(r.instance) << ',' << r.n << ',' << r.threads << ',' << r.seed
            << ',' << (r.ok ? 1 : 0) << ',' << r.best_area << ',' << r.lower_bound << ',' << r.bins << ','
            << r.bins_per_type << ',' << fixed(r.utilization, 6) << ',' << fixed(r.time_to_best, 3) << ','
            << fixed(r.seconds, 3) << ',' << r.iterations << ',' << r.limit_trace << ',' << csv_field(r.error)
            << "\n";
    return out.str();
}

std::string cells_csv(const std::vector<BenchCell>& cells) {
    std::ostringstream out;
    out << "class,n,threads,seed,instances,failures,sum_bins,mean_utilization\n";
    for (const auto& c : cells)
        out << csv_field(c.cls) << ',' << c.n << ',' << c.threads << ',' << c.seed << ',' << c.instances << ','
            << c.failures << ',' << c.bins_sum << ',' << fixed(c.mean_utilization, 6) << "\n";
    return out.str();
}

std::vector<BenchRow> parse_rows_csv(const std::string& text) {
    std::vector<BenchRow> rows;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kRowHeader) throw std::runtime_error("not a bench row report");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 16) throw std::runtime_error("malformed bench row: " + line);
        BenchRow r;
        r.cls = f[0];
        r.instance = f[1];
        r.n = std::stoi(f[2]);
        r.threads = std::stoi(f[3]);
        r.seed = std::stoull(f[4]);
        r.ok = f[5] == "1";
        r.best_area = std::stoll(f[6]);
        r.lower_bound = std::stoll(f[7]);
        r.bins = std::stoi(f[8]);
        r.bins_per_type = f[9];
        r.utilization = std::stod(f[10]);
        r.time_to_best = std::stod(f[11]);
        r.seconds = std::stod(f[12]);
        r.iterations = std::stoull(f[13]);
        r.limit_trace = f[14];
        r.error = f[15];
        rows.push_back(std::move(r));
    }
    return rows;
}

Instance generate_class_instance(int cls, int n, std::uint64_t seed, bool rotation_allowed) {
    if (cls < 1 || cls > 10) throw std::invalid_argument("class must be in 1..10");
    if (n < 1) throw std::invalid_argument("item count must be positive");
    Rng rng(seed);
    auto draw = [&](Length lo, Length hi) { return lo + static_cast<Length>(rng.uniform_index(static_cast<std::size_t>(hi - lo + 1))); };

    struct Uniform {
        Length bin, lo, hi;
    };
    static const Uniform kUniform[6] = {{10, 1, 10}, {30, 1, 10}, {40, 1, 35}, {100, 1, 35}, {100, 1, 100}, {300, 1, 100}};

    Length side = 100;
    std::vector<ItemSpec> items;
    for (int k = 0; k < n; ++k) {
        ItemSpec it;
        it.id = k + 1;
        if (cls <= 6) {
            const auto& u = kUniform[cls - 1];
            side = u.bin;
            it.width = draw(u.lo, u.hi);
            it.height = draw(u.lo, u.hi);
        } else {
            const Length W = 100;
            const Length H = 100;
            // 70% of the items from the dominant shape, 10% from each other
            const int dominant = cls - 7;
            int shape = dominant;
            if (!rng.bernoulli(0.7)) {
                shape = static_cast<int>(rng.uniform_index(3));
                if (shape >= dominant) ++shape;
            }
            switch (shape) {
                case 0: it.width = draw(2 * W / 3, W); it.height = draw(1, H / 2); break;
                case 1: it.width = draw(1, W / 2); it.height = draw(2 * H / 3, H); break;
                case 2: it.width = draw(W / 2, W); it.height = draw(H / 2, H); break;
                default: it.width = draw(1, W / 2); it.height = draw(1, H / 2); break;
            }
        }
        items.push_back(it);
    }
    std::vector<BinSpec> bins{BinSpec{1, side, side, std::nullopt}};
    return Instance("class" + std::to_string(cls) + "_n" + std::to_string(n) + "_s" + std::to_string(seed),
                    std::move(items), std::move(bins), rotation_allowed);
}

}  // namespace gdrr
