// Multi-run experiment execution and reporting. Each run owns a random
// stream forked from (master seed, problem index, algorithm index, run
// index), so results are independent of scheduling; rows, dumps and the
// CSV are byte-stable across worker counts. Knapsack hypervolumes are
// normalized by the per-objective maximum over the union of all archives
// of the instance; NK objectives are already in [0,1] and used raw.
#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "nemo/algorithms.hpp"
#include "nemo/config.hpp"
#include "nemo/indicators.hpp"
#include "nemo/io.hpp"
#include "nemo/stats.hpp"

namespace nemo {

struct RunRecord {
    std::string problem;
    std::string algorithm;
    std::size_t run = 0;
    std::uint64_t seed = 0;
    double hypervolume = 0.0; // normalized, reference (0,0)
    std::uint64_t evaluations = 0;
    std::string archive_path;    // relative to the output directory
    std::string population_path; // relative to the output directory
    std::uint64_t wall_ms = 0;   // excluded from the determinism contract
};

inline constexpr const char* kCsvHeader =
    "problem,algorithm,run,seed,hypervolume,evaluations,archive_path,population_path,wall_ms";

inline void write_csv(std::ostream& os, const std::vector<RunRecord>& records) {
    os << kCsvHeader << "\n";
    for (const RunRecord& r : records) {
        os << r.problem << ',' << r.algorithm << ',' << r.run << ',' << r.seed << ',';
        detail::write_double(os, r.hypervolume);
        os << ',' << r.evaluations << ',' << r.archive_path << ',' << r.population_path << ','
           << r.wall_ms << "\n";
    }
}

inline std::vector<RunRecord> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError("empty results file", 1);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader)
        throw ParseError(std::string("expected header '") + kCsvHeader + "'", 1);
    std::vector<RunRecord> records;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                fields.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        }
        if (fields.size() != 9)
            throw ParseError("expected 9 comma-separated fields, got " +
                                 std::to_string(fields.size()),
                             lineno);
        RunRecord r;
        r.problem = fields[0];
        r.algorithm = fields[1];
        r.run = detail::config_u64(fields[2], "run", lineno);
        r.seed = detail::config_u64(fields[3], "seed", lineno);
        r.hypervolume = detail::config_double(fields[4], "hypervolume", lineno);
        r.evaluations = detail::config_u64(fields[5], "evaluations", lineno);
        r.archive_path = fields[6];
        r.population_path = fields[7];
        r.wall_ms = detail::config_u64(fields[8], "wall_ms", lineno);
        records.push_back(std::move(r));
    }
    return records;
}

namespace detail {

inline std::string dump_name(const std::string& problem, const std::string& algorithm,
                             std::size_t run, const char* kind) {
    return problem + "__" + algorithm + "__r" + std::to_string(run) + "." + kind + ".txt";
}

inline std::vector<ObjectiveVector> sorted_points(std::vector<ObjectiveVector> points) {
    std::sort(points.begin(), points.end());
    return points;
}

} // namespace detail

// Executes every (problem, algorithm, run) task of the experiment on
// `workers` threads, writes per-run archive/population dumps plus
// results.csv under config.out_dir, and returns the records in task order
// (problem-major, then algorithm, then run).
inline std::vector<RunRecord> execute(const ExperimentConfig& config, std::size_t workers,
                                      std::ostream* log = nullptr) {
    const std::vector<Problem> problems = resolve_problems(config);
    struct Task {
        std::size_t p, a, r;
    };
    std::vector<Task> tasks;
    tasks.reserve(config.problems.size() * config.algorithms.size() * config.runs);
    for (std::size_t p = 0; p < config.problems.size(); ++p)
        for (std::size_t a = 0; a < config.algorithms.size(); ++a)
            for (std::size_t r = 0; r < config.runs; ++r) tasks.push_back({p, a, r});

    const RandomSource master(config.master_seed);
    std::vector<RunResult> results(tasks.size());
    std::vector<std::uint64_t> wall(tasks.size(), 0);
    std::vector<std::uint64_t> seeds(tasks.size(), 0);

    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    std::exception_ptr failure;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& t = tasks[i];
            try {
                RandomSource rng = master.fork({t.p, t.a, t.r});
                seeds[i] = rng.seed();
                const auto t0 = std::chrono::steady_clock::now();
                results[i] = run(problems[t.p], config.algorithms[t.a], rng);
                const auto t1 = std::chrono::steady_clock::now();
                wall[i] = static_cast<std::uint64_t>(
                    std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
                if (log) {
                    std::lock_guard<std::mutex> lock(log_mutex);
                    *log << "[run] problem=" << config.problems[t.p].id
                         << " algorithm=" << algorithm_name(config.algorithms[t.a].id)
                         << " run=" << t.r << " evaluations=" << results[i].evaluations
                         << " wall_ms=" << wall[i] << "\n";
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(log_mutex);
                if (!failure) failure = std::current_exception();
                next.store(tasks.size());
                return;
            }
        }
    };
    const std::size_t thread_count = std::max<std::size_t>(1, std::min(workers, tasks.size()));
    if (thread_count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        for (std::size_t i = 0; i < thread_count; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    // per-problem normalization scales over the union of all archives
    std::vector<std::vector<double>> scales(config.problems.size());
    for (std::size_t p = 0; p < config.problems.size(); ++p) {
        const std::size_t m = problems[p].num_objectives();
        if (!problems[p].is_knapsack()) {
            scales[p].assign(m, 1.0);
            continue;
        }
        std::vector<double> hi(m, 0.0);
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            if (tasks[i].p != p) continue;
            for (const Archive::Entry& e : results[i].archive.entries())
                for (std::size_t c = 0; c < m; ++c) hi[c] = std::max(hi[c], e.objectives[c]);
        }
        for (double& s : hi)
            if (!(s > 0.0)) s = 1.0;
        scales[p] = std::move(hi);
    }

    const std::filesystem::path out_dir(config.out_dir);
    std::filesystem::create_directories(out_dir);
    std::vector<RunRecord> records;
    records.reserve(tasks.size());
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const Task& t = tasks[i];
        RunRecord rec;
        rec.problem = config.problems[t.p].id;
        rec.algorithm = algorithm_name(config.algorithms[t.a].id);
        rec.run = t.r;
        rec.seed = seeds[i];
        rec.evaluations = results[i].evaluations;
        rec.wall_ms = wall[i];
        rec.archive_path = detail::dump_name(rec.problem, rec.algorithm, t.r, "archive");
        rec.population_path = detail::dump_name(rec.problem, rec.algorithm, t.r, "pop");

        const std::vector<ObjectiveVector> archive_points = results[i].archive.objective_points();
        const ObjectiveVector ref(2, 0.0);
        rec.hypervolume = hypervolume_2d(normalize(archive_points, scales[t.p]), ref);

        std::ofstream archive_out(out_dir / rec.archive_path);
        write_points(archive_out, detail::sorted_points(archive_points), 2);
        std::vector<ObjectiveVector> pop_points;
        pop_points.reserve(results[i].population.size());
        for (const Solution& s : results[i].population) pop_points.push_back(s.objectives);
        std::ofstream pop_out(out_dir / rec.population_path);
        write_points(pop_out, pop_points, 2);
        records.push_back(std::move(rec));
    }

    std::ofstream csv(out_dir / "results.csv");
    write_csv(csv, records);
    if (!csv) throw std::runtime_error("cannot write " + (out_dir / "results.csv").string());
    return records;
}

// ---------------------------------------------------------------------------
// Comparison report

// Per-(problem, algorithm) hypervolume samples in first-appearance order.
inline std::vector<SampleSet> group_samples(const std::vector<RunRecord>& records) {
    std::vector<SampleSet> sets;
    for (const RunRecord& r : records) {
        SampleSet* cell = nullptr;
        for (SampleSet& s : sets)
            if (s.problem == r.problem && s.algorithm == r.algorithm) cell = &s;
        if (!cell) {
            sets.push_back(SampleSet{r.problem, r.algorithm, {}});
            cell = &sets.back();
        }
        cell->values.push_back(r.hypervolume);
    }
    return sets;
}

inline std::vector<SummaryCell> summarize_records(const std::vector<RunRecord>& records) {
    return summarize(group_samples(records), "NE-MOEA");
}

inline void write_report_csv(std::ostream& os, const std::vector<SummaryCell>& cells) {
    os << "problem,algorithm,runs,mean,sd,p_vs_baseline,significant,best\n";
    for (const SummaryCell& c : cells) {
        os << c.problem << ',' << c.algorithm << ',' << c.runs << ',';
        detail::write_double(os, c.mean);
        os << ',';
        detail::write_double(os, c.sd);
        os << ',';
        if (std::isnan(c.p_vs_baseline))
            os << "";
        else
            detail::write_double(os, c.p_vs_baseline);
        os << ',' << (c.significant_vs_baseline ? 1 : 0) << ',' << (c.best ? 1 : 0) << "\n";
    }
}

// Aligned text table: one row per problem, one column per algorithm, cells
// "mean (sd)" with '+' marking a significant difference from NE-MOEA and
// '*' marking the best mean of the row.
inline std::string render_report_text(const std::vector<SummaryCell>& cells) {
    std::vector<std::string> problems;
    std::vector<std::string> algorithms;
    for (const SummaryCell& c : cells) {
        if (std::find(problems.begin(), problems.end(), c.problem) == problems.end())
            problems.push_back(c.problem);
        if (std::find(algorithms.begin(), algorithms.end(), c.algorithm) == algorithms.end())
            algorithms.push_back(c.algorithm);
    }
    auto cell_text = [&](const std::string& problem, const std::string& algorithm) {
        for (const SummaryCell& c : cells) {
            if (c.problem != problem || c.algorithm != algorithm) continue;
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.4e (%.2e)", c.mean, c.sd);
            std::string s(buf);
            if (c.significant_vs_baseline) s += '+';
            if (c.best) s += '*';
            return s;
        }
        return std::string("-");
    };

    std::vector<std::size_t> widths(algorithms.size() + 1, 7);
    widths[0] = std::max(widths[0], std::string("problem").size());
    for (const std::string& p : problems) widths[0] = std::max(widths[0], p.size());
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
        widths[a + 1] = std::max(widths[a + 1], algorithms[a].size());
        for (const std::string& p : problems)
            widths[a + 1] = std::max(widths[a + 1], cell_text(p, algorithms[a]).size());
    }
    std::ostringstream os;
    auto pad = [&](const std::string& s, std::size_t w) {
        os << s << std::string(w > s.size() ? w - s.size() : 0, ' ');
    };
    pad("problem", widths[0]);
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
        os << "  ";
        pad(algorithms[a], widths[a + 1]);
    }
    os << "\n";
    for (const std::string& p : problems) {
        pad(p, widths[0]);
        for (std::size_t a = 0; a < algorithms.size(); ++a) {
            os << "  ";
            pad(cell_text(p, algorithms[a]), widths[a + 1]);
        }
        os << "\n";
    }
    os << "\n* best mean per problem; + significantly different from NE-MOEA"
          " (Wilcoxon rank-sum, 95%)\n";
    return os.str();
}

} // namespace nemo
