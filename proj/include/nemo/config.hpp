// Experiment configuration: a flat "key = value" file with [problem <id>]
// and [algorithm <name>] sections. Unknown or duplicate keys are errors.
// Scalar defaults match the desk preset; all algorithms share one (N, G)
// so evaluation budgets stay comparable.
#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "nemo/algorithms.hpp"
#include "nemo/problems.hpp"
#include "nemo/rng.hpp"

namespace nemo {

struct ProblemSpec {
    std::string id;
    std::string family; // "kp" or "nk"
    std::size_t n = 0;
    std::size_t k = 0; // nk only
    std::size_t m = 2;
    std::uint64_t seed = 1;
    std::string file; // if set, the instance is loaded instead of generated
};

struct ExperimentConfig {
    std::uint64_t master_seed = 1;
    std::size_t runs = 10;
    std::size_t population = 200;
    std::size_t generations = 500;
    std::string out_dir = "results";
    std::vector<ProblemSpec> problems;
    std::vector<AlgorithmConfig> algorithms;
};

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline bool valid_id(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'))
            return false;
    return true;
}

inline std::uint64_t config_u64(const std::string& value, const std::string& key,
                                std::size_t line) {
    std::uint64_t v = 0;
    auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
        throw ParseError("key '" + key + "' needs a non-negative integer, got '" + value + "'",
                         line);
    return v;
}

inline double config_double(const std::string& value, const std::string& key, std::size_t line) {
    double v = 0.0;
    auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
        throw ParseError("key '" + key + "' needs a number, got '" + value + "'", line);
    return v;
}

} // namespace detail

// Parses and validates a configuration stream. Algorithm sections accept
// tournament_k, crossover_rate, mutation_rate (switches mutation to the
// fixed rate) and reference_directions; problem sections accept family, n,
// k, m, seed or a lone file key.
inline ExperimentConfig parse_config(std::istream& is) {
    ExperimentConfig config;
    enum class Section { global, problem, algorithm };
    Section section = Section::global;
    std::vector<std::string> seen; // keys of the current section
    std::size_t section_line = 0;

    auto finalize_problem = [&] {
        const ProblemSpec& p = config.problems.back();
        auto has = [&](const char* key) {
            for (const std::string& s : seen)
                if (s == key) return true;
            return false;
        };
        if (has("file")) {
            for (const std::string& s : seen)
                if (s != "file")
                    throw ParseError("problem '" + p.id + "': key '" + s +
                                         "' conflicts with 'file'",
                                     section_line);
            return;
        }
        if (!has("family"))
            throw ParseError("problem '" + p.id + "': missing 'family'", section_line);
        if (!has("n")) throw ParseError("problem '" + p.id + "': missing 'n'", section_line);
        if (p.n < 1) throw ParseError("problem '" + p.id + "': n must be >= 1", section_line);
        if (p.m < 2) throw ParseError("problem '" + p.id + "': m must be >= 2", section_line);
        if (p.family == "kp") {
            if (has("k"))
                throw ParseError("problem '" + p.id + "': 'k' only applies to family nk",
                                 section_line);
        } else if (p.family == "nk") {
            if (!has("k")) throw ParseError("problem '" + p.id + "': missing 'k'", section_line);
            if (p.k > p.n - 1)
                throw ParseError("problem '" + p.id + "': k must be <= n-1", section_line);
        } else {
            throw ParseError("problem '" + p.id + "': family must be kp or nk", section_line);
        }
    };
    auto finalize_section = [&] {
        if (section == Section::problem) finalize_problem();
        seen.clear();
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string text = detail::trim(line);
        if (text.empty()) continue;

        if (text.front() == '[') {
            if (text.back() != ']') throw ParseError("unterminated section header", lineno);
            const std::string inner = detail::trim(text.substr(1, text.size() - 2));
            const auto space = inner.find(' ');
            if (space == std::string::npos)
                throw ParseError("section header needs '[problem <id>]' or '[algorithm <name>]'",
                                 lineno);
            const std::string kind = inner.substr(0, space);
            const std::string name = detail::trim(inner.substr(space + 1));
            finalize_section();
            section_line = lineno;
            if (kind == "problem") {
                if (!detail::valid_id(name))
                    throw ParseError("problem id '" + name +
                                         "' may only use letters, digits, '_', '-', '.'",
                                     lineno);
                for (const ProblemSpec& p : config.problems)
                    if (p.id == name) throw ParseError("duplicate problem '" + name + "'", lineno);
                config.problems.emplace_back();
                config.problems.back().id = name;
                section = Section::problem;
            } else if (kind == "algorithm") {
                const auto id = algorithm_from_name(name);
                if (!id)
                    throw ParseError("unknown algorithm '" + name +
                                         "' (expected NE-MOEA, NSGA-II, SMS-EMOA or NSGA-III)",
                                     lineno);
                for (const AlgorithmConfig& a : config.algorithms)
                    if (a.id == *id)
                        throw ParseError("duplicate algorithm '" + name + "'", lineno);
                config.algorithms.push_back(default_config(*id, 0, 0));
                section = Section::algorithm;
            } else {
                throw ParseError("unknown section kind '" + kind + "'", lineno);
            }
            continue;
        }

        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected 'key = value', got '" + text + "'", lineno);
        const std::string key = detail::trim(text.substr(0, eq));
        const std::string value = detail::trim(text.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseError("expected 'key = value', got '" + text + "'", lineno);
        for (const std::string& s : seen)
            if (s == key) throw ParseError("duplicate key '" + key + "'", lineno);
        seen.push_back(key);

        switch (section) {
        case Section::global:
            if (key == "seed")
                config.master_seed = detail::config_u64(value, key, lineno);
            else if (key == "runs")
                config.runs = detail::config_u64(value, key, lineno);
            else if (key == "population")
                config.population = detail::config_u64(value, key, lineno);
            else if (key == "generations")
                config.generations = detail::config_u64(value, key, lineno);
            else if (key == "out")
                config.out_dir = value;
            else
                throw ParseError("unknown key '" + key + "'", lineno);
            break;
        case Section::problem: {
            ProblemSpec& p = config.problems.back();
            if (key == "family")
                p.family = value;
            else if (key == "n")
                p.n = detail::config_u64(value, key, lineno);
            else if (key == "k")
                p.k = detail::config_u64(value, key, lineno);
            else if (key == "m")
                p.m = detail::config_u64(value, key, lineno);
            else if (key == "seed")
                p.seed = detail::config_u64(value, key, lineno);
            else if (key == "file")
                p.file = value;
            else
                throw ParseError("unknown key '" + key + "' in problem section", lineno);
            break;
        }
        case Section::algorithm: {
            AlgorithmConfig& a = config.algorithms.back();
            if (key == "tournament_k")
                a.tournament_k = detail::config_u64(value, key, lineno);
            else if (key == "crossover_rate")
                a.crossover_rate = detail::config_double(value, key, lineno);
            else if (key == "mutation_rate") {
                a.mutation.mode = MutationConfig::Mode::fixed_rate;
                a.mutation.rate = detail::config_double(value, key, lineno);
            } else if (key == "reference_directions")
                a.reference_directions = detail::config_u64(value, key, lineno);
            else
                throw ParseError("unknown key '" + key + "' in algorithm section", lineno);
            break;
        }
        }
    }
    finalize_section();

    if (config.runs < 1) throw ParseError("runs must be >= 1", 0);
    if (config.problems.empty()) throw ParseError("no [problem <id>] sections configured", 0);
    if (config.algorithms.empty())
        throw ParseError("no [algorithm <name>] sections configured", 0);
    for (AlgorithmConfig& a : config.algorithms) {
        a.population_size = config.population;
        a.generations = config.generations;
        validate(a);
    }
    return config;
}

// One seeded instance per problem row. Generation draws from a source
// seeded with the problem's own seed, so instances are independent of the
// experiment's master seed; harness runs are bi-objective.
inline std::vector<Problem> resolve_problems(const ExperimentConfig& config) {
    std::vector<Problem> problems;
    problems.reserve(config.problems.size());
    for (const ProblemSpec& spec : config.problems) {
        if (!spec.file.empty()) {
            std::ifstream in(spec.file);
            if (!in) throw std::runtime_error("cannot open instance file: " + spec.file);
            problems.push_back(Problem::load(in));
        } else {
            RandomSource rng(spec.seed);
            if (spec.family == "kp")
                problems.push_back(Problem(knapsack_generate(spec.n, spec.m, rng)));
            else
                problems.push_back(Problem(nk_generate(spec.n, spec.k, spec.m, rng)));
        }
        if (problems.back().num_objectives() != 2)
            throw std::runtime_error("problem '" + spec.id +
                                     "': experiments support bi-objective instances only");
    }
    return problems;
}

// Desk-scale default: two instances, all four algorithms, budgets small
// enough for interactive use.
inline ExperimentConfig desk_preset() {
    ExperimentConfig c;
    c.master_seed = 1;
    c.runs = 10;
    c.population = 200;
    c.generations = 500;
    c.out_dir = "results";
    ProblemSpec kp;
    kp.id = "kp-200";
    kp.family = "kp";
    kp.n = 200;
    kp.m = 2;
    kp.seed = 11;
    ProblemSpec nk;
    nk.id = "nk-100-10";
    nk.family = "nk";
    nk.n = 100;
    nk.k = 10;
    nk.m = 2;
    nk.seed = 12;
    c.problems = {kp, nk};
    for (AlgorithmId id : {AlgorithmId::nsga2, AlgorithmId::sms_emoa, AlgorithmId::nsga3,
                           AlgorithmId::ne_moea})
        c.algorithms.push_back(default_config(id, c.population, c.generations));
    return c;
}

// Full-scale preset: N=10,000 for 5,000 generations, 30 runs, the eight
// benchmark instances. 5x10^7 offspring evaluations per run; far beyond
// desk runtimes.
inline ExperimentConfig paper_preset() {
    ExperimentConfig c;
    c.master_seed = 1;
    c.runs = 30;
    c.population = 10000;
    c.generations = 5000;
    c.out_dir = "results-paper";
    std::uint64_t seed = 21;
    for (std::size_t n : {50, 100, 200, 300}) {
        ProblemSpec p;
        p.id = "kp-" + std::to_string(n);
        p.family = "kp";
        p.n = n;
        p.m = 2;
        p.seed = seed++;
        c.problems.push_back(p);
    }
    for (std::size_t n : {50, 100, 200, 300}) {
        ProblemSpec p;
        p.id = "nk-" + std::to_string(n) + "-10";
        p.family = "nk";
        p.n = n;
        p.k = 10;
        p.m = 2;
        p.seed = seed++;
        c.problems.push_back(p);
    }
    for (AlgorithmId id : {AlgorithmId::nsga2, AlgorithmId::sms_emoa, AlgorithmId::nsga3,
                           AlgorithmId::ne_moea})
        c.algorithms.push_back(default_config(id, c.population, c.generations));
    return c;
}

} // namespace nemo
