// Benchmark problem families: the multi-objective 0/1 knapsack (with greedy
// ratio repair) and the multi-objective NK-landscape. Instances are generated
// from a seeded random source, are immutable afterwards, and evaluate genomes
// as a pure function. A plain-text serialization round-trips both families.
#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "nemo/core.hpp"
#include "nemo/rng.hpp"

namespace nemo {

struct Evaluation {
    ObjectiveVector objectives;
    bool feasible = true;
    std::optional<Genome> repaired_genome; // present iff repair changed the input
};

// ---------------------------------------------------------------------------
// 0/1 knapsack

struct KnapsackInstance {
    std::size_t n = 0; // items
    std::size_t m = 0; // objectives
    std::vector<std::vector<double>> profits;  // [objective][item], > 0
    std::vector<std::vector<double>> weights;  // [objective][item], > 0
    std::vector<double> capacities;            // [objective]
    // Items sorted by ascending max profit/weight ratio (ties: lower index
    // first). Derived from the tables; repair drops items in this order.
    std::vector<std::uint32_t> removal_order;
};

inline std::vector<std::uint32_t> knapsack_removal_order(const KnapsackInstance& inst) {
    std::vector<double> ratio(inst.n, 0.0);
    for (std::size_t j = 0; j < inst.n; ++j) {
        double best = 0.0;
        for (std::size_t i = 0; i < inst.m; ++i)
            best = std::max(best, inst.profits[i][j] / inst.weights[i][j]);
        ratio[j] = best;
    }
    std::vector<std::uint32_t> order(inst.n);
    for (std::size_t j = 0; j < inst.n; ++j) order[j] = static_cast<std::uint32_t>(j);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return ratio[a] < ratio[b]; });
    return order;
}

// Profits and weights are integers drawn uniformly from [10, 100]; each
// capacity is half the weight sum of its objective.
inline KnapsackInstance knapsack_generate(std::size_t n, std::size_t m, RandomSource& rng) {
    if (n < 1 || m < 2)
        throw std::invalid_argument("knapsack_generate: need n >= 1 and m >= 2");
    KnapsackInstance inst;
    inst.n = n;
    inst.m = m;
    inst.profits.assign(m, std::vector<double>(n));
    inst.weights.assign(m, std::vector<double>(n));
    inst.capacities.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inst.profits[i][j] = static_cast<double>(10 + rng.next_below(91));
    for (std::size_t i = 0; i < m; ++i) {
        double total = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            inst.weights[i][j] = static_cast<double>(10 + rng.next_below(91));
            total += inst.weights[i][j];
        }
        inst.capacities[i] = total / 2.0;
    }
    inst.removal_order = knapsack_removal_order(inst);
    return inst;
}

// Greedy repair: drop selected items in ascending order of their best
// profit/weight ratio until every capacity constraint holds. Feasible input
// is returned unchanged.
inline Genome knapsack_repair(const KnapsackInstance& inst, const Genome& genome) {
    if (genome.size() != inst.n)
        throw std::invalid_argument("knapsack_repair: genome length mismatch");
    std::vector<double> load(inst.m, 0.0);
    for (std::size_t i = 0; i < inst.m; ++i)
        for (std::size_t j = 0; j < inst.n; ++j)
            if (genome[j]) load[i] += inst.weights[i][j];
    auto feasible = [&] {
        for (std::size_t i = 0; i < inst.m; ++i)
            if (load[i] > inst.capacities[i]) return false;
        return true;
    };
    if (feasible()) return genome;

    std::vector<std::uint32_t> local_order;
    const std::vector<std::uint32_t>* order = &inst.removal_order;
    if (order->size() != inst.n) { // hand-built instance without cached order
        local_order = knapsack_removal_order(inst);
        order = &local_order;
    }
    Genome repaired = genome;
    for (std::uint32_t j : *order) {
        if (!repaired[j]) continue;
        repaired[j] = 0;
        for (std::size_t i = 0; i < inst.m; ++i) load[i] -= inst.weights[i][j];
        if (feasible()) break;
    }
    return repaired;
}

inline Evaluation knapsack_evaluate(const KnapsackInstance& inst, const Genome& genome) {
    Genome repaired = knapsack_repair(inst, genome);
    Evaluation ev;
    ev.objectives.assign(inst.m, 0.0);
    for (std::size_t i = 0; i < inst.m; ++i) {
        double total = 0.0;
        for (std::size_t j = 0; j < inst.n; ++j)
            if (repaired[j]) total += inst.profits[i][j];
        ev.objectives[i] = total;
    }
    ev.feasible = true;
    if (repaired != genome) ev.repaired_genome = std::move(repaired);
    return ev;
}

// ---------------------------------------------------------------------------
// NK-landscape

struct NKInstance {
    std::size_t n = 0; // bits
    std::size_t k = 0; // epistatic neighbours per bit
    std::size_t m = 0; // objectives
    // neighbors[objective][bit]: k distinct indices, none equal to the bit.
    std::vector<std::vector<std::vector<std::uint32_t>>> neighbors;
    // tables[objective][bit]: 2^(k+1) values in [0,1]. The bit's own value is
    // the most significant index bit; neighbours follow in stored order.
    std::vector<std::vector<std::vector<double>>> tables;
};

inline NKInstance nk_generate(std::size_t n, std::size_t k, std::size_t m, RandomSource& rng) {
    if (n < 1 || m < 2 || k > n - 1)
        throw std::invalid_argument("nk_generate: need n >= 1, m >= 2, 0 <= k <= n-1");
    NKInstance inst;
    inst.n = n;
    inst.k = k;
    inst.m = m;
    const std::size_t table_size = std::size_t{1} << (k + 1);
    inst.neighbors.assign(m, std::vector<std::vector<std::uint32_t>>(n));
    inst.tables.assign(m, std::vector<std::vector<double>>(n));
    std::vector<std::uint32_t> others(n > 0 ? n - 1 : 0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            others.clear();
            for (std::size_t t = 0; t < n; ++t)
                if (t != j) others.push_back(static_cast<std::uint32_t>(t));
            // partial Fisher-Yates: first k entries become the neighbour list
            for (std::size_t t = 0; t < k; ++t) {
                std::size_t pick = t + rng.next_below(others.size() - t);
                std::swap(others[t], others[pick]);
            }
            inst.neighbors[i][j].assign(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(k));
        }
        for (std::size_t j = 0; j < n; ++j) {
            auto& table = inst.tables[i][j];
            table.resize(table_size);
            for (double& v : table) v = rng.next_double();
        }
    }
    return inst;
}

inline Evaluation nk_evaluate(const NKInstance& inst, const Genome& genome) {
    if (genome.size() != inst.n)
        throw std::invalid_argument("nk_evaluate: genome length mismatch");
    Evaluation ev;
    ev.objectives.assign(inst.m, 0.0);
    for (std::size_t i = 0; i < inst.m; ++i) {
        double total = 0.0;
        for (std::size_t j = 0; j < inst.n; ++j) {
            std::size_t index = static_cast<std::size_t>(genome[j]) << inst.k;
            const auto& nb = inst.neighbors[i][j];
            for (std::size_t t = 0; t < inst.k; ++t)
                index |= static_cast<std::size_t>(genome[nb[t]]) << (inst.k - 1 - t);
            total += inst.tables[i][j][index];
        }
        ev.objectives[i] = total / static_cast<double>(inst.n);
    }
    ev.feasible = true;
    return ev;
}

// ---------------------------------------------------------------------------
// Serialization

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line)
        : std::runtime_error("parse error at line " + std::to_string(line) + ": " + message),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline void write_double(std::ostream& os, double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    os.write(buf, res.ptr - buf);
}

// Whitespace-token reader that tracks line numbers for error reporting.
class TokenReader {
public:
    explicit TokenReader(std::istream& is) : is_(is) {}

    std::string next(const char* what) {
        std::string tok;
        char c;
        while (is_.get(c)) {
            if (c == '\n') ++line_;
            if (!std::isspace(static_cast<unsigned char>(c))) {
                tok.push_back(c);
                break;
            }
        }
        while (is_.get(c)) {
            if (std::isspace(static_cast<unsigned char>(c))) {
                if (c == '\n') ++line_;
                break;
            }
            tok.push_back(c);
        }
        if (tok.empty())
            throw ParseError(std::string("expected ") + what + ", found end of input", line_);
        return tok;
    }

    double next_double(const char* what) {
        std::string tok = next(what);
        double v = 0.0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
            throw ParseError(std::string("expected ") + what + ", found '" + tok + "'", line_);
        return v;
    }

    std::uint64_t next_uint(const char* what) {
        std::string tok = next(what);
        std::uint64_t v = 0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
            throw ParseError(std::string("expected ") + what + ", found '" + tok + "'", line_);
        return v;
    }

    // Accepts "key=value" and returns value, or fails with the line number.
    std::uint64_t next_keyed_uint(const std::string& key) {
        std::string tok = next(key.c_str());
        if (tok.rfind(key + "=", 0) != 0)
            throw ParseError("expected '" + key + "=<value>', found '" + tok + "'", line_);
        std::string rest = tok.substr(key.size() + 1);
        std::uint64_t v = 0;
        auto res = std::from_chars(rest.data(), rest.data() + rest.size(), v);
        if (res.ec != std::errc{} || res.ptr != rest.data() + rest.size())
            throw ParseError("bad value in '" + tok + "'", line_);
        return v;
    }

    // True once only whitespace remains. Consumes the skipped whitespace.
    bool at_end() {
        char c;
        while (is_.get(c)) {
            if (!std::isspace(static_cast<unsigned char>(c))) {
                is_.unget();
                return false;
            }
            if (c == '\n') ++line_;
        }
        return true;
    }

    std::size_t line() const { return line_; }

private:
    std::istream& is_;
    std::size_t line_ = 1;
};

} // namespace detail

// Evaluatable problem instance: either family behind one value type.
class Problem {
public:
    explicit Problem(KnapsackInstance inst) : inst_(std::move(inst)) {}
    explicit Problem(NKInstance inst) : inst_(std::move(inst)) {}

    std::size_t genome_length() const {
        return std::visit([](const auto& p) { return p.n; }, inst_);
    }
    std::size_t num_objectives() const {
        return std::visit([](const auto& p) { return p.m; }, inst_);
    }
    bool is_knapsack() const { return std::holds_alternative<KnapsackInstance>(inst_); }
    const char* family() const { return is_knapsack() ? "kp" : "nk"; }

    const KnapsackInstance* knapsack() const { return std::get_if<KnapsackInstance>(&inst_); }
    const NKInstance* nk() const { return std::get_if<NKInstance>(&inst_); }

    Evaluation evaluate(const Genome& genome) const {
        if (const auto* kp = knapsack()) return knapsack_evaluate(*kp, genome);
        return nk_evaluate(*std::get_if<NKInstance>(&inst_), genome);
    }

    // Text format: a header line ("kp n=<n> m=<m>" or "nk n=<n> k=<k> m=<m>")
    // followed by whitespace-separated tables. Knapsack: profits rows, weights
    // rows, capacities. NK: per objective all neighbour lists, then all tables.
    void save(std::ostream& os) const {
        if (const auto* kp = knapsack()) {
            os << "kp n=" << kp->n << " m=" << kp->m << "\n";
            for (const auto& row : kp->profits) write_row(os, row);
            for (const auto& row : kp->weights) write_row(os, row);
            write_row(os, kp->capacities);
        } else {
            const NKInstance& inst = *nk();
            os << "nk n=" << inst.n << " k=" << inst.k << " m=" << inst.m << "\n";
            for (std::size_t i = 0; i < inst.m; ++i) {
                for (std::size_t j = 0; j < inst.n; ++j) {
                    for (std::size_t t = 0; t < inst.k; ++t) {
                        if (t) os << ' ';
                        os << inst.neighbors[i][j][t];
                    }
                    os << "\n";
                }
                for (std::size_t j = 0; j < inst.n; ++j) write_row(os, inst.tables[i][j]);
            }
        }
    }

    static Problem load(std::istream& is) {
        detail::TokenReader in(is);
        std::string family = in.next("problem family");
        if (family == "kp") {
            KnapsackInstance kp;
            kp.n = in.next_keyed_uint("n");
            kp.m = in.next_keyed_uint("m");
            if (kp.n < 1 || kp.m < 1)
                throw ParseError("knapsack header requires n >= 1 and m >= 1", in.line());
            kp.profits.assign(kp.m, std::vector<double>(kp.n));
            kp.weights.assign(kp.m, std::vector<double>(kp.n));
            kp.capacities.assign(kp.m, 0.0);
            for (auto& row : kp.profits)
                for (double& v : row) v = in.next_double("profit");
            for (auto& row : kp.weights)
                for (double& v : row) v = in.next_double("weight");
            for (double& v : kp.capacities) v = in.next_double("capacity");
            for (std::size_t i = 0; i < kp.m; ++i)
                for (std::size_t j = 0; j < kp.n; ++j)
                    if (kp.profits[i][j] <= 0 || kp.weights[i][j] <= 0)
                        throw ParseError("profits and weights must be positive", in.line());
            kp.removal_order = knapsack_removal_order(kp);
            return Problem(std::move(kp));
        }
        if (family == "nk") {
            NKInstance nk;
            nk.n = in.next_keyed_uint("n");
            nk.k = in.next_keyed_uint("k");
            nk.m = in.next_keyed_uint("m");
            if (nk.n < 1 || nk.m < 1 || nk.k > nk.n - 1)
                throw ParseError("nk header requires n >= 1, m >= 1, k <= n-1", in.line());
            const std::size_t table_size = std::size_t{1} << (nk.k + 1);
            nk.neighbors.assign(nk.m, std::vector<std::vector<std::uint32_t>>(nk.n));
            nk.tables.assign(nk.m, std::vector<std::vector<double>>(nk.n));
            for (std::size_t i = 0; i < nk.m; ++i) {
                for (std::size_t j = 0; j < nk.n; ++j) {
                    auto& nb = nk.neighbors[i][j];
                    nb.resize(nk.k);
                    for (auto& v : nb) {
                        v = static_cast<std::uint32_t>(in.next_uint("neighbour index"));
                        if (v >= nk.n || v == j)
                            throw ParseError("neighbour index out of range", in.line());
                    }
                }
                for (std::size_t j = 0; j < nk.n; ++j) {
                    auto& table = nk.tables[i][j];
                    table.resize(table_size);
                    for (double& v : table) {
                        v = in.next_double("table entry");
                        if (v < 0.0 || v > 1.0)
                            throw ParseError("table entry outside [0,1]", in.line());
                    }
                }
            }
            return Problem(std::move(nk));
        }
        throw ParseError("unknown problem family '" + family + "'", in.line());
    }

private:
    static void write_row(std::ostream& os, const std::vector<double>& row) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) os << ' ';
            detail::write_double(os, row[j]);
        }
        os << "\n";
    }

    std::variant<KnapsackInstance, NKInstance> inst_;
};

} // namespace nemo
