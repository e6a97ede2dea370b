#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <sstream>

#include "nemo/problems.hpp"
#include "oracles.hpp"

using namespace nemo;

namespace {

Genome random_genome(std::mt19937_64& g, std::size_t n, double density = 0.5) {
    Genome genome(n);
    for (auto& b : genome)
        b = std::uniform_real_distribution<>(0, 1)(g) < density ? 1 : 0;
    return genome;
}

} // namespace

TEST_CASE("knapsack generation draws integer tables in [10,100]", "[problems]") {
    RandomSource rng(3);
    const KnapsackInstance inst = knapsack_generate(40, 2, rng);
    REQUIRE(inst.n == 40);
    REQUIRE(inst.m == 2);
    for (std::size_t i = 0; i < inst.m; ++i) {
        double weight_sum = 0.0;
        for (std::size_t j = 0; j < inst.n; ++j) {
            for (double v : {inst.profits[i][j], inst.weights[i][j]}) {
                CHECK(v >= 10.0);
                CHECK(v <= 100.0);
                CHECK(v == std::floor(v));
            }
            weight_sum += inst.weights[i][j];
        }
        CHECK(inst.capacities[i] == weight_sum / 2.0);
    }
    CHECK_THROWS_AS(knapsack_generate(0, 2, rng), std::invalid_argument);
    CHECK_THROWS_AS(knapsack_generate(5, 1, rng), std::invalid_argument);
}

TEST_CASE("knapsack removal order ascends in best profit-weight ratio", "[problems]") {
    RandomSource rng(4);
    const KnapsackInstance inst = knapsack_generate(30, 3, rng);
    auto best_ratio = [&](std::uint32_t j) {
        double r = 0.0;
        for (std::size_t i = 0; i < inst.m; ++i)
            r = std::max(r, inst.profits[i][j] / inst.weights[i][j]);
        return r;
    };
    REQUIRE(inst.removal_order.size() == inst.n);
    for (std::size_t t = 0; t + 1 < inst.n; ++t) {
        const double a = best_ratio(inst.removal_order[t]);
        const double b = best_ratio(inst.removal_order[t + 1]);
        CHECK(a <= b);
        if (a == b) CHECK(inst.removal_order[t] < inst.removal_order[t + 1]);
    }
}

TEST_CASE("knapsack repair drops worst-ratio items until feasible", "[problems]") {
    KnapsackInstance inst;
    inst.n = 3;
    inst.m = 1;
    inst.profits = {{60, 30, 10}};
    inst.weights = {{10, 10, 10}};
    inst.capacities = {15};
    inst.removal_order = knapsack_removal_order(inst);

    // ratios 6, 3, 1: item 2 goes first, then item 1
    CHECK(knapsack_repair(inst, {1, 1, 1}) == Genome{1, 0, 0});
    CHECK(knapsack_repair(inst, {0, 1, 1}) == Genome{0, 1, 0});
    CHECK(knapsack_repair(inst, {1, 0, 0}) == Genome{1, 0, 0}); // feasible untouched

    const Evaluation full = knapsack_evaluate(inst, {1, 1, 1});
    CHECK(full.objectives == ObjectiveVector{60});
    REQUIRE(full.repaired_genome.has_value());
    CHECK(*full.repaired_genome == Genome{1, 0, 0});

    const Evaluation ok = knapsack_evaluate(inst, {1, 0, 0});
    CHECK_FALSE(ok.repaired_genome.has_value());
    CHECK_THROWS_AS(knapsack_repair(inst, Genome{1, 1}), std::invalid_argument);
}

TEST_CASE("knapsack evaluation matches the literal restatement", "[problems]") {
    std::mt19937_64 g(55);
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        RandomSource rng(seed);
        const KnapsackInstance inst = knapsack_generate(25, 2, rng);
        for (int trial = 0; trial < 100; ++trial) {
            // dense genomes force repair most of the time
            const Genome genome = random_genome(g, inst.n, 0.8);
            const auto [expected_sel, expected_value] = oracle::kp_eval(inst, genome);
            const Evaluation ev = knapsack_evaluate(inst, genome);
            REQUIRE(ev.objectives == expected_value);
            const Genome repaired = ev.repaired_genome ? *ev.repaired_genome : genome;
            REQUIRE(repaired == expected_sel);
        }
    }
}

TEST_CASE("repaired selections are always feasible", "[problems]") {
    RandomSource rng(6);
    const KnapsackInstance inst = knapsack_generate(50, 2, rng);
    std::mt19937_64 g(66);
    for (int trial = 0; trial < 200; ++trial) {
        const Genome repaired = knapsack_repair(inst, random_genome(g, inst.n, 0.9));
        for (std::size_t i = 0; i < inst.m; ++i) {
            double load = 0.0;
            for (std::size_t j = 0; j < inst.n; ++j)
                if (repaired[j]) load += inst.weights[i][j];
            CHECK(load <= inst.capacities[i]);
        }
    }
}

TEST_CASE("nk generation builds valid neighbour lists and tables", "[problems]") {
    RandomSource rng(7);
    const NKInstance inst = nk_generate(30, 4, 2, rng);
    REQUIRE(inst.neighbors.size() == 2);
    REQUIRE(inst.tables.size() == 2);
    for (std::size_t i = 0; i < inst.m; ++i) {
        for (std::size_t j = 0; j < inst.n; ++j) {
            const auto& nb = inst.neighbors[i][j];
            REQUIRE(nb.size() == 4);
            for (std::uint32_t v : nb) {
                CHECK(v < inst.n);
                CHECK(v != j);
            }
            auto sorted = nb;
            std::sort(sorted.begin(), sorted.end());
            CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
            REQUIRE(inst.tables[i][j].size() == 32);
            for (double v : inst.tables[i][j]) {
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
            }
        }
    }
    CHECK_THROWS_AS(nk_generate(5, 5, 2, rng), std::invalid_argument); // k > n-1
    CHECK_THROWS_AS(nk_generate(5, 2, 1, rng), std::invalid_argument);
}

TEST_CASE("nk evaluation reads the own bit as the high table index bit", "[problems]") {
    NKInstance inst;
    inst.n = 2;
    inst.k = 1;
    inst.m = 1;
    inst.neighbors = {{{1}, {0}}};
    inst.tables = {{{0.1, 0.2, 0.3, 0.4}, {0.5, 0.4, 0.3, 0.2}}};
    // genome 10: bit0 index 10b=2 -> 0.3, bit1 index 01b=1 -> 0.4
    CHECK(nk_evaluate(inst, {1, 0}).objectives == ObjectiveVector{0.35});
    // genome 01: bit0 index 01b=1 -> 0.2, bit1 index 10b=2 -> 0.3
    CHECK(nk_evaluate(inst, {0, 1}).objectives == ObjectiveVector{0.25});
    CHECK_THROWS_AS(nk_evaluate(inst, Genome{1}), std::invalid_argument);
}

TEST_CASE("nk evaluation matches the bit-string restatement", "[problems]") {
    std::mt19937_64 g(77);
    for (std::uint64_t seed : {1ULL, 9ULL}) {
        RandomSource rng(seed);
        const NKInstance inst = nk_generate(40, 5, 2, rng);
        for (int trial = 0; trial < 100; ++trial) {
            const Genome genome = random_genome(g, inst.n);
            const Evaluation ev = nk_evaluate(inst, genome);
            REQUIRE(ev.objectives == oracle::nk_eval(inst, genome));
            for (double v : ev.objectives) {
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
            }
        }
    }
}

TEST_CASE("instances round-trip through the text format", "[problems]") {
    std::mt19937_64 g(88);
    for (int which = 0; which < 2; ++which) {
        RandomSource rng(500 + which);
        const Problem original = which == 0 ? Problem(knapsack_generate(20, 2, rng))
                                            : Problem(nk_generate(15, 3, 2, rng));
        std::ostringstream first;
        original.save(first);
        std::istringstream input(first.str());
        const Problem loaded = Problem::load(input);

        CHECK(loaded.genome_length() == original.genome_length());
        CHECK(loaded.num_objectives() == original.num_objectives());
        CHECK(std::string(loaded.family()) == original.family());
        std::ostringstream second;
        loaded.save(second);
        CHECK(second.str() == first.str());
        for (int trial = 0; trial < 50; ++trial) {
            const Genome genome = random_genome(g, original.genome_length());
            CHECK(loaded.evaluate(genome).objectives == original.evaluate(genome).objectives);
        }
    }
}

TEST_CASE("loading rejects malformed instance files", "[problems]") {
    auto load = [](const std::string& text) {
        std::istringstream in(text);
        return Problem::load(in);
    };
    CHECK_THROWS_AS(load("xy n=2 m=2\n"), ParseError);
    CHECK_THROWS_AS(load("kp m=2 n=2\n"), ParseError);        // wrong key order
    CHECK_THROWS_AS(load("kp n=abc m=2\n"), ParseError);      // bad value
    CHECK_THROWS_AS(load("kp n=2 m=2\n1 2\n"), ParseError);   // truncated
    CHECK_THROWS_AS(load("kp n=1 m=2\n5\n-1\n3\n4\n1 1\n"), ParseError); // profit <= 0
    CHECK_THROWS_AS(load("nk n=2 k=1 m=1\n2\n0\n.1 .2 .3 .4\n.1 .2 .3 .4\n"),
                    ParseError); // neighbour out of range
    CHECK_THROWS_AS(load("nk n=2 k=1 m=1\n1\n1\n.1 .2 .3 .4\n.1 .2 .3 .4\n"),
                    ParseError); // neighbour equals the bit itself
    CHECK_THROWS_AS(load("nk n=2 k=1 m=1\n1\n0\n.1 .2 .3 1.5\n.1 .2 .3 .4\n"),
                    ParseError); // table entry outside [0,1]
    CHECK_THROWS_AS(load(""), ParseError);

    try {
        load("kp n=2 m=2\n1 2\n3 4\n5 6\n7 8\nbad 9\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 6);
        CHECK(std::string(e.what()).find("line 6") != std::string::npos);
    }
}

TEST_CASE("loading rejects trailing garbage only when malformed mid-table", "[problems]") {
    // valid instance followed by nothing: fine
    std::istringstream ok("kp n=1 m=2\n5\n6\n3\n4\n1 1\n");
    const Problem p = Problem::load(ok);
    CHECK(p.genome_length() == 1);
    CHECK(p.knapsack() != nullptr);
    CHECK(p.nk() == nullptr);
}
