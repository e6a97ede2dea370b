#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <vector>

#include "nemo/core.hpp"
#include "oracles.hpp"

using nemo::Archive;
using nemo::Dominance;
using nemo::dominance;
using nemo::FrontPartition;
using nemo::Genome;
using nemo::nondominated_sort;
using nemo::ObjectiveVector;
using nemo::Solution;

namespace {

// Tie-rich random populations: integer coordinates from a small range.
std::vector<ObjectiveVector> random_points(std::mt19937_64& g, std::size_t count, std::size_t m,
                                           int levels) {
    std::vector<ObjectiveVector> pts(count, ObjectiveVector(m));
    for (auto& p : pts)
        for (auto& v : p) v = static_cast<double>(g() % static_cast<std::uint64_t>(levels));
    return pts;
}

} // namespace

TEST_CASE("dominance follows the componentwise definition", "[core]") {
    CHECK(dominance({2, 3}, {1, 3}) == Dominance::first);
    CHECK(dominance({1, 3}, {2, 3}) == Dominance::second);
    CHECK(dominance({2, 3}, {2, 3}) == Dominance::none);
    CHECK(dominance({2, 1}, {1, 2}) == Dominance::none);
    CHECK(dominance({5, 5, 5}, {5, 5, 4}) == Dominance::first);
    CHECK(dominance({1, 9, 1}, {2, 1, 2}) == Dominance::none);
    CHECK(nemo::dominates({2, 2}, {1, 1}));
    CHECK_FALSE(nemo::dominates({2, 2}, {2, 2}));
    CHECK_THROWS_AS(dominance({1, 2}, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("dominance is a strict partial order", "[core]") {
    std::mt19937_64 g(11);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t m = 2 + trial % 2;
        const auto pts = random_points(g, 3, m, 4);
        const ObjectiveVector &a = pts[0], &b = pts[1], &c = pts[2];
        // irreflexive
        CHECK(dominance(a, a) == Dominance::none);
        // antisymmetric
        if (dominance(a, b) == Dominance::first) CHECK(dominance(b, a) == Dominance::second);
        // transitive
        if (nemo::dominates(a, b) && nemo::dominates(b, c)) CHECK(nemo::dominates(a, c));
    }
}

TEST_CASE("front ranks match the peeling reference", "[core]") {
    std::mt19937_64 g(22);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t count = 1 + g() % 40;
        const std::size_t m = 2 + g() % 2;
        const int levels = trial % 2 == 0 ? 5 : 1000;
        const auto pts = random_points(g, count, m, levels);
        const FrontPartition part = nondominated_sort(pts);
        const auto expected = oracle::peel_ranks(pts);
        REQUIRE(part.rank == expected);
    }
}

TEST_CASE("front lists partition the population consistently with ranks", "[core]") {
    std::mt19937_64 g(23);
    const auto pts = random_points(g, 60, 2, 6);
    const FrontPartition part = nondominated_sort(pts);
    std::size_t total = 0;
    for (std::size_t f = 0; f < part.fronts.size(); ++f) {
        REQUIRE_FALSE(part.fronts[f].empty());
        for (std::uint32_t i : part.fronts[f]) CHECK(part.rank[i] == f + 1);
        total += part.fronts[f].size();
    }
    CHECK(total == pts.size());
}

TEST_CASE("sorting handles degenerate populations", "[core]") {
    // all identical: one front
    const std::vector<ObjectiveVector> equal(7, ObjectiveVector{3, 3});
    CHECK(nondominated_sort(equal).fronts.size() == 1);

    // strictly ordered chain: one front per point
    std::vector<ObjectiveVector> chain;
    for (int i = 0; i < 6; ++i) chain.push_back({double(i), double(i)});
    const FrontPartition part = nondominated_sort(chain);
    CHECK(part.fronts.size() == 6);
    CHECK(part.rank[5] == 1); // best point first front
    CHECK(part.rank[0] == 6);

    CHECK_THROWS_AS(nondominated_sort(std::vector<ObjectiveVector>{}), std::invalid_argument);
}

TEST_CASE("archive keeps exactly the non-dominated inserts", "[core]") {
    Archive archive;
    auto sol = [](std::initializer_list<double> objs, std::initializer_list<int> bits) {
        Genome g;
        for (int b : bits) g.push_back(static_cast<std::uint8_t>(b));
        return Solution{g, ObjectiveVector(objs)};
    };
    CHECK(archive.insert(sol({1, 5}, {0, 0})));
    CHECK(archive.insert(sol({5, 1}, {0, 1})));
    CHECK(archive.size() == 2);

    // dominated insert: rejected, archive unchanged
    CHECK_FALSE(archive.insert(sol({0, 4}, {1, 0})));
    CHECK(archive.size() == 2);

    // dominating insert: replaces both
    CHECK(archive.insert(sol({6, 6}, {1, 1})));
    CHECK(archive.size() == 1);
    CHECK(archive.entries().front().objectives == ObjectiveVector{6, 6});
}

TEST_CASE("archive keeps distinct genomes with tied objectives", "[core]") {
    Archive archive;
    CHECK(archive.insert(Solution{{0, 1}, {2, 2}}));
    CHECK(archive.insert(Solution{{1, 0}, {2, 2}}));
    CHECK(archive.size() == 2);
    CHECK(archive.entries().size() == 1);
    CHECK(archive.entries().front().genomes.size() == 2);

    // exact duplicate is a no-op but still counts as accepted
    CHECK(archive.insert(Solution{{0, 1}, {2, 2}}));
    CHECK(archive.size() == 2);
    CHECK(archive.objective_points() == std::vector<ObjectiveVector>{{2, 2}, {2, 2}});
}

TEST_CASE("archive accepts exactly when the insert is not dominated", "[core]") {
    std::mt19937_64 g(33);
    for (int trial = 0; trial < 500; ++trial) {
        Archive archive;
        std::vector<ObjectiveVector> seen;
        for (int i = 0; i < 15; ++i) {
            const auto p = random_points(g, 1, 2, 6).front();
            bool dominated = false;
            for (const Archive::Entry& e : archive.entries())
                if (nemo::dominates(e.objectives, p)) dominated = true;
            const bool accepted = archive.insert(Solution{{std::uint8_t(i)}, p});
            REQUIRE(accepted == !dominated);
            seen.push_back(p);
        }
        // final entries = non-dominated subset of everything offered
        const auto ranks = oracle::peel_ranks(seen);
        std::vector<ObjectiveVector> expected;
        for (std::size_t i = 0; i < seen.size(); ++i) {
            if (ranks[i] != 1) continue;
            if (std::find(expected.begin(), expected.end(), seen[i]) == expected.end())
                expected.push_back(seen[i]);
        }
        REQUIRE(archive.entries().size() == expected.size());
        for (const Archive::Entry& e : archive.entries())
            CHECK(std::find(expected.begin(), expected.end(), e.objectives) != expected.end());
        archive.verify_invariants();
    }
}

TEST_CASE("archive contents are independent of insertion order", "[core]") {
    std::mt19937_64 g(44);
    for (int trial = 0; trial < 400; ++trial) {
        std::vector<Solution> sols;
        const std::size_t count = 2 + g() % 12;
        for (std::size_t i = 0; i < count; ++i) {
            const auto p = random_points(g, 1, 2, 5).front();
            sols.push_back(Solution{{std::uint8_t(g() % 4)}, p});
        }
        Archive first;
        for (const Solution& s : sols) first.insert(s);
        std::shuffle(sols.begin(), sols.end(), g);
        Archive second;
        for (const Solution& s : sols) second.insert(s);

        auto canon = [](const Archive& a) {
            std::vector<std::pair<ObjectiveVector, std::vector<Genome>>> out;
            for (const Archive::Entry& e : a.entries()) {
                auto genomes = e.genomes;
                std::sort(genomes.begin(), genomes.end());
                out.emplace_back(e.objectives, std::move(genomes));
            }
            std::sort(out.begin(), out.end());
            return out;
        };
        REQUIRE(canon(first) == canon(second));
    }
}
