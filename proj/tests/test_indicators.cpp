#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "nemo/indicators.hpp"
#include "oracles.hpp"

using namespace nemo;

namespace {

std::vector<ObjectiveVector> random_set(std::mt19937_64& g, std::size_t count, bool ties) {
    std::vector<ObjectiveVector> pts(count, ObjectiveVector(2));
    for (auto& p : pts)
        for (auto& v : p)
            v = ties ? static_cast<double>(g() % 8) : std::uniform_real_distribution<>(0, 10)(g);
    return pts;
}

} // namespace

TEST_CASE("bi-objective hypervolume matches worked examples", "[indicators]") {
    const ObjectiveVector origin{0, 0};
    CHECK(hypervolume_2d({{1, 1}}, origin) == 1.0);
    CHECK(hypervolume_2d({{0.5, 1.0}, {1.0, 0.5}}, origin) == 0.75);
    CHECK(hypervolume_2d({}, origin) == 0.0);
    CHECK(hypervolume_2d({{3, 4}}, {1, 1}) == 6.0);
    // dominated and duplicate points add nothing
    CHECK(hypervolume_2d({{2, 2}, {1, 1}, {2, 2}}, origin) == 4.0);
    // points at or below the reference are ignored
    CHECK(hypervolume_2d({{0, 5}, {5, 0}, {-1, -1}}, origin) == 0.0);
    CHECK_THROWS_AS(hypervolume_2d({{1, 1, 1}}, origin), std::invalid_argument);
    CHECK_THROWS_AS(hypervolume_2d({{1, 1}}, ObjectiveVector{0}), std::invalid_argument);
}

TEST_CASE("bi-objective hypervolume matches the grid reference", "[indicators]") {
    std::mt19937_64 g(12);
    for (int trial = 0; trial < 500; ++trial) {
        const auto pts = random_set(g, 1 + g() % 20, trial % 2 == 0);
        const ObjectiveVector ref{static_cast<double>(g() % 3), static_cast<double>(g() % 3)};
        const double fast = hypervolume_2d(pts, ref);
        const double slow = oracle::grid_hv2d(pts, ref);
        REQUIRE_THAT(fast, Catch::Matchers::WithinRel(slow, 1e-12) ||
                               Catch::Matchers::WithinAbs(slow, 1e-12));
    }
}

TEST_CASE("monte carlo estimates agree with the exact area", "[indicators]") {
    std::mt19937_64 g(13);
    RandomSource rng(14);
    for (int trial = 0; trial < 20; ++trial) {
        const auto pts = random_set(g, 1 + g() % 10, false);
        const ObjectiveVector ref{0, 0};
        const double exact = hypervolume_2d(pts, ref);
        const McEstimate est = hypervolume_mc(pts, ref, 200000, rng);
        if (est.standard_error == 0.0)
            CHECK(est.value == exact);
        else
            CHECK(std::abs(est.value - exact) < 4.0 * est.standard_error);
    }
}

TEST_CASE("monte carlo handles empty and degenerate inputs", "[indicators]") {
    RandomSource rng(15);
    const McEstimate empty = hypervolume_mc({}, {0, 0}, 1000, rng);
    CHECK(empty.value == 0.0);
    CHECK(empty.standard_error == 0.0);
    // nothing above the reference point
    CHECK(hypervolume_mc({{0, 0}, {-1, 3}}, {0, 0}, 1000, rng).value == 0.0);
    // single point: every sample hits, zero variance
    const McEstimate full = hypervolume_mc({{2, 3}}, {0, 0}, 1000, rng);
    CHECK(full.value == 6.0);
    CHECK(full.standard_error == 0.0);
    CHECK_THROWS_AS(hypervolume_mc({{1, 1}}, ObjectiveVector{0}, 10, rng),
                    std::invalid_argument);
}

TEST_CASE("monte carlo works for three objectives", "[indicators]") {
    RandomSource rng(16);
    // unit cube corner: exact volume 1
    const McEstimate est = hypervolume_mc({{1, 1, 1}}, {0, 0, 0}, 1000, rng);
    CHECK(est.value == 1.0);
    // two boxes with known union volume 1*1*1 + coverage of (2,1,0.5):
    // union = 1 + 2*1*0.5 - 1*1*0.5 = 1.5
    const McEstimate two = hypervolume_mc({{1, 1, 1}, {2, 1, 0.5}}, {0, 0, 0}, 400000, rng);
    CHECK(std::abs(two.value - 1.5) < 4.0 * two.standard_error);
}

TEST_CASE("normalization divides by positive per-objective scales", "[indicators]") {
    const std::vector<ObjectiveVector> pts{{2, 9}, {4, 3}};
    const auto out = normalize(pts, {2, 3});
    REQUIRE(out == std::vector<ObjectiveVector>{{1, 3}, {2, 1}});
    CHECK_THROWS_AS(normalize(pts, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(normalize(pts, {-1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(normalize(pts, {1, 1, 1}), std::invalid_argument);
}

TEST_CASE("normalization preserves dominance relations", "[indicators]") {
    std::mt19937_64 g(17);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto pts = random_set(g, 2, trial % 2 == 0);
        const std::vector<double> scales{0.5 + (g() % 10) * 0.25, 0.5 + (g() % 10) * 0.25};
        const auto out = normalize(pts, scales);
        CHECK(dominance(pts[0], pts[1]) == dominance(out[0], out[1]));
    }
}
