// Variation and mating-selection operators: bit-flip mutation (with the
// error-threshold rate used by the non-elitist algorithm), uniform crossover
// and k-tournament selection on front rank.
#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "nemo/core.hpp"
#include "nemo/rng.hpp"

namespace nemo {

struct MutationConfig {
    enum class Mode { fixed_rate, threshold_rate };
    Mode mode = Mode::threshold_rate;
    double rate = -1.0;  // fixed_rate mode: exact rate; negative means the 1/n default
    double delta = 0.05; // threshold margin, rate = (1-delta) ln(k) / n
};

// Mutation rate a factor (1-delta) below the error threshold ln(k)/n for
// k-tournament selection over n-bit genomes.
inline double threshold_mutation_rate(std::size_t k, std::size_t n, double delta = 0.05) {
    if (k < 2)
        throw std::invalid_argument("threshold_mutation_rate: tournament size must be >= 2");
    if (n < 1)
        throw std::invalid_argument("threshold_mutation_rate: genome length must be >= 1");
    if (delta <= 0.0 || delta >= 1.0)
        throw std::invalid_argument("threshold_mutation_rate: delta must lie in (0,1)");
    return (1.0 - delta) * std::log(static_cast<double>(k)) / static_cast<double>(n);
}

// Each bit flips independently with probability p. One draw per bit, so the
// consumed stream length does not depend on the outcome.
inline Genome bitflip_mutate(const Genome& genome, double p, RandomSource& rng) {
    if (p < 0.0 || p >= 1.0)
        throw std::invalid_argument("bitflip_mutate: rate must lie in [0,1)");
    Genome out = genome;
    for (auto& bit : out)
        if (rng.next_double() < p) bit ^= 1;
    return out;
}

// Per position, the children swap the parents' bits with probability 1/2;
// together they always hold both parent bits of every position.
inline std::pair<Genome, Genome> uniform_crossover(const Genome& a, const Genome& b,
                                                   RandomSource& rng) {
    if (a.size() != b.size())
        throw std::invalid_argument("uniform_crossover: genome length mismatch");
    Genome c1 = a;
    Genome c2 = b;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (rng.next_u64() & 1) std::swap(c1[i], c2[i]);
    return {std::move(c1), std::move(c2)};
}

// k-tournament on front rank: k members drawn uniformly with replacement,
// the minimal-rank one wins, ties broken uniformly among the tied draws.
inline std::size_t tournament_select(const FrontPartition& ranks, std::size_t pop_size,
                                     std::size_t k, RandomSource& rng) {
    if (pop_size == 0 || ranks.rank.size() != pop_size)
        throw std::invalid_argument("tournament_select: ranks do not match population");
    if (k < 1) throw std::invalid_argument("tournament_select: k must be >= 1");
    std::size_t winner = rng.next_below(pop_size);
    std::uint32_t best_rank = ranks.rank[winner];
    std::size_t tied = 1;
    for (std::size_t draw = 1; draw < k; ++draw) {
        std::size_t candidate = rng.next_below(pop_size);
        std::uint32_t rank = ranks.rank[candidate];
        if (rank < best_rank) {
            winner = candidate;
            best_rank = rank;
            tied = 1;
        } else if (rank == best_rank) {
            ++tied; // reservoir: keep each tied draw with probability 1/tied
            if (rng.next_below(tied) == 0) winner = candidate;
        }
    }
    return winner;
}

// Binary tournament with a strict "better" relation; full ties are decided
// by a coin flip.
template <typename StrictlyBetter>
std::size_t binary_tournament(std::size_t pop_size, RandomSource& rng, StrictlyBetter&& better) {
    std::size_t a = rng.next_below(pop_size);
    std::size_t b = rng.next_below(pop_size);
    if (better(a, b)) return a;
    if (better(b, a)) return b;
    return (rng.next_u64() & 1) ? a : b;
}

inline Genome random_genome(std::size_t n, RandomSource& rng) {
    Genome g(n);
    for (auto& bit : g) bit = static_cast<std::uint8_t>(rng.next_u64() & 1);
    return g;
}

} // namespace nemo
