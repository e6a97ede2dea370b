// Deterministic, splittable random streams shared by every stochastic
// component. A stream is identified by a 64-bit seed; child streams are
// derived from (seed, label) so that experiment runs can be seeded
// independently of execution order. Draw sequences are bit-exact across
// platforms and pinned by golden-sequence tests.
#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <stdexcept>

namespace nemo {

namespace detail {

// splitmix64 finalizer, used for label mixing only.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace detail

class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    // Child stream derived from (seed, label). Forking depends on the
    // construction seed only, never on how many draws were consumed.
    RandomSource fork(std::span<const std::uint64_t> label) const {
        std::uint64_t s = seed_;
        for (std::uint64_t v : label) s = detail::mix64(s ^ detail::mix64(v));
        return RandomSource(s);
    }

    RandomSource fork(std::initializer_list<std::uint64_t> label) const {
        return fork(std::span<const std::uint64_t>(label.begin(), label.size()));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53 random bits.
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound). Lemire multiply-shift with rejection,
    // exact and unbiased.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool next_bernoulli(double p) { return next_double() < p; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace nemo
