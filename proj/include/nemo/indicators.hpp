// Quality indicators: exact bi-objective hypervolume (strip sweep), a
// Monte-Carlo hypervolume estimator usable as an independent cross-check,
// and positive-scale normalization of objective sets.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "nemo/core.hpp"
#include "nemo/rng.hpp"

namespace nemo {

// Exact area dominated by `points` above the reference point (maximisation,
// m = 2). Points not strictly above the reference in both objectives
// contribute nothing and are skipped.
inline double hypervolume_2d(const std::vector<ObjectiveVector>& points,
                             const ObjectiveVector& ref) {
    if (ref.size() != 2)
        throw std::invalid_argument("hypervolume_2d: reference point must be 2-dimensional");
    std::vector<const ObjectiveVector*> kept;
    kept.reserve(points.size());
    for (const auto& p : points) {
        if (p.size() != 2)
            throw std::invalid_argument("hypervolume_2d: points must be 2-dimensional");
        if (p[0] > ref[0] && p[1] > ref[1]) kept.push_back(&p);
    }
    // Sweep in descending first objective; each point adds the strip between
    // its height and the best height seen so far.
    std::sort(kept.begin(), kept.end(), [](const ObjectiveVector* a, const ObjectiveVector* b) {
        if ((*a)[0] != (*b)[0]) return (*a)[0] > (*b)[0];
        return (*a)[1] < (*b)[1];
    });
    double volume = 0.0;
    double top = ref[1];
    for (const ObjectiveVector* p : kept) {
        if ((*p)[1] > top) {
            volume += ((*p)[0] - ref[0]) * ((*p)[1] - top);
            top = (*p)[1];
        }
    }
    return volume;
}

struct McEstimate {
    double value = 0.0;
    double standard_error = 0.0;
};

// Monte-Carlo estimate of the dominated volume for any m >= 2. Samples the
// bounding box [ref, componentwise max] and counts points falling inside the
// union of dominated boxes. Binomial standard error.
inline McEstimate hypervolume_mc(const std::vector<ObjectiveVector>& points,
                                 const ObjectiveVector& ref, std::size_t samples,
                                 RandomSource& rng) {
    const std::size_t m = ref.size();
    if (m < 2) throw std::invalid_argument("hypervolume_mc: need m >= 2");
    std::vector<const ObjectiveVector*> kept;
    for (const auto& p : points) {
        if (p.size() != m)
            throw std::invalid_argument("hypervolume_mc: point dimension mismatch");
        bool above = true;
        for (std::size_t i = 0; i < m; ++i)
            if (p[i] <= ref[i]) { above = false; break; }
        if (above) kept.push_back(&p);
    }
    if (kept.empty() || samples == 0) return {};

    ObjectiveVector upper(m);
    for (std::size_t i = 0; i < m; ++i) {
        double hi = ref[i];
        for (const ObjectiveVector* p : kept) hi = std::max(hi, (*p)[i]);
        upper[i] = hi;
    }
    double box = 1.0;
    for (std::size_t i = 0; i < m; ++i) box *= upper[i] - ref[i];
    if (box <= 0.0) return {};

    std::size_t hits = 0;
    ObjectiveVector sample(m);
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t i = 0; i < m; ++i)
            sample[i] = ref[i] + rng.next_double() * (upper[i] - ref[i]);
        for (const ObjectiveVector* p : kept) {
            bool covered = true;
            for (std::size_t i = 0; i < m; ++i)
                if (sample[i] > (*p)[i]) { covered = false; break; }
            if (covered) {
                ++hits;
                break;
            }
        }
    }
    const double fraction = static_cast<double>(hits) / static_cast<double>(samples);
    McEstimate est;
    est.value = fraction * box;
    est.standard_error =
        box * std::sqrt(fraction * (1.0 - fraction) / static_cast<double>(samples));
    return est;
}

// Divides every coordinate by its per-objective scale. Positive scales
// preserve all dominance relations.
inline std::vector<ObjectiveVector> normalize(const std::vector<ObjectiveVector>& points,
                                              const std::vector<double>& scales) {
    for (double s : scales)
        if (!(s > 0.0)) throw std::invalid_argument("normalize: scales must be positive");
    std::vector<ObjectiveVector> out = points;
    for (auto& p : out) {
        if (p.size() != scales.size())
            throw std::invalid_argument("normalize: point dimension mismatch");
        for (std::size_t i = 0; i < p.size(); ++i) p[i] /= scales[i];
    }
    return out;
}

} // namespace nemo
