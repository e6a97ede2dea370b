// The four optimizers behind one run interface: the non-elitist NE-MOEA
// (offspring replace the population unconditionally) and the elitist
// baselines NSGA-II, SMS-EMOA and NSGA-III. One run is single-threaded;
// all randomness flows through the RandomSource passed in.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "nemo/core.hpp"
#include "nemo/indicators.hpp"
#include "nemo/operators.hpp"
#include "nemo/problems.hpp"
#include "nemo/rng.hpp"

namespace nemo {

enum class AlgorithmId { ne_moea, nsga2, sms_emoa, nsga3 };

inline const char* algorithm_name(AlgorithmId id) {
    switch (id) {
    case AlgorithmId::ne_moea: return "NE-MOEA";
    case AlgorithmId::nsga2: return "NSGA-II";
    case AlgorithmId::sms_emoa: return "SMS-EMOA";
    case AlgorithmId::nsga3: return "NSGA-III";
    }
    return "?";
}

inline std::optional<AlgorithmId> algorithm_from_name(std::string_view name) {
    if (name == "NE-MOEA") return AlgorithmId::ne_moea;
    if (name == "NSGA-II") return AlgorithmId::nsga2;
    if (name == "SMS-EMOA") return AlgorithmId::sms_emoa;
    if (name == "NSGA-III") return AlgorithmId::nsga3;
    return std::nullopt;
}

struct AlgorithmConfig {
    AlgorithmId id = AlgorithmId::ne_moea;
    std::size_t population_size = 200; // N
    std::size_t generations = 500;     // G
    std::size_t tournament_k = 8;      // NE-MOEA mating selection pressure
    double crossover_rate = 0.9;       // elitist baselines
    MutationConfig mutation;
    std::size_t reference_directions = 0; // NSGA-III; 0 = largest lattice <= N
    ObjectiveVector reference_point;      // hypervolume reference; empty = origin
};

// Defaults per algorithm: k=8 tournament with threshold-rate mutation for
// NE-MOEA; crossover 0.9 with 1/n bit-flip mutation for the baselines.
inline AlgorithmConfig default_config(AlgorithmId id, std::size_t population_size,
                                      std::size_t generations) {
    AlgorithmConfig c;
    c.id = id;
    c.population_size = population_size;
    c.generations = generations;
    if (id == AlgorithmId::ne_moea) {
        c.mutation.mode = MutationConfig::Mode::threshold_rate;
    } else {
        c.mutation.mode = MutationConfig::Mode::fixed_rate;
        c.mutation.rate = -1.0;
    }
    return c;
}

inline void validate(const AlgorithmConfig& config) {
    if (config.population_size < 2)
        throw std::invalid_argument("config: population size must be >= 2");
    if (config.generations < 1) throw std::invalid_argument("config: generations must be >= 1");
    if (config.crossover_rate < 0.0 || config.crossover_rate > 1.0)
        throw std::invalid_argument("config: crossover rate must lie in [0,1]");
    if (config.id == AlgorithmId::ne_moea && config.tournament_k < 1)
        throw std::invalid_argument("config: tournament size must be >= 1");
    if (config.mutation.mode == MutationConfig::Mode::fixed_rate && config.mutation.rate >= 1.0)
        throw std::invalid_argument("config: mutation rate must be < 1");
}

// Per-bit mutation rate for a genome of n bits: the threshold rate for
// threshold mode, the configured rate otherwise (negative = 1/n default).
inline double resolved_mutation_rate(const AlgorithmConfig& config, std::size_t n) {
    if (n < 1) throw std::invalid_argument("resolved_mutation_rate: genome length must be >= 1");
    if (config.mutation.mode == MutationConfig::Mode::threshold_rate)
        return threshold_mutation_rate(config.tournament_k, n, config.mutation.delta);
    if (config.mutation.rate < 0.0) return 1.0 / static_cast<double>(n);
    return config.mutation.rate;
}

// ---------------------------------------------------------------------------
// Shared survival building blocks

// Crowding distance per front member: boundary members (per-objective
// extremes in sorted order) get infinity, interior members sum the
// neighbour gap normalized by the front's objective range. Objectives with
// zero range contribute nothing.
inline std::vector<double> crowding_distances(const std::vector<const ObjectiveVector*>& front) {
    const std::size_t n = front.size();
    std::vector<double> d(n, 0.0);
    if (n == 0) return d;
    const std::size_t m = front[0]->size();
    std::vector<std::uint32_t> idx(n);
    for (std::size_t obj = 0; obj < m; ++obj) {
        std::iota(idx.begin(), idx.end(), 0u);
        std::stable_sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
            return (*front[a])[obj] < (*front[b])[obj];
        });
        d[idx[0]] = std::numeric_limits<double>::infinity();
        d[idx[n - 1]] = std::numeric_limits<double>::infinity();
        const double range = (*front[idx[n - 1]])[obj] - (*front[idx[0]])[obj];
        if (range == 0.0) continue;
        for (std::size_t i = 1; i + 1 < n; ++i)
            d[idx[i]] += ((*front[idx[i + 1]])[obj] - (*front[idx[i - 1]])[obj]) / range;
    }
    return d;
}

inline std::vector<double> crowding_distances(const Population& pop,
                                              const std::vector<std::uint32_t>& front) {
    std::vector<const ObjectiveVector*> view;
    view.reserve(front.size());
    for (std::uint32_t i : front) view.push_back(&pop[i].objectives);
    return crowding_distances(view);
}

namespace detail {

// Non-dominated ranks for m = 2 in O(N log N): identical partition to
// nondominated_sort. After sorting by (obj1 desc, obj2 desc), a point is
// dominated exactly by the earlier points with obj2 >= its own (equal
// vectors excepted), and the per-front maxima of obj2 are non-increasing
// in rank, so the deepest dominating front is found by binary search.
inline FrontPartition fronts_2d(const std::vector<const ObjectiveVector*>& points) {
    const std::size_t n = points.size();
    if (n == 0) throw std::invalid_argument("fronts_2d: empty population");
    struct P {
        double x, y;
        std::uint32_t i;
    };
    std::vector<P> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (points[i]->size() != 2)
            throw std::invalid_argument("fronts_2d: points must be 2-dimensional");
        pts[i] = {(*points[i])[0], (*points[i])[1], static_cast<std::uint32_t>(i)};
    }
    std::sort(pts.begin(), pts.end(), [](const P& a, const P& b) {
        if (a.x != b.x) return a.x > b.x;
        if (a.y != b.y) return a.y > b.y;
        return a.i < b.i;
    });

    FrontPartition part;
    part.rank.assign(n, 0);
    std::vector<double> front_max_y; // per front, max obj2 among processed members
    std::uint32_t max_rank = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i; // group of identical objective vectors
        while (j + 1 < n && pts[j + 1].x == pts[i].x && pts[j + 1].y == pts[i].y) ++j;
        const double y = pts[i].y;
        // number of fronts whose max obj2 >= y (prefix of the non-increasing array)
        std::size_t lo = 0, hi = front_max_y.size();
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (front_max_y[mid] >= y)
                lo = mid + 1;
            else
                hi = mid;
        }
        const std::uint32_t rank = static_cast<std::uint32_t>(lo) + 1;
        if (lo == front_max_y.size())
            front_max_y.push_back(y);
        else
            front_max_y[lo] = std::max(front_max_y[lo], y);
        for (std::size_t t = i; t <= j; ++t) part.rank[pts[t].i] = rank;
        max_rank = std::max(max_rank, rank);
        i = j + 1;
    }
    part.fronts.assign(max_rank, {});
    for (std::size_t t = 0; t < n; ++t)
        part.fronts[part.rank[t] - 1].push_back(static_cast<std::uint32_t>(t));
    return part;
}

inline FrontPartition fronts_2d(const Population& pop) {
    std::vector<const ObjectiveVector*> view(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) view[i] = &pop[i].objectives;
    return fronts_2d(view);
}

} // namespace detail

// Exclusive 2-D hypervolume contribution of each member of a mutually
// non-dominated front wrt ref: the rectangle between its objective-space
// neighbours (clipped at ref). Duplicate objective vectors and points not
// strictly above ref contribute 0. Output order matches the input.
inline std::vector<double> hv2d_contributions(const std::vector<const ObjectiveVector*>& front,
                                              const ObjectiveVector& ref) {
    if (ref.size() != 2)
        throw std::invalid_argument("hv2d_contributions: reference point must be 2-dimensional");
    const std::size_t n = front.size();
    std::vector<double> out(n, 0.0);
    if (n == 0) return out;
    struct P {
        double x, y;
        std::uint32_t i;
    };
    std::vector<P> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (front[i]->size() != 2)
            throw std::invalid_argument("hv2d_contributions: points must be 2-dimensional");
        pts[i] = {(*front[i])[0], (*front[i])[1], static_cast<std::uint32_t>(i)};
    }
    std::sort(pts.begin(), pts.end(), [](const P& a, const P& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y > b.y;
        return a.i < b.i;
    });
    for (std::size_t i = 0; i < n; ++i) {
        const bool dup_prev = i > 0 && pts[i].x == pts[i - 1].x && pts[i].y == pts[i - 1].y;
        const bool dup_next = i + 1 < n && pts[i].x == pts[i + 1].x && pts[i].y == pts[i + 1].y;
        if (dup_prev || dup_next) continue;
        const double left = std::max(i > 0 ? pts[i - 1].x : ref[0], ref[0]);
        const double below = std::max(i + 1 < n ? pts[i + 1].y : ref[1], ref[1]);
        const double w = pts[i].x - left;
        const double h = pts[i].y - below;
        if (w > 0.0 && h > 0.0) out[pts[i].i] = w * h;
    }
    return out;
}

namespace detail {

// Member of the worst front removed by the steady-state survival step:
// minimal exclusive contribution, ties by smaller first objective, then
// smaller population index.
inline std::size_t sms_removal_index(const Population& uni,
                                     const std::vector<std::uint32_t>& worst,
                                     const ObjectiveVector& ref) {
    std::vector<const ObjectiveVector*> view;
    view.reserve(worst.size());
    for (std::uint32_t i : worst) view.push_back(&uni[i].objectives);
    const std::vector<double> c = hv2d_contributions(view, ref);
    std::size_t best = 0;
    for (std::size_t i = 1; i < worst.size(); ++i) {
        const double xi = uni[worst[i]].objectives[0];
        const double xb = uni[worst[best]].objectives[0];
        if (c[i] < c[best] ||
            (c[i] == c[best] && (xi < xb || (xi == xb && worst[i] < worst[best]))))
            best = i;
    }
    return worst[best];
}

} // namespace detail

// ---------------------------------------------------------------------------
// Survival operators

// NSGA-II survival on the parents+offspring union: fill by ascending front
// rank; the last partially fitting front is truncated by descending
// crowding distance (stable on ties). Output size = |parents|.
inline Population nsga2_update(const Population& parents, const Population& offspring) {
    if (parents.empty() || parents.size() != offspring.size())
        throw std::invalid_argument("nsga2_update: need equally sized non-empty populations");
    const std::size_t n = parents.size();
    Population uni;
    uni.reserve(2 * n);
    uni.insert(uni.end(), parents.begin(), parents.end());
    uni.insert(uni.end(), offspring.begin(), offspring.end());
    const FrontPartition part = nondominated_sort(uni);

    Population next;
    next.reserve(n);
    for (const auto& front : part.fronts) {
        if (next.size() + front.size() <= n) {
            for (std::uint32_t i : front) next.push_back(uni[i]);
            if (next.size() == n) break;
            continue;
        }
        const std::vector<double> d = crowding_distances(uni, front);
        std::vector<std::uint32_t> order(front.size());
        std::iota(order.begin(), order.end(), 0u);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::uint32_t a, std::uint32_t b) { return d[a] > d[b]; });
        const std::size_t take = n - next.size();
        for (std::size_t i = 0; i < take; ++i) next.push_back(uni[front[order[i]]]);
        break;
    }
    return next;
}

// Steady-state survival: the offspring joins the population, the union is
// front-sorted, and the minimal-contribution member of the worst front is
// removed. Bi-objective only.
inline Population sms_emoa_update(const Population& pop, const Solution& offspring,
                                  const ObjectiveVector& ref) {
    if (pop.empty()) throw std::invalid_argument("sms_emoa_update: empty population");
    if (ref.size() != 2 || offspring.objectives.size() != 2)
        throw std::invalid_argument("sms_emoa_update: only bi-objective populations are supported");
    Population uni = pop;
    uni.push_back(offspring);
    const FrontPartition part = nondominated_sort(uni);
    const std::size_t removed = detail::sms_removal_index(uni, part.fronts.back(), ref);
    uni.erase(uni.begin() + static_cast<std::ptrdiff_t>(removed));
    return uni;
}

namespace detail {

// One steady-state step with the partition carried across steps. The
// removed member comes from the worst front and dominates nobody, so the
// survivors' partition is the union partition minus that member.
inline void sms_fast_step(Population& pop, FrontPartition& part, Solution offspring,
                          const ObjectiveVector& ref) {
    pop.push_back(std::move(offspring));
    part = fronts_2d(pop);
    const std::size_t removed = sms_removal_index(pop, part.fronts.back(), ref);
    pop.erase(pop.begin() + static_cast<std::ptrdiff_t>(removed));
    part.rank.erase(part.rank.begin() + static_cast<std::ptrdiff_t>(removed));
    std::uint32_t max_rank = 0;
    for (std::uint32_t r : part.rank) max_rank = std::max(max_rank, r);
    part.fronts.assign(max_rank, {});
    for (std::size_t i = 0; i < part.rank.size(); ++i)
        part.fronts[part.rank[i] - 1].push_back(static_cast<std::uint32_t>(i));
}

} // namespace detail

// ---------------------------------------------------------------------------
// NSGA-III reference directions and survival

// C(divisions + m - 1, m - 1), the simplex-lattice direction count;
// saturates on overflow.
inline std::size_t simplex_lattice_size(std::size_t m, std::size_t divisions) {
    if (m < 2) throw std::invalid_argument("simplex_lattice_size: need m >= 2");
    if (divisions < 1) throw std::invalid_argument("simplex_lattice_size: need divisions >= 1");
    unsigned long long result = 1;
    for (std::size_t i = 1; i < m; ++i) {
        const unsigned long long num = divisions + i;
        if (result > std::numeric_limits<unsigned long long>::max() / num)
            return std::numeric_limits<std::size_t>::max();
        result = result * num / i;
    }
    return static_cast<std::size_t>(result);
}

// Largest division count whose lattice does not exceed target; at least 1.
inline std::size_t nsga3_default_divisions(std::size_t m, std::size_t target) {
    std::size_t h = 1;
    while (simplex_lattice_size(m, h + 1) <= target) ++h;
    return h;
}

// All simplex-lattice directions with components i/divisions summing to 1,
// in lexicographically ascending order.
inline std::vector<ObjectiveVector> das_dennis_directions(std::size_t m, std::size_t divisions) {
    if (m < 2) throw std::invalid_argument("das_dennis_directions: need m >= 2");
    if (divisions < 1) throw std::invalid_argument("das_dennis_directions: need divisions >= 1");
    std::vector<ObjectiveVector> dirs;
    dirs.reserve(simplex_lattice_size(m, divisions));
    ObjectiveVector cur(m);
    auto rec = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
        if (pos + 1 == m) {
            cur[pos] = static_cast<double>(left) / static_cast<double>(divisions);
            dirs.push_back(cur);
            return;
        }
        for (std::size_t i = 0; i <= left; ++i) {
            cur[pos] = static_cast<double>(i) / static_cast<double>(divisions);
            self(self, pos + 1, left - i);
        }
    };
    rec(rec, 0, divisions);
    return dirs;
}

namespace detail {

// Intercepts of the hyperplane through the extreme points, as divisors for
// normalization. Falls back to the per-objective maxima of the translated
// coordinates when the system is singular or yields a degenerate intercept.
inline std::vector<double> nsga3_intercepts(const std::vector<ObjectiveVector>& translated,
                                            const std::vector<std::size_t>& extreme) {
    const std::size_t m = extreme.size();
    std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) a[r][c] = translated[extreme[r]][c];
        a[r][m] = 1.0;
    }
    bool ok = true;
    for (std::size_t col = 0; col < m && ok; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < m; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < 1e-12) {
            ok = false;
            break;
        }
        std::swap(a[col], a[pivot]);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c <= m; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<double> intercepts(m, 0.0);
    if (ok) {
        for (std::size_t r = 0; r < m; ++r) {
            const double b = a[r][m] / a[r][r]; // 1/intercept
            if (!(b > 1e-12)) {
                ok = false;
                break;
            }
            intercepts[r] = 1.0 / b;
        }
    }
    if (!ok) {
        for (std::size_t c = 0; c < m; ++c) {
            double hi = 0.0;
            for (const ObjectiveVector& t : translated) hi = std::max(hi, t[c]);
            intercepts[c] = hi > 0.0 ? hi : 1.0;
        }
    }
    return intercepts;
}

} // namespace detail

// NSGA-III survival on the parents+offspring union: front fill as NSGA-II,
// the split front resolved by reference-direction niching. Normalization:
// objectives are translated against the ideal point (componentwise best,
// i.e. max), extreme points per axis minimize the weighted achievement
// scalarization, intercepts come from the hyperplane through them.
// Association is by perpendicular distance to the direction rays; the
// least-occupied niche is filled first, random ties decided by rng.
inline Population nsga3_update(const Population& parents, const Population& offspring,
                               const std::vector<ObjectiveVector>& directions,
                               RandomSource& rng) {
    if (parents.empty() || parents.size() != offspring.size())
        throw std::invalid_argument("nsga3_update: need equally sized non-empty populations");
    if (directions.empty()) throw std::invalid_argument("nsga3_update: no reference directions");
    const std::size_t n = parents.size();
    const std::size_t m = parents.front().objectives.size();
    for (const ObjectiveVector& d : directions)
        if (d.size() != m)
            throw std::invalid_argument("nsga3_update: direction dimension mismatch");

    Population uni;
    uni.reserve(2 * n);
    uni.insert(uni.end(), parents.begin(), parents.end());
    uni.insert(uni.end(), offspring.begin(), offspring.end());
    const FrontPartition part = nondominated_sort(uni);

    // fronts that fit entirely
    std::size_t split = 0; // index of the partially fitting front
    std::size_t count = 0;
    while (split < part.fronts.size() && count + part.fronts[split].size() <= n)
        count += part.fronts[split++].size();
    Population next;
    next.reserve(n);
    for (std::size_t f = 0; f < split; ++f)
        for (std::uint32_t i : part.fronts[f]) next.push_back(uni[i]);
    if (count == n) return next;

    // members under consideration: full fronts plus the split front
    std::vector<std::uint32_t> pool;
    for (std::size_t f = 0; f <= split; ++f)
        pool.insert(pool.end(), part.fronts[f].begin(), part.fronts[f].end());

    // translate into minimization form against the ideal point
    std::vector<double> ideal(m, -std::numeric_limits<double>::infinity());
    for (std::uint32_t i : pool)
        for (std::size_t c = 0; c < m; ++c) ideal[c] = std::max(ideal[c], uni[i].objectives[c]);
    std::vector<ObjectiveVector> translated(pool.size(), ObjectiveVector(m));
    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t c = 0; c < m; ++c)
            translated[i][c] = ideal[c] - uni[pool[i]].objectives[c];

    // extreme point per axis: minimal achievement scalarization with weight
    // 1 on the axis and 1e-6 elsewhere; ties keep the first member
    std::vector<std::size_t> extreme(m, 0);
    for (std::size_t axis = 0; axis < m; ++axis) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < pool.size(); ++i) {
            double asf = 0.0;
            for (std::size_t c = 0; c < m; ++c)
                asf = std::max(asf, translated[i][c] / (c == axis ? 1.0 : 1e-6));
            if (asf < best) {
                best = asf;
                extreme[axis] = i;
            }
        }
    }
    const std::vector<double> intercepts = detail::nsga3_intercepts(translated, extreme);

    // associate each member to the nearest direction ray
    std::vector<std::size_t> niche(pool.size(), 0);
    std::vector<double> dist(pool.size(), 0.0);
    ObjectiveVector x(m);
    for (std::size_t i = 0; i < pool.size(); ++i) {
        for (std::size_t c = 0; c < m; ++c) x[c] = translated[i][c] / intercepts[c];
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t d = 0; d < directions.size(); ++d) {
            const ObjectiveVector& w = directions[d];
            double dot = 0.0, w2 = 0.0;
            for (std::size_t c = 0; c < m; ++c) {
                dot += x[c] * w[c];
                w2 += w[c] * w[c];
            }
            const double proj = dot / w2;
            double d2 = 0.0;
            for (std::size_t c = 0; c < m; ++c) {
                const double diff = x[c] - proj * w[c];
                d2 += diff * diff;
            }
            if (d2 < best) {
                best = d2;
                niche[i] = d;
            }
        }
        dist[i] = std::sqrt(best);
    }

    // niche occupation from the already selected fronts; candidates per
    // niche from the split front, in front order
    std::vector<std::size_t> rho(directions.size(), 0);
    std::vector<std::vector<std::size_t>> pending(directions.size());
    const std::size_t split_begin = count; // pool index where the split front starts
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (i < split_begin)
            ++rho[niche[i]];
        else
            pending[niche[i]].push_back(i);
    }

    std::vector<std::uint8_t> active(directions.size(), 1);
    std::vector<std::size_t> tied;
    std::size_t need = n - count;
    while (need > 0) {
        std::size_t min_rho = std::numeric_limits<std::size_t>::max();
        for (std::size_t d = 0; d < directions.size(); ++d)
            if (active[d]) min_rho = std::min(min_rho, rho[d]);
        tied.clear();
        for (std::size_t d = 0; d < directions.size(); ++d)
            if (active[d] && rho[d] == min_rho) tied.push_back(d);
        const std::size_t pick =
            tied.size() > 1 ? tied[rng.next_below(tied.size())] : tied.front();
        auto& cands = pending[pick];
        if (cands.empty()) {
            active[pick] = 0; // niche exhausted for this selection
            continue;
        }
        std::size_t chosen_pos;
        if (rho[pick] == 0) {
            chosen_pos = 0; // closest member, ties keep the first
            for (std::size_t i = 1; i < cands.size(); ++i)
                if (dist[cands[i]] < dist[cands[chosen_pos]]) chosen_pos = i;
        } else {
            chosen_pos = cands.size() > 1 ? rng.next_below(cands.size()) : 0;
        }
        next.push_back(uni[pool[cands[chosen_pos]]]);
        cands.erase(cands.begin() + static_cast<std::ptrdiff_t>(chosen_pos));
        ++rho[pick];
        --need;
    }
    return next;
}

// ---------------------------------------------------------------------------
// Reproduction and run loops

// N offspring from binary tournaments under the caller's strict comparator
// (full ties fall to a coin flip), uniform crossover with probability pc,
// then bit-flip mutation. With odd N the last pair contributes one child.
// Offspring are returned unevaluated.
template <typename StrictlyBetter>
Population elitist_reproduce(const Population& pop, const AlgorithmConfig& config,
                             RandomSource& rng, StrictlyBetter&& better) {
    const std::size_t n = pop.size();
    if (n == 0) throw std::invalid_argument("elitist_reproduce: empty population");
    const double rate = resolved_mutation_rate(config, pop.front().genome.size());
    Population offspring;
    offspring.reserve(n);
    while (offspring.size() < n) {
        const std::size_t p1 = binary_tournament(n, rng, better);
        const std::size_t p2 = binary_tournament(n, rng, better);
        Genome c1, c2;
        if (rng.next_double() < config.crossover_rate) {
            auto children = uniform_crossover(pop[p1].genome, pop[p2].genome, rng);
            c1 = std::move(children.first);
            c2 = std::move(children.second);
        } else {
            c1 = pop[p1].genome;
            c2 = pop[p2].genome;
        }
        offspring.push_back(Solution{bitflip_mutate(c1, rate, rng), {}});
        if (offspring.size() < n) offspring.push_back(Solution{bitflip_mutate(c2, rate, rng), {}});
    }
    return offspring;
}

struct RunState {
    Population population;
    std::size_t generation = 0;
    Archive archive;
    std::uint64_t evaluations = 0;
};

namespace detail {

inline void evaluate_into(const Problem& problem, Solution& s, RunState& state) {
    Evaluation ev = problem.evaluate(s.genome);
    s.objectives = std::move(ev.objectives);
    ++state.evaluations;
    state.archive.insert(s);
}

} // namespace detail

// One NE-MOEA generation: rank the population, produce N offspring by
// k-tournament on rank plus threshold-rate bit-flip mutation (no
// crossover), and replace the population with the offspring
// unconditionally. Every offspring is offered to the archive.
inline void ne_moea_step(RunState& state, const Problem& problem, const AlgorithmConfig& config,
                         RandomSource& rng) {
    const std::size_t n = state.population.size();
    const FrontPartition part = nondominated_sort(state.population);
    const double rate = resolved_mutation_rate(config, problem.genome_length());
    Population next;
    next.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t parent = tournament_select(part, n, config.tournament_k, rng);
        Solution child{bitflip_mutate(state.population[parent].genome, rate, rng), {}};
        detail::evaluate_into(problem, child, state);
        next.push_back(std::move(child));
    }
    state.population = std::move(next);
    ++state.generation;
}

struct RunResult {
    Archive archive;
    Population population; // final generation
    double hypervolume = std::numeric_limits<double>::quiet_NaN(); // archive, m=2 only
    std::uint64_t evaluations = 0;
};

// Full optimization run: N uniform-random genomes (evaluated and archived),
// then G generations of the configured algorithm. Evaluation count is
// always N*(G+1). The reported hypervolume is the exact bi-objective
// hypervolume of the archive wrt the configured reference point (NaN for
// m != 2).
inline RunResult run(const Problem& problem, const AlgorithmConfig& config, RandomSource& rng) {
    validate(config);
    const std::size_t n = config.population_size;
    const std::size_t m = problem.num_objectives();
    if (config.id == AlgorithmId::sms_emoa && m != 2)
        throw std::invalid_argument("run: SMS-EMOA supports bi-objective problems only");
    ObjectiveVector ref = config.reference_point;
    if (ref.empty()) ref.assign(m, 0.0);
    if (ref.size() != m) throw std::invalid_argument("run: reference point dimension mismatch");

    RunState state;
    state.population.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Solution s{random_genome(problem.genome_length(), rng), {}};
        detail::evaluate_into(problem, s, state);
        state.population.push_back(std::move(s));
    }

    switch (config.id) {
    case AlgorithmId::ne_moea: {
        for (std::size_t g = 0; g < config.generations; ++g)
            ne_moea_step(state, problem, config, rng);
        break;
    }
    case AlgorithmId::nsga2: {
        for (std::size_t g = 0; g < config.generations; ++g) {
            const FrontPartition part = nondominated_sort(state.population);
            std::vector<double> crowd(n, 0.0);
            for (const auto& front : part.fronts) {
                const std::vector<double> d = crowding_distances(state.population, front);
                for (std::size_t i = 0; i < front.size(); ++i) crowd[front[i]] = d[i];
            }
            auto better = [&](std::size_t a, std::size_t b) {
                if (part.rank[a] != part.rank[b]) return part.rank[a] < part.rank[b];
                return crowd[a] > crowd[b];
            };
            Population off = elitist_reproduce(state.population, config, rng, better);
            for (Solution& s : off) detail::evaluate_into(problem, s, state);
            state.population = nsga2_update(state.population, off);
            ++state.generation;
        }
        break;
    }
    case AlgorithmId::nsga3: {
        const std::size_t target =
            config.reference_directions > 0 ? config.reference_directions : n;
        const std::vector<ObjectiveVector> directions =
            das_dennis_directions(m, nsga3_default_divisions(m, target));
        for (std::size_t g = 0; g < config.generations; ++g) {
            const FrontPartition part = nondominated_sort(state.population);
            auto better = [&](std::size_t a, std::size_t b) {
                return part.rank[a] < part.rank[b]; // full rank ties fall to the coin flip
            };
            Population off = elitist_reproduce(state.population, config, rng, better);
            for (Solution& s : off) detail::evaluate_into(problem, s, state);
            state.population = nsga3_update(state.population, off, directions, rng);
            ++state.generation;
        }
        break;
    }
    case AlgorithmId::sms_emoa: {
        const double rate = resolved_mutation_rate(config, problem.genome_length());
        FrontPartition part = detail::fronts_2d(state.population);
        for (std::size_t g = 0; g < config.generations; ++g) {
            for (std::size_t step = 0; step < n; ++step) {
                // mating comparator: rank, then exclusive contribution
                // within the member's front (computed lazily per front)
                std::vector<std::vector<double>> cache(part.fronts.size());
                auto contribution = [&](std::size_t idx) -> double {
                    const std::uint32_t f = part.rank[idx] - 1;
                    auto& c = cache[f];
                    if (c.empty()) {
                        std::vector<const ObjectiveVector*> view;
                        view.reserve(part.fronts[f].size());
                        for (std::uint32_t i : part.fronts[f])
                            view.push_back(&state.population[i].objectives);
                        c = hv2d_contributions(view, ref);
                    }
                    const auto& members = part.fronts[f];
                    const auto pos = std::find(members.begin(), members.end(),
                                               static_cast<std::uint32_t>(idx));
                    return c[static_cast<std::size_t>(pos - members.begin())];
                };
                auto better = [&](std::size_t a, std::size_t b) {
                    if (part.rank[a] != part.rank[b]) return part.rank[a] < part.rank[b];
                    return contribution(a) > contribution(b);
                };
                const std::size_t p1 = binary_tournament(n, rng, better);
                const std::size_t p2 = binary_tournament(n, rng, better);
                Genome child_genome;
                if (rng.next_double() < config.crossover_rate) {
                    auto children = uniform_crossover(state.population[p1].genome,
                                                      state.population[p2].genome, rng);
                    child_genome = std::move(children.first);
                } else {
                    child_genome = state.population[p1].genome;
                }
                Solution child{bitflip_mutate(child_genome, rate, rng), {}};
                detail::evaluate_into(problem, child, state);
                detail::sms_fast_step(state.population, part, std::move(child), ref);
            }
            ++state.generation;
        }
        break;
    }
    }

    RunResult result;
    result.archive = std::move(state.archive);
    result.population = std::move(state.population);
    result.evaluations = state.evaluations;
    if (m == 2) result.hypervolume = hypervolume_2d(result.archive.objective_points(), ref);
    return result;
}

} // namespace nemo
