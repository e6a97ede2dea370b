// Two-sided Wilcoxon rank-sum (Mann-Whitney U) testing of per-run indicator
// samples, plus the per-(problem, algorithm) summary used by the comparison
// report. Small samples use the exact permutation distribution; larger ones a
// tie-corrected normal approximation with continuity correction.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace nemo {

struct RankSumResult {
    double u = 0.0;       // Mann-Whitney U of the first sample
    double p_value = 1.0; // two-sided
    bool significant = false; // at the 95% level
};

enum class RankSumMethod { automatic, exact, normal_approx };

namespace detail {

// Mid-ranks of the combined sample, scaled by 2 so ties stay integral.
inline std::vector<std::int64_t> double_midranks(const std::vector<double>& combined_sorted) {
    const std::size_t n = combined_sorted.size();
    std::vector<std::int64_t> rank2(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && combined_sorted[j + 1] == combined_sorted[i]) ++j;
        // positions i..j share mid-rank (i+1 + j+1)/2; doubled: (i+j+2)
        const std::int64_t r2 = static_cast<std::int64_t>(i + j + 2);
        for (std::size_t t = i; t <= j; ++t) rank2[t] = r2;
        i = j + 1;
    }
    return rank2;
}

} // namespace detail

// Two-sided Mann-Whitney U test. `u` refers to the first sample; the exact
// path measures how extreme the observed U is on either side of its mean
// n1*n2/2 under the permutation distribution.
inline RankSumResult wilcoxon_rank_sum(const std::vector<double>& a,
                                       const std::vector<double>& b,
                                       RankSumMethod method = RankSumMethod::automatic) {
    const std::size_t n1 = a.size();
    const std::size_t n2 = b.size();
    if (n1 < 2 || n2 < 2)
        throw std::invalid_argument("wilcoxon_rank_sum: need at least 2 values per sample");
    for (double v : a)
        if (!std::isfinite(v)) throw std::invalid_argument("wilcoxon_rank_sum: non-finite value");
    for (double v : b)
        if (!std::isfinite(v)) throw std::invalid_argument("wilcoxon_rank_sum: non-finite value");
    const std::size_t n = n1 + n2;

    std::vector<double> combined;
    combined.reserve(n);
    combined.insert(combined.end(), a.begin(), a.end());
    combined.insert(combined.end(), b.begin(), b.end());
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return combined[x] < combined[y]; });
    std::vector<double> sorted(n);
    for (std::size_t i = 0; i < n; ++i) sorted[i] = combined[order[i]];
    const std::vector<std::int64_t> rank2 = detail::double_midranks(sorted);

    // doubled rank sum of sample a
    std::int64_t r2a = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (order[i] < n1) r2a += rank2[i];
    const std::int64_t mu2 = static_cast<std::int64_t>(n1) * static_cast<std::int64_t>(n + 1);

    RankSumResult result;
    result.u = (static_cast<double>(r2a) - static_cast<double>(n1 * (n1 + 1))) / 2.0;

    const bool use_exact = method == RankSumMethod::exact ||
                           (method == RankSumMethod::automatic && n <= 20);
    if (use_exact) {
        // Distribution of the doubled rank sum over all C(n, n1) subsets.
        const std::int64_t max_sum = std::accumulate(rank2.begin(), rank2.end(), std::int64_t{0});
        std::vector<std::vector<std::uint64_t>> ways(
            n1 + 1, std::vector<std::uint64_t>(static_cast<std::size_t>(max_sum) + 1, 0));
        ways[0][0] = 1;
        for (std::size_t item = 0; item < n; ++item) {
            const std::int64_t r = rank2[item];
            for (std::size_t c = std::min(item + 1, n1); c >= 1; --c)
                for (std::int64_t s = max_sum; s >= r; --s)
                    ways[c][static_cast<std::size_t>(s)] +=
                        ways[c - 1][static_cast<std::size_t>(s - r)];
        }
        const std::int64_t dev = std::llabs(r2a - mu2);
        std::uint64_t total = 0;
        std::uint64_t extreme = 0;
        for (std::int64_t s = 0; s <= max_sum; ++s) {
            const std::uint64_t w = ways[n1][static_cast<std::size_t>(s)];
            total += w;
            if (std::llabs(s - mu2) >= dev) extreme += w;
        }
        result.p_value = static_cast<double>(extreme) / static_cast<double>(total);
    } else {
        // Normal approximation with tie correction and continuity correction.
        const double dn1 = static_cast<double>(n1);
        const double dn2 = static_cast<double>(n2);
        const double dn = static_cast<double>(n);
        double tie_term = 0.0;
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
            const double t = static_cast<double>(j - i + 1);
            tie_term += t * t * t - t;
            i = j + 1;
        }
        const double variance =
            dn1 * dn2 / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
        if (variance <= 0.0) {
            result.p_value = 1.0; // all values identical
        } else {
            const double mean = dn1 * dn2 / 2.0;
            double z = std::max(0.0, std::abs(result.u - mean) - 0.5) / std::sqrt(variance);
            result.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
        }
    }
    result.significant = result.p_value < 0.05;
    return result;
}

// ---------------------------------------------------------------------------
// Summary table

struct SampleSet {
    std::string problem;
    std::string algorithm;
    std::vector<double> values;
};

struct SummaryCell {
    std::string problem;
    std::string algorithm;
    std::size_t runs = 0;
    double mean = 0.0;
    double sd = 0.0; // sample standard deviation (n-1)
    double p_vs_baseline = std::numeric_limits<double>::quiet_NaN();
    bool significant_vs_baseline = false;
    bool best = false; // best mean on this problem
};

// Mean and sample sd per cell, significance against the designated baseline
// algorithm, and a best-mean flag per problem (ties all flagged). Cell order
// follows the input.
inline std::vector<SummaryCell> summarize(const std::vector<SampleSet>& cells,
                                          const std::string& baseline_algorithm) {
    std::vector<SummaryCell> out;
    out.reserve(cells.size());
    for (const SampleSet& cell : cells) {
        if (cell.values.empty())
            throw std::invalid_argument("summarize: empty sample for " + cell.problem + "/" +
                                        cell.algorithm);
        SummaryCell s;
        s.problem = cell.problem;
        s.algorithm = cell.algorithm;
        s.runs = cell.values.size();
        s.mean = std::accumulate(cell.values.begin(), cell.values.end(), 0.0) /
                 static_cast<double>(cell.values.size());
        if (cell.values.size() > 1) {
            double ss = 0.0;
            for (double v : cell.values) ss += (v - s.mean) * (v - s.mean);
            s.sd = std::sqrt(ss / static_cast<double>(cell.values.size() - 1));
        }
        out.push_back(std::move(s));
    }
    // significance markers against the baseline on the same problem
    for (SummaryCell& s : out) {
        if (s.algorithm == baseline_algorithm) continue;
        const SampleSet* base = nullptr;
        for (const SampleSet& cell : cells)
            if (cell.problem == s.problem && cell.algorithm == baseline_algorithm) base = &cell;
        if (!base) continue;
        const SampleSet* self = nullptr;
        for (const SampleSet& cell : cells)
            if (cell.problem == s.problem && cell.algorithm == s.algorithm) self = &cell;
        if (self->values.size() >= 2 && base->values.size() >= 2) {
            RankSumResult r = wilcoxon_rank_sum(self->values, base->values);
            s.p_vs_baseline = r.p_value;
            s.significant_vs_baseline = r.significant;
        }
    }
    // best mean per problem
    for (SummaryCell& s : out) {
        double best = s.mean;
        for (const SummaryCell& o : out)
            if (o.problem == s.problem) best = std::max(best, o.mean);
        s.best = s.mean == best;
    }
    return out;
}

} // namespace nemo
