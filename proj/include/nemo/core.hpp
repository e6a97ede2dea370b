// Core objective-space primitives: Pareto dominance, fast non-dominated
// sorting and the unbounded non-dominated archive. All objectives are
// maximised.
#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace nemo {

using ObjectiveVector = std::vector<double>;
using Genome = std::vector<std::uint8_t>; // one byte per bit, values 0/1

struct Solution {
    Genome genome;
    ObjectiveVector objectives; // empty until evaluated

    bool evaluated() const { return !objectives.empty(); }
};

using Population = std::vector<Solution>;

enum class Dominance {
    first,  // a dominates b
    second, // b dominates a
    none    // incomparable or equal
};

// Pareto dominance (maximisation): a dominates b iff a >= b componentwise
// with at least one strict inequality. Equal vectors do not dominate.
inline Dominance dominance(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dominance: objective dimension mismatch");
    bool a_better = false;
    bool b_better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i])
            a_better = true;
        else if (b[i] > a[i])
            b_better = true;
    }
    if (a_better && !b_better) return Dominance::first;
    if (b_better && !a_better) return Dominance::second;
    return Dominance::none;
}

inline bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    return dominance(a, b) == Dominance::first;
}

// Partition of a population into non-dominated fronts. Ranks are 1-based:
// rank 1 is the non-dominated front.
struct FrontPartition {
    std::vector<std::uint32_t> rank;
    std::vector<std::vector<std::uint32_t>> fronts;
};

// Fast non-dominated sort (domination-count peeling, O(m N^2)). One
// dominance comparison per pair.
inline FrontPartition nondominated_sort(const std::vector<const ObjectiveVector*>& points) {
    const std::size_t n = points.size();
    if (n == 0) throw std::invalid_argument("nondominated_sort: empty population");

    std::vector<std::vector<std::uint32_t>> dominated(n);
    std::vector<std::uint32_t> dominator_count(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            switch (dominance(*points[i], *points[j])) {
            case Dominance::first:
                dominated[i].push_back(static_cast<std::uint32_t>(j));
                ++dominator_count[j];
                break;
            case Dominance::second:
                dominated[j].push_back(static_cast<std::uint32_t>(i));
                ++dominator_count[i];
                break;
            case Dominance::none:
                break;
            }
        }
    }

    FrontPartition part;
    part.rank.assign(n, 0);
    std::vector<std::uint32_t> current;
    for (std::size_t i = 0; i < n; ++i)
        if (dominator_count[i] == 0) current.push_back(static_cast<std::uint32_t>(i));

    std::uint32_t front_index = 1;
    while (!current.empty()) {
        std::vector<std::uint32_t> next;
        for (std::uint32_t i : current) {
            part.rank[i] = front_index;
            for (std::uint32_t j : dominated[i])
                if (--dominator_count[j] == 0) next.push_back(j);
        }
        part.fronts.push_back(std::move(current));
        current = std::move(next);
        ++front_index;
    }
    return part;
}

inline FrontPartition nondominated_sort(const std::vector<ObjectiveVector>& points) {
    std::vector<const ObjectiveVector*> view(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) view[i] = &points[i];
    return nondominated_sort(view);
}

inline FrontPartition nondominated_sort(const Population& pop) {
    std::vector<const ObjectiveVector*> view(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) view[i] = &pop[i].objectives;
    return nondominated_sort(view);
}

// Unbounded archive of mutually non-dominated solutions. Distinct genomes
// with identical objective vectors are all kept; exact (genome, objectives)
// duplicates are stored once.
class Archive {
public:
    struct Entry {
        ObjectiveVector objectives;
        std::vector<Genome> genomes;
    };

    // Offers a solution. Returns false iff the solution is dominated by a
    // member; in that case the archive is unchanged. Otherwise the solution
    // is stored (or is already present), every member it dominates is
    // dropped, and the result is the non-dominated subset of old + s.
    bool insert(const Solution& s) {
        assert(s.evaluated());
        enum : std::uint8_t { keep, drop };
        constexpr std::size_t npos = static_cast<std::size_t>(-1);
        scratch_.assign(entries_.size(), keep);
        std::size_t equal_entry = npos;
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (entries_[i].objectives == s.objectives) {
                equal_entry = i;
                continue;
            }
            switch (dominance(entries_[i].objectives, s.objectives)) {
            case Dominance::first:
                return false; // s is dominated, archive unchanged
            case Dominance::second:
                scratch_[i] = drop;
                break;
            case Dominance::none:
                break;
            }
        }
        std::size_t out = 0;
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (scratch_[i] == drop) {
                member_count_ -= entries_[i].genomes.size();
                continue;
            }
            if (equal_entry == i) equal_entry = out;
            if (out != i) entries_[out] = std::move(entries_[i]);
            ++out;
        }
        entries_.resize(out);
        if (equal_entry != npos) {
            auto& genomes = entries_[equal_entry].genomes;
            for (const Genome& g : genomes)
                if (g == s.genome) return true; // exact duplicate, no-op
            genomes.push_back(s.genome);
            ++member_count_;
        } else {
            entries_.push_back(Entry{s.objectives, {s.genome}});
            ++member_count_;
        }
#ifndef NDEBUG
        verify_invariants();
#endif
        return true;
    }

    std::size_t size() const { return member_count_; }
    bool empty() const { return entries_.empty(); }
    const std::vector<Entry>& entries() const { return entries_; }

    // One objective vector per stored solution (tied genomes repeat theirs).
    std::vector<ObjectiveVector> objective_points() const {
        std::vector<ObjectiveVector> pts;
        pts.reserve(member_count_);
        for (const Entry& e : entries_)
            for (std::size_t g = 0; g < e.genomes.size(); ++g) pts.push_back(e.objectives);
        return pts;
    }

    std::vector<Solution> members() const {
        std::vector<Solution> out;
        out.reserve(member_count_);
        for (const Entry& e : entries_)
            for (const Genome& g : e.genomes) out.push_back(Solution{g, e.objectives});
        return out;
    }

    // Entries must be pairwise non-dominated with pairwise distinct
    // objective vectors; genome lists must hold distinct genomes.
    void verify_invariants() const {
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            for (std::size_t j = i + 1; j < entries_.size(); ++j) {
                if (entries_[i].objectives == entries_[j].objectives)
                    throw std::logic_error("archive: duplicate objective entry");
                if (dominance(entries_[i].objectives, entries_[j].objectives) != Dominance::none)
                    throw std::logic_error("archive: dominated member present");
            }
            const auto& genomes = entries_[i].genomes;
            for (std::size_t a = 0; a < genomes.size(); ++a)
                for (std::size_t b = a + 1; b < genomes.size(); ++b)
                    if (genomes[a] == genomes[b])
                        throw std::logic_error("archive: duplicate genome in entry");
        }
    }

private:
    std::vector<Entry> entries_;
    std::vector<std::uint8_t> scratch_; // per-entry keep/drop flags, reused across inserts
    std::size_t member_count_ = 0;
};

} // namespace nemo
