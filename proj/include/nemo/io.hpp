// Objective-set dump files ("# m=<m> count=<count>" header, one point per
// line, round-trip double formatting) and a content digest for printing
// file fingerprints.
#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "nemo/core.hpp"
#include "nemo/problems.hpp"

namespace nemo {

struct PointSet {
    std::size_t m = 0;
    std::vector<ObjectiveVector> points;
};

inline void write_points(std::ostream& os, const std::vector<ObjectiveVector>& points,
                         std::size_t m) {
    os << "# m=" << m << " count=" << points.size() << "\n";
    for (const ObjectiveVector& p : points) {
        if (p.size() != m) throw std::invalid_argument("write_points: point dimension mismatch");
        for (std::size_t i = 0; i < m; ++i) {
            if (i) os << ' ';
            detail::write_double(os, p[i]);
        }
        os << "\n";
    }
}

inline PointSet read_points(std::istream& is) {
    detail::TokenReader in(is);
    if (in.next("dump header") != "#")
        throw ParseError("expected '# m=<m> count=<count>' header", in.line());
    PointSet set;
    set.m = in.next_keyed_uint("m");
    const std::uint64_t count = in.next_keyed_uint("count");
    set.points.assign(count, ObjectiveVector(set.m));
    for (auto& p : set.points)
        for (double& v : p) v = in.next_double("coordinate");
    if (!in.at_end()) throw ParseError("trailing data after " + std::to_string(count) + " points",
                                       in.line());
    return set;
}

// FNV-1a, for short content fingerprints in CLI output.
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (char c : data) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

} // namespace nemo
