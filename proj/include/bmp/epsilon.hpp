#pragma once

#include "bmp/partition.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bmp {

// Sequence over {-1, 0, +1}; entries[0] is position 1, the first operator
// applied (the rightmost factor of the corresponding operator word).
struct epsilon_sequence {
    std::vector<int> entries;

    bool operator==(const epsilon_sequence&) const = default;
};

// Admissibility: +1 at position 1, -1 at position p, total sum zero,
// all prefix sums nonnegative, and every 0 placed at positive depth
// (a zero at depth 0 would encode an outer singleton).
inline std::optional<std::string> admissibility_violation(const epsilon_sequence& eps) {
    const auto& e = eps.entries;
    if (e.empty()) return "empty sequence";
    for (size_t i = 0; i < e.size(); ++i)
        if (e[i] != -1 && e[i] != 0 && e[i] != 1)
            return "entry at position " + std::to_string(i + 1) + " is not in {-1,0,+1}";
    if (e.front() != 1) return "first entry must be +1";
    if (e.back() != -1) return "last entry must be -1";
    int depth = 0;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0 && depth < 1)
            return "prefix sum not positive at singleton position " + std::to_string(i + 1);
        depth += e[i];
        if (depth < 0) return "prefix sum negative at position " + std::to_string(i + 1);
    }
    if (depth != 0) return "total sum is " + std::to_string(depth) + ", expected 0";
    return std::nullopt;
}

inline bool is_admissible(const epsilon_sequence& eps) {
    return !admissibility_violation(eps).has_value();
}

// +1 opens a pair closed by the first later position where the running sum
// returns to its opening level; 0 becomes a singleton.
inline partition partition_of_epsilon(const epsilon_sequence& eps) {
    if (auto why = admissibility_violation(eps))
        throw std::invalid_argument("partition_of_epsilon: not admissible: " + *why);
    std::vector<std::vector<int>> blocks;
    std::vector<int> open;
    for (size_t i = 0; i < eps.entries.size(); ++i) {
        int pos = static_cast<int>(i) + 1;
        switch (eps.entries[i]) {
            case 1: open.push_back(pos); break;
            case 0: blocks.push_back({pos}); break;
            default:
                blocks.push_back({open.back(), pos});
                open.pop_back();
        }
    }
    return make_partition(static_cast<int>(eps.entries.size()), std::move(blocks));
}

// +1 at pair minima, -1 at pair maxima, 0 at singletons
inline epsilon_sequence epsilon_of_partition(const partition& pi) {
    if (!is_pair_or_singleton(pi) || !is_noncrossing(pi))
        throw std::invalid_argument("epsilon_of_partition: need a noncrossing pair-or-singleton partition");
    if (has_outer_singleton(pi))
        throw std::invalid_argument(
            "epsilon_of_partition: partition has an outer singleton; "
            "its sequence would fail prefix-sum positivity at that position");
    epsilon_sequence eps;
    eps.entries.assign(static_cast<size_t>(pi.p), 0);
    for (const auto& b : pi.blocks) {
        if (b.size() == 2) {
            eps.entries[static_cast<size_t>(b[0]) - 1] = 1;
            eps.entries[static_cast<size_t>(b[1]) - 1] = -1;
        }
    }
    return eps;
}

// text form over "+", "-", "0", position 1 first, e.g. "+0-"
inline std::string to_text(const epsilon_sequence& eps) {
    std::string s;
    for (int e : eps.entries) s += e == 1 ? '+' : (e == -1 ? '-' : '0');
    return s;
}

inline epsilon_sequence parse_epsilon(const std::string& text) {
    epsilon_sequence eps;
    for (char c : text) {
        if (c == '+') eps.entries.push_back(1);
        else if (c == '-') eps.entries.push_back(-1);
        else if (c == '0') eps.entries.push_back(0);
        else throw std::invalid_argument("parse_epsilon: bad character in '" + text + "'");
    }
    return eps;
}

}  // namespace bmp
