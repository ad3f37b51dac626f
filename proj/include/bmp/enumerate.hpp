#pragma once

#include "bmp/epsilon.hpp"
#include "bmp/partition.hpp"

#include <algorithm>
#include <vector>

namespace bmp {

namespace detail {

// Direct construction over admissible step sequences: at every position
// open a pair (+1), close the innermost open pair (-1), or drop a singleton
// (0, only at positive depth). Closing depth-0 opens only when allowed_open
// permits; singletons are always inner by the depth >= 1 restriction.
template <class F>
void walk_step_sequences(int p, bool allow_singletons, bool pairs_outer_only, F&& emit) {
    std::vector<int> steps(static_cast<size_t>(p));
    auto rec = [&](auto&& self, int pos, int depth) -> void {
        if (pos == p) {
            if (depth == 0) emit(steps);
            return;
        }
        int remaining = p - pos;
        if (remaining < depth) return;  // cannot close everything in time
        if (depth >= 1) {
            steps[static_cast<size_t>(pos)] = -1;
            self(self, pos + 1, depth - 1);
            if (allow_singletons && remaining > depth) {
                steps[static_cast<size_t>(pos)] = 0;
                self(self, pos + 1, depth);
            }
        }
        if (remaining > depth && !(pairs_outer_only && depth > 0)) {
            steps[static_cast<size_t>(pos)] = 1;
            self(self, pos + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
}

}  // namespace detail

// all noncrossing partitions of [p] with pair or singleton blocks and no
// outer singleton; lexicographic in the canonical block representation
inline std::vector<partition> enumerate_pair_inner_singleton(int p) {
    if (p < 1) throw std::invalid_argument("enumerate_pair_inner_singleton: p must be positive");
    std::vector<partition> out;
    detail::walk_step_sequences(p, true, false, [&](const std::vector<int>& steps) {
        out.push_back(partition_of_epsilon(epsilon_sequence{steps}));
    });
    std::sort(out.begin(), out.end());
    return out;
}

// the subset whose pair blocks are all outer
inline std::vector<partition> enumerate_outer_pair_inner_singleton(int p) {
    if (p < 1) throw std::invalid_argument("enumerate_outer_pair_inner_singleton: p must be positive");
    std::vector<partition> out;
    detail::walk_step_sequences(p, true, true, [&](const std::vector<int>& steps) {
        out.push_back(partition_of_epsilon(epsilon_sequence{steps}));
    });
    std::sort(out.begin(), out.end());
    return out;
}

// noncrossing pair partitions; Catalan(p/2) of them
inline std::vector<partition> enumerate_pair(int p) {
    if (p < 1 || p % 2 != 0) throw std::invalid_argument("enumerate_pair: p must be even and positive");
    std::vector<partition> out;
    detail::walk_step_sequences(p, false, false, [&](const std::vector<int>& steps) {
        out.push_back(partition_of_epsilon(epsilon_sequence{steps}));
    });
    std::sort(out.begin(), out.end());
    return out;
}

// all admissible step sequences of length p, in DFS order
inline std::vector<epsilon_sequence> enumerate_admissible_epsilon(int p) {
    std::vector<epsilon_sequence> out;
    if (p < 1) return out;
    detail::walk_step_sequences(p, true, false,
                                [&](const std::vector<int>& steps) { out.push_back(epsilon_sequence{steps}); });
    return out;
}

}  // namespace bmp
