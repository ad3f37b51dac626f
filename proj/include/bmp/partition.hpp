#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace bmp {

// Set partition of {1,...,p}. Blocks are strictly increasing integer lists,
// ordered by their minimal elements. Immutable by convention after make_partition.
struct partition {
    int p = 0;
    std::vector<std::vector<int>> blocks;

    bool operator==(const partition&) const = default;
    bool operator<(const partition& o) const {
        return std::tie(p, blocks) < std::tie(o.p, o.blocks);
    }
};

inline partition make_partition(int p, std::vector<std::vector<int>> blocks) {
    if (p < 0) throw std::invalid_argument("partition: negative ground set");
    std::vector<char> seen(static_cast<size_t>(p) + 1, 0);
    for (auto& b : blocks) {
        if (b.empty()) throw std::invalid_argument("partition: empty block");
        for (size_t i = 0; i < b.size(); ++i) {
            int x = b[i];
            if (x < 1 || x > p) throw std::invalid_argument("partition: element out of range");
            if (seen[static_cast<size_t>(x)]) throw std::invalid_argument("partition: duplicate element");
            seen[static_cast<size_t>(x)] = 1;
            if (i > 0 && b[i - 1] >= x)
                throw std::invalid_argument("partition: block not strictly increasing");
        }
    }
    for (int x = 1; x <= p; ++x)
        if (!seen[static_cast<size_t>(x)]) throw std::invalid_argument("partition: does not cover ground set");
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return partition{p, std::move(blocks)};
}

inline int block_count(const partition& pi) { return static_cast<int>(pi.blocks.size()); }

inline int singleton_count(const partition& pi) {
    int s = 0;
    for (const auto& b : pi.blocks) s += b.size() == 1;
    return s;
}

inline bool is_pair_or_singleton(const partition& pi) {
    return std::all_of(pi.blocks.begin(), pi.blocks.end(),
                       [](const auto& b) { return b.size() <= 2; });
}

inline bool is_pair_partition(const partition& pi) {
    return std::all_of(pi.blocks.begin(), pi.blocks.end(),
                       [](const auto& b) { return b.size() == 2; });
}

// Two blocks cross iff their merged element sequence alternates ownership
// at least three times (pattern u1 < v1 < u2 < v2).
inline bool blocks_cross(const std::vector<int>& a, const std::vector<int>& b) {
    size_t i = 0, j = 0;
    int switches = 0, last = -1;
    while (i < a.size() || j < b.size()) {
        int owner;
        if (j >= b.size() || (i < a.size() && a[i] < b[j])) {
            owner = 0;
            ++i;
        } else {
            owner = 1;
            ++j;
        }
        if (last >= 0 && owner != last) ++switches;
        last = owner;
    }
    return switches >= 3;
}

inline bool is_noncrossing(const partition& pi) {
    for (size_t i = 0; i < pi.blocks.size(); ++i)
        for (size_t j = i + 1; j < pi.blocks.size(); ++j)
            if (blocks_cross(pi.blocks[i], pi.blocks[j])) return false;
    return true;
}

// strict containment in the nesting order: block j lies inside block i
inline bool block_inside(const std::vector<int>& outer, const std::vector<int>& inner) {
    return outer.front() < inner.front() && inner.back() < outer.back();
}

// Nesting structure of a noncrossing partition: inner/outer status, the
// direct predecessor (forest parent) and the list of direct successors.
struct nesting_report {
    struct entry {
        bool inner = false;
        int direct_predecessor = -1;          // block index, -1 when outer
        std::vector<int> direct_successors;   // block indices
    };
    std::vector<entry> blocks;
    std::vector<int> roots;  // outer blocks

    int subtree_block_count(int j) const {
        int n = 1;
        for (int c : blocks[static_cast<size_t>(j)].direct_successors) n += subtree_block_count(c);
        return n;
    }
};

inline nesting_report structure(const partition& pi) {
    if (!is_noncrossing(pi)) throw std::invalid_argument("structure: partition has a crossing");
    const int k = block_count(pi);
    nesting_report rep;
    rep.blocks.resize(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) {
        // enclosing blocks form a chain, so the innermost one (max of the
        // minima) is the unique direct predecessor
        int parent = -1;
        for (int i = 0; i < k; ++i) {
            if (i == j) continue;
            if (block_inside(pi.blocks[static_cast<size_t>(i)], pi.blocks[static_cast<size_t>(j)])) {
                if (parent < 0 || pi.blocks[static_cast<size_t>(i)].front() >
                                      pi.blocks[static_cast<size_t>(parent)].front())
                    parent = i;
            }
        }
        rep.blocks[static_cast<size_t>(j)].inner = parent >= 0;
        rep.blocks[static_cast<size_t>(j)].direct_predecessor = parent;
        if (parent >= 0)
            rep.blocks[static_cast<size_t>(parent)].direct_successors.push_back(j);
        else
            rep.roots.push_back(j);
    }
    return rep;
}

inline bool has_outer_singleton(const partition& pi) {
    auto rep = structure(pi);
    for (int j = 0; j < block_count(pi); ++j)
        if (pi.blocks[static_cast<size_t>(j)].size() == 1 && !rep.blocks[static_cast<size_t>(j)].inner)
            return true;
    return false;
}

// reduced partition: drop all singletons and relabel the surviving
// positions to 1..(p - s) preserving relative order
inline partition reduce(const partition& pi) {
    std::vector<int> kept;
    for (const auto& b : pi.blocks)
        if (b.size() >= 2) kept.insert(kept.end(), b.begin(), b.end());
    std::sort(kept.begin(), kept.end());
    std::vector<int> relabel(static_cast<size_t>(pi.p) + 1, 0);
    for (size_t i = 0; i < kept.size(); ++i) relabel[static_cast<size_t>(kept[i])] = static_cast<int>(i) + 1;
    std::vector<std::vector<int>> blocks;
    for (const auto& b : pi.blocks) {
        if (b.size() < 2) continue;
        std::vector<int> nb;
        nb.reserve(b.size());
        for (int x : b) nb.push_back(relabel[static_cast<size_t>(x)]);
        blocks.push_back(std::move(nb));
    }
    return make_partition(static_cast<int>(kept.size()), std::move(blocks));
}

// Adapted partition of a sequence: positions with equal entries form one
// block; the label sequence (one label per block, blocks by minima) is
// returned alongside and is uniquely determined.
template <class Label>
struct adapted_result {
    partition pi;
    std::vector<Label> labels;
};

template <class Label>
adapted_result<Label> adapted_partition(const std::vector<Label>& seq) {
    if (seq.empty()) throw std::invalid_argument("adapted_partition: empty sequence");
    const int p = static_cast<int>(seq.size());
    std::vector<std::vector<int>> blocks;
    std::vector<Label> labels;
    for (int pos = 1; pos <= p; ++pos) {
        const Label& v = seq[static_cast<size_t>(pos - 1)];
        bool found = false;
        for (size_t b = 0; b < blocks.size(); ++b) {
            if (labels[b] == v) {
                blocks[b].push_back(pos);
                found = true;
                break;
            }
        }
        if (!found) {
            blocks.push_back({pos});
            labels.push_back(v);
        }
    }
    return {make_partition(p, std::move(blocks)), std::move(labels)};
}

// canonical text form "{{1,4},{2},{3}}"
inline std::string to_text(const partition& pi) {
    std::string s = "{";
    for (size_t i = 0; i < pi.blocks.size(); ++i) {
        if (i) s += ",";
        s += "{";
        for (size_t j = 0; j < pi.blocks[i].size(); ++j) {
            if (j) s += ",";
            s += std::to_string(pi.blocks[i][j]);
        }
        s += "}";
    }
    return s + "}";
}

inline partition parse_partition(const std::string& text) {
    std::vector<std::vector<int>> blocks;
    size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    auto expect = [&](char c) {
        skip_ws();
        if (i >= text.size() || text[i] != c)
            throw std::invalid_argument("parse_partition: expected '" + std::string(1, c) + "' in '" + text + "'");
        ++i;
    };
    expect('{');
    skip_ws();
    int maxel = 0;
    while (i < text.size() && text[i] != '}') {
        expect('{');
        std::vector<int> b;
        for (;;) {
            skip_ws();
            size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (start == i) throw std::invalid_argument("parse_partition: expected integer in '" + text + "'");
            b.push_back(std::stoi(text.substr(start, i - start)));
            maxel = std::max(maxel, b.back());
            skip_ws();
            if (i < text.size() && text[i] == ',') { ++i; continue; }
            break;
        }
        expect('}');
        blocks.push_back(std::move(b));
        skip_ws();
        if (i < text.size() && text[i] == ',') { ++i; skip_ws(); }
    }
    expect('}');
    return make_partition(maxel, std::move(blocks));
}

}  // namespace bmp
