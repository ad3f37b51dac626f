#pragma once

#include "bmp/cone.hpp"
#include "bmp/partition.hpp"
#include "bmp/rational.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace bmp {

enum class label_mode { nonstrict, strict };

namespace detail {

// nesting forest restricted to the pair blocks; singletons are leaves whose
// labels are forced, so they never contribute a factor
struct pair_forest {
    std::vector<int> block_of;  // node -> block index in the partition
    std::vector<int> parent;    // node -> node index, -1 at roots
};

inline pair_forest make_pair_forest(const partition& pi, const nesting_report& rep) {
    pair_forest f;
    std::vector<int> node_of_block(static_cast<size_t>(block_count(pi)), -1);
    for (int j = 0; j < block_count(pi); ++j) {
        if (pi.blocks[static_cast<size_t>(j)].size() != 2) continue;
        node_of_block[static_cast<size_t>(j)] = static_cast<int>(f.block_of.size());
        f.block_of.push_back(j);
    }
    for (size_t n = 0; n < f.block_of.size(); ++n) {
        int pred = rep.blocks[static_cast<size_t>(f.block_of[n])].direct_predecessor;
        // the direct predecessor of a pair block is itself a pair block
        f.parent.push_back(pred < 0 ? -1 : node_of_block[static_cast<size_t>(pred)]);
    }
    return f;
}

inline std::vector<std::vector<int>> forest_children(const pair_forest& f) {
    std::vector<std::vector<int>> ch(f.block_of.size());
    for (size_t n = 0; n < f.parent.size(); ++n)
        if (f.parent[n] >= 0) ch[static_cast<size_t>(f.parent[n])].push_back(static_cast<int>(n));
    return ch;
}

inline void require_labelable(const partition& pi) {
    if (!is_noncrossing(pi))
        throw std::invalid_argument("count_labellings: partition has a crossing");
    if (!is_pair_or_singleton(pi))
        throw std::invalid_argument("count_labellings: blocks must have size 1 or 2");
    if (has_outer_singleton(pi))
        throw std::invalid_argument("count_labellings: partition has an outer singleton");
}

// ---- generic route: memoized backtracking over the interval lattice ------
// With the (node, parent label) memo the cost is bounded by
// (#pair blocks) x |[0,rho]|^2; unmemoized it is the product of interval
// sizes along root paths.
inline bigint count_backtracking(const pair_forest& f, const cone& k,
                                 const std::vector<cone_point>& pts, label_mode mode) {
    auto children = forest_children(f);
    const int npts = static_cast<int>(pts.size());
    std::map<std::pair<int, int>, bigint> memo;  // (node, parent point index)
    auto rec = [&](auto&& self, int node, int parent_idx) -> bigint {
        auto key = std::make_pair(node, parent_idx);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        bigint total(0);
        for (int q = 0; q < npts; ++q) {
            if (parent_idx >= 0) {
                const auto& par = pts[static_cast<size_t>(parent_idx)];
                if (!k.leq(par, pts[static_cast<size_t>(q)])) continue;
                if (mode == label_mode::strict && pts[static_cast<size_t>(q)] == par) continue;
            }
            bigint prod(1);
            for (int c : children[static_cast<size_t>(node)]) {
                prod *= self(self, c, q);
                if (prod == 0) break;
            }
            total += prod;
        }
        memo.emplace(key, total);
        return total;
    };
    bigint out(1);
    for (size_t n = 0; n < f.block_of.size(); ++n)
        if (f.parent[n] < 0) out *= rec(rec, static_cast<int>(n), -1);
    return out;
}

// ---- orthant route: per-axis factorization ------------------------------
// The coordinatewise order makes the nonstrict count a product over axes of
// one-dimensional forest counts; strict counts follow by inclusion-exclusion
// over which parent-child constraints degenerate to equality (contracting
// those edges).
template <class Num>
Num count_axis_1d(const std::vector<int>& parent, long long m) {
    std::vector<std::vector<int>> ch(parent.size());
    std::vector<int> roots;
    for (size_t n = 0; n < parent.size(); ++n) {
        if (parent[n] >= 0) ch[static_cast<size_t>(parent[n])].push_back(static_cast<int>(n));
        else roots.push_back(static_cast<int>(n));
    }
    auto node_values = [&](auto&& self, int node) -> std::vector<Num> {
        std::vector<Num> g(static_cast<size_t>(m), Num(1));
        for (int c : ch[static_cast<size_t>(node)]) {
            auto gc = self(self, c);
            Num suffix(0);
            for (long long v = m - 1; v >= 0; --v) {
                suffix += gc[static_cast<size_t>(v)];
                gc[static_cast<size_t>(v)] = suffix;  // now suffix sums
            }
            for (long long v = 0; v < m; ++v) g[static_cast<size_t>(v)] *= gc[static_cast<size_t>(v)];
        }
        return g;
    };
    Num total(1);
    for (int r : roots) {
        auto g = node_values(node_values, r);
        Num s(0);
        for (const auto& x : g) s += x;
        total *= s;
    }
    return total;
}

template <class Num>
Num count_orthant(const pair_forest& f, const cone_point& rho, label_mode mode) {
    const size_t nn = f.block_of.size();
    std::vector<std::pair<int, int>> edges;  // (parent node, child node)
    for (size_t n = 0; n < nn; ++n)
        if (f.parent[n] >= 0) edges.emplace_back(f.parent[n], static_cast<int>(n));

    auto contracted_count = [&](const std::vector<int>& rep) -> Num {
        // forest on representatives; a contracted component is a subtree, so
        // it inherits exactly the parent of its top node
        std::vector<int> idx(nn, -1);
        std::vector<int> reps;
        for (size_t n = 0; n < nn; ++n)
            if (rep[n] == static_cast<int>(n)) {
                idx[n] = static_cast<int>(reps.size());
                reps.push_back(static_cast<int>(n));
            }
        std::vector<int> parent(reps.size(), -1);
        for (size_t n = 0; n < nn; ++n) {
            int pn = f.parent[n];
            if (pn >= 0 && rep[static_cast<size_t>(pn)] != rep[n])
                parent[static_cast<size_t>(idx[static_cast<size_t>(rep[n])])] =
                    idx[static_cast<size_t>(rep[static_cast<size_t>(pn)])];
        }
        Num total(1);
        for (long long m : rho.c) total *= count_axis_1d<Num>(parent, m);
        return total;
    };

    std::vector<int> rep(nn);
    std::iota(rep.begin(), rep.end(), 0);
    if (mode == label_mode::nonstrict) return contracted_count(rep);

    Num total(0);
    const size_t ne = edges.size();
    for (size_t mask = 0; mask < (size_t{1} << ne); ++mask) {
        std::iota(rep.begin(), rep.end(), 0);
        auto find = [&](int x) {
            while (rep[static_cast<size_t>(x)] != x) x = rep[static_cast<size_t>(x)];
            return x;
        };
        int bits = 0;
        for (size_t e = 0; e < ne; ++e)
            if (mask >> e & 1u) {
                ++bits;
                rep[static_cast<size_t>(find(edges[e].second))] = find(edges[e].first);
            }
        for (size_t n = 0; n < nn; ++n) rep[n] = find(static_cast<int>(n));
        Num term = contracted_count(rep);
        if (bits % 2)
            total -= term;
        else
            total += term;
    }
    return total;
}

// ---- lorentz d=1 route: grid dynamic programming ------------------------
// In lightcone coordinates u = t+z, v = t-z the causal order is the product
// order; the lattice is the even sublattice u+v in 2N. Up-set sums become
// two-dimensional suffix sums.
template <class Num>
struct grid2d {
    long long nu = 0, nv = 0;
    std::vector<Num> a;
    Num& at(long long u, long long v) { return a[static_cast<size_t>(u * nv + v)]; }
    const Num& at(long long u, long long v) const { return a[static_cast<size_t>(u * nv + v)]; }
};

template <class Num>
Num count_lorentz1(const pair_forest& f, const cone_point& rho, label_mode mode) {
    const long long U = rho.c[0] + rho.c[1], V = rho.c[0] - rho.c[1];
    auto member = [&](long long u, long long v) { return (u + v) % 2 == 0 && u + v >= 2; };
    auto children = forest_children(f);

    auto node_grid = [&](auto&& self, int node) -> grid2d<Num> {
        grid2d<Num> g{U + 1, V + 1, std::vector<Num>(static_cast<size_t>((U + 1) * (V + 1)), Num(0))};
        for (long long u = 0; u <= U; ++u)
            for (long long v = 0; v <= V; ++v)
                if (member(u, v)) g.at(u, v) = Num(1);
        for (int c : children[static_cast<size_t>(node)]) {
            grid2d<Num> gc = self(self, c);
            grid2d<Num> s = gc;  // suffix sums over both axes
            for (long long u = U; u >= 0; --u)
                for (long long v = V; v >= 0; --v) {
                    Num acc = s.at(u, v);
                    if (u < U) acc += s.at(u + 1, v);
                    if (v < V) acc += s.at(u, v + 1);
                    if (u < U && v < V) acc -= s.at(u + 1, v + 1);
                    s.at(u, v) = acc;
                }
            for (long long u = 0; u <= U; ++u)
                for (long long v = 0; v <= V; ++v) {
                    Num up = s.at(u, v);
                    if (mode == label_mode::strict) up -= gc.at(u, v);
                    g.at(u, v) *= up;
                }
        }
        return g;
    };

    Num total(1);
    for (size_t n = 0; n < f.block_of.size(); ++n) {
        if (f.parent[n] >= 0) continue;
        auto g = node_grid(node_grid, static_cast<int>(n));
        Num s(0);
        for (const auto& x : g.a) s += x;
        total *= s;
    }
    return total;
}

template <class Num>
Num count_dispatch(const partition& pi, const cone& k, const cone_point& rho, label_mode mode) {
    require_labelable(pi);
    k.require_in_cone(rho, "count_labellings");
    auto rep = structure(pi);
    auto f = make_pair_forest(pi, rep);
    if (f.block_of.empty()) return Num(1);
    switch (k.family()) {
        case cone_family::orthant: return count_orthant<Num>(f, rho, mode);
        case cone_family::lorentz:
            if (k.dim() == 1) return count_lorentz1<Num>(f, rho, mode);
            break;
        default: break;
    }
    if constexpr (std::is_same_v<Num, bigint>) {
        return count_backtracking(f, k, k.interval_lattice(rho), mode);
    } else {
        return count_backtracking(f, k, k.interval_lattice(rho), mode).template convert_to<Num>();
    }
}

}  // namespace detail

// Number of label maps L : blocks -> [0,rho] with nested pair blocks
// labelled upward (weakly or strictly, by mode) and every singleton carrying
// its direct predecessor's label. Exact, arbitrary precision.
inline bigint count_labellings_big(const partition& pi, const cone& k, const cone_point& rho,
                                   label_mode mode) {
    return detail::count_dispatch<bigint>(pi, k, rho, mode);
}

inline long long count_labellings(const partition& pi, const cone& k, const cone_point& rho,
                                  label_mode mode) {
    return to_int64_checked(count_labellings_big(pi, k, rho, mode), "count_labellings");
}

// the generic route on its own, for cross-checking the specialized ones
inline bigint count_labellings_backtracking(const partition& pi, const cone& k,
                                            const cone_point& rho, label_mode mode) {
    detail::require_labelable(pi);
    k.require_in_cone(rho, "count_labellings");
    auto f = detail::make_pair_forest(pi, structure(pi));
    if (f.block_of.empty()) return bigint(1);
    return detail::count_backtracking(f, k, k.interval_lattice(rho), mode);
}

// Brute-force oracle: scans every p-tuple over the interval lattice and
// keeps those that are constant on blocks and weakly bm-ordered, checking
// the order conditions straight from their definition (no nesting forest).
// Refuses loudly when the tuple space exceeds the guard.
inline long long count_sequences_naive(const partition& pi, const cone& k, const cone_point& rho,
                                       long long guard = 10'000'000) {
    detail::require_labelable(pi);
    k.require_in_cone(rho, "count_sequences_naive");
    auto pts = k.interval_lattice(rho);
    const int p = pi.p;
    double est = std::pow(static_cast<double>(pts.size()), p);
    if (est > static_cast<double>(guard))
        throw feasibility_error("count_sequences_naive: |interval|^p = " +
                                std::to_string(pts.size()) + "^" + std::to_string(p) +
                                " ~ " + std::to_string(est) + " tuples exceeds guard " +
                                std::to_string(guard));

    const int nb = block_count(pi);
    auto inside = [&](int i, int j) {  // block j strictly inside block i
        return block_inside(pi.blocks[static_cast<size_t>(i)], pi.blocks[static_cast<size_t>(j)]);
    };
    long long count = 0;
    std::vector<size_t> tup(static_cast<size_t>(p), 0);
    for (;;) {
        // labels must be constant on blocks
        bool ok = true;
        std::vector<size_t> label(static_cast<size_t>(nb));
        for (int b = 0; b < nb && ok; ++b) {
            const auto& blk = pi.blocks[static_cast<size_t>(b)];
            label[static_cast<size_t>(b)] = tup[static_cast<size_t>(blk[0] - 1)];
            for (int pos : blk)
                if (tup[static_cast<size_t>(pos - 1)] != label[static_cast<size_t>(b)]) ok = false;
        }
        // weak bm-order from the definition
        for (int i = 0; i < nb && ok; ++i)
            for (int j = 0; j < nb && ok; ++j) {
                if (i == j) continue;
                const auto& Bj = pi.blocks[static_cast<size_t>(j)];
                if (Bj.size() == 2 && inside(i, j)) {
                    if (!k.leq(pts[label[static_cast<size_t>(i)]], pts[label[static_cast<size_t>(j)]]))
                        ok = false;
                } else if (Bj.size() == 1 && inside(i, j)) {
                    bool between = false;
                    for (int l = 0; l < nb; ++l)
                        if (l != i && l != j && inside(i, l) && inside(l, j)) between = true;
                    if (!between && label[static_cast<size_t>(i)] != label[static_cast<size_t>(j)])
                        ok = false;
                }
            }
        if (ok) ++count;
        // odometer
        int pos = p - 1;
        while (pos >= 0 && tup[static_cast<size_t>(pos)] + 1 == pts.size()) {
            tup[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++tup[static_cast<size_t>(pos)];
    }
    return count;
}

// one partition x cone x rho measurement
struct count_record {
    partition pi;
    std::string cone_name;
    cone_point rho;
    long long nonstrict = 0;
    long long strict_count = 0;
    std::optional<long long> naive;  // only when requested (it is the slow oracle)
    double volume = 0;
    double ratio = 0;  // strict count of the reduced partition / volume^b(reduced)
};

inline count_record make_count_record(const partition& pi, const cone& k, const cone_point& rho,
                                      bool with_naive = false, long long naive_guard = 10'000'000) {
    count_record r;
    r.pi = pi;
    r.cone_name = k.name();
    r.rho = rho;
    r.nonstrict = count_labellings(pi, k, rho, label_mode::nonstrict);
    r.strict_count = count_labellings(pi, k, rho, label_mode::strict);
    if (with_naive) r.naive = count_sequences_naive(pi, k, rho, naive_guard);
    r.volume = k.euclid_volume(rho);
    partition red = reduce(pi);
    int b = block_count(red);
    double cnt = detail::count_dispatch<double>(red, k, rho, label_mode::strict);
    r.ratio = cnt / std::pow(r.volume, b);
    return r;
}

// normalized strict counts of the reduced partition along the growth
// schedule; converges to the cone's recursive block weight
inline std::vector<std::pair<cone_point, double>> v_ratio_series(const partition& pi, const cone& k,
                                                                 int steps) {
    if (!is_noncrossing(pi)) throw std::invalid_argument("v_ratio_series: partition has a crossing");
    partition red = is_pair_or_singleton(pi) ? reduce(pi) : pi;
    if (!is_pair_partition(red))
        throw std::invalid_argument("v_ratio_series: need pair blocks after reduction");
    const int b = block_count(red);
    std::vector<std::pair<cone_point, double>> out;
    // growth schedules stay interior, where the interval volume is positive
    out.reserve(static_cast<size_t>(steps));
    for (const auto& rho : k.rho_schedule(steps)) {
        double cnt = red.blocks.empty() ? 1.0 : detail::count_dispatch<double>(red, k, rho, label_mode::strict);
        out.emplace_back(rho, cnt / std::pow(k.euclid_volume(rho), b));
    }
    return out;
}

}  // namespace bmp
