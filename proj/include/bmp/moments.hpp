#pragma once

#include "bmp/cone.hpp"
#include "bmp/enumerate.hpp"
#include "bmp/labelling.hpp"
#include "bmp/partition.hpp"
#include "bmp/polynomial.hpp"

#include <vector>

namespace bmp {

// Recursive block weight of a noncrossing partition. Every nesting tree with
// r blocks rooted at an outer block contributes gamma_r times the weights of
// the subtrees hanging under the root; disjoint trees multiply. Leaves (and
// the empty partition) weigh 1.
inline rational V_of(const partition& pi, const cone& k) {
    if (!is_noncrossing(pi)) throw std::invalid_argument("V_of: partition has a crossing");
    if (pi.blocks.empty()) return rational(1);
    auto rep = structure(pi);
    auto weight = [&](auto&& self, int j) -> rational {
        const auto& succ = rep.blocks[static_cast<size_t>(j)].direct_successors;
        if (succ.empty()) return rational(1);
        rational w = k.gamma_closed(rep.subtree_block_count(j));
        for (int c : succ) w *= self(self, c);
        return w;
    };
    rational out(1);
    for (int r : rep.roots) out *= weight(weight, r);
    return out;
}

// limit moment polynomial in the conservation intensity:
// m_p = sum over noncrossing pair/inner-singleton partitions of [p] of
// lambda^(#singletons) * V(reduced partition)
inline rational_polynomial moment_poly(int p, const cone& k) {
    if (p < 1) throw std::invalid_argument("moment_poly: p must be positive");
    rational_polynomial m;
    for (const auto& pi : enumerate_pair_inner_singleton(p))
        m.add(singleton_count(pi), V_of(reduce(pi), k));
    return m;
}

namespace detail {

// The generic counting route visits interval-size^2 label pairs per block;
// refuse the cones that need it once the interval outgrows the cap.
inline void guard_counting_work(const cone& k, const cone_point& rho, long long interval_cap,
                                const char* who) {
    bool product_order = k.family() == cone_family::orthant ||
                         (k.family() == cone_family::lorentz && k.dim() == 1);
    if (product_order) return;
    long long n = k.interval_count(rho);
    if (n > interval_cap)
        throw feasibility_error(std::string(who) + ": interval of " + std::to_string(n) +
                                " points on " + k.name() + " exceeds the counting cap " +
                                std::to_string(interval_cap));
}

}  // namespace detail

// Pre-limit moment at a finite truncation rho, from strict labelling counts:
// sum over partitions of lambda^s * count_strict / v(rho)^((p-s)/2).
// Exact; requires a cone whose interval volumes are rational.
inline rational_polynomial finite_rho_moment(int p, const cone& k, const cone_point& rho,
                                             long long interval_cap = 4000) {
    if (p < 1) throw std::invalid_argument("finite_rho_moment: p must be positive");
    if (!k.volume_is_rational())
        throw std::invalid_argument("finite_rho_moment: " + k.name() +
                                    " has irrational interval volumes; use finite_rho_moment_real");
    detail::guard_counting_work(k, rho, interval_cap, "finite_rho_moment");
    rational v = k.euclid_volume_rational(rho);
    if (v == 0)
        throw std::invalid_argument(
            "finite_rho_moment: zero interval volume at the boundary point " + k.format_point(rho));
    rational_polynomial m;
    for (const auto& pi : enumerate_pair_inner_singleton(p)) {
        int s = singleton_count(pi);
        bigint cnt = count_labellings_big(pi, k, rho, label_mode::strict);
        m.add(s, rational(cnt) / rational_pow(v, static_cast<unsigned>((p - s) / 2)));
    }
    return m;
}

// floating-point variant for the cones with irrational interval volumes
inline polynomial<double> finite_rho_moment_real(int p, const cone& k, const cone_point& rho,
                                                 long long interval_cap = 4000) {
    if (p < 1) throw std::invalid_argument("finite_rho_moment_real: p must be positive");
    detail::guard_counting_work(k, rho, interval_cap, "finite_rho_moment_real");
    double v = k.euclid_volume(rho);
    if (v <= 0)
        throw std::invalid_argument(
            "finite_rho_moment_real: zero interval volume at the boundary point " + k.format_point(rho));
    polynomial<double> m;
    for (const auto& pi : enumerate_pair_inner_singleton(p)) {
        int s = singleton_count(pi);
        double cnt = detail::count_dispatch<double>(pi, k, rho, label_mode::strict);
        m.add(s, cnt / std::pow(v, (p - s) / 2));
    }
    return m;
}

// g_0, ..., g_n with g_m = sum_{k=1..m} gamma_k g_{k-1} g_{m-k}
inline std::vector<rational> g_sequence(int n, const cone& k) {
    std::vector<rational> g{rational(1)};
    if (n >= 1) g.push_back(rational(1));
    for (int m = 2; m <= n; ++m) {
        rational acc(0);
        for (int j = 1; j <= m; ++j)
            acc += k.gamma_closed(j) * g[static_cast<size_t>(j - 1)] * g[static_cast<size_t>(m - j)];
        g.push_back(acc);
    }
    return g;
}

// 2n-th vanishing-intensity moment, computed two independent ways; the odd
// moments vanish identically
struct clt_values {
    rational recursion;      // g_n from the quadratic recursion
    rational partition_sum;  // sum of V over noncrossing pair partitions of [2n]
    bool equal() const { return recursion == partition_sum; }
};

inline clt_values clt_moment(int n, const cone& k) {
    if (n < 0) throw std::invalid_argument("clt_moment: n must be >= 0");
    clt_values out{g_sequence(n, k).back(), rational(0)};
    if (n == 0) {
        out.partition_sum = rational(1);
        return out;
    }
    for (const auto& pi : enumerate_pair(2 * n)) out.partition_sum += V_of(pi, k);
    return out;
}

}  // namespace bmp
