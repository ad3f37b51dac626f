#pragma once

#include "bmp/cone.hpp"
#include "bmp/polynomial.hpp"
#include "bmp/rational.hpp"

#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace bmp {

// Basis vector of the strictly-decreasing-chain sector: points[0] is the top
// (most recently created) factor; the empty chain is the vacuum.
struct chain_vector {
    std::vector<cone_point> points;

    bool empty() const { return points.empty(); }
    auto operator<=>(const chain_vector&) const = default;
};

inline bool chain_is_valid(const cone& k, const chain_vector& ch) {
    for (size_t i = 0; i + 1 < ch.points.size(); ++i)
        if (!k.lt(ch.points[i + 1], ch.points[i])) return false;
    return true;
}

inline std::string format_chain(const cone& k, const chain_vector& ch) {
    if (ch.empty()) return "vacuum";
    std::string s = "(";
    for (size_t i = 0; i < ch.points.size(); ++i) {
        if (i) s += " > ";
        s += k.format_point(ch.points[i]);
    }
    return s + ")";
}

// Finite linear combination of chain vectors. Coefficients are exact
// rationals, reals, or intensity polynomials depending on the computation.
// Terms are kept in a sorted map so serialization is deterministic; zero
// coefficients are dropped eagerly.
template <class C>
class fock_state {
public:
    fock_state() = default;
    static fock_state vacuum(C coeff = C(1)) {
        fock_state s;
        s.add(chain_vector{}, coeff);
        return s;
    }

    const std::map<chain_vector, C>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const chain_vector& ch, const C& coeff) {
        auto [it, inserted] = terms_.emplace(ch, coeff);
        if (!inserted) {
            it->second += coeff;
            if (is_zero_coeff(it->second)) terms_.erase(it);
        } else if (is_zero_coeff(it->second)) {
            terms_.erase(it);
        }
    }

    fock_state& operator+=(const fock_state& o) {
        for (const auto& [ch, c] : o.terms_) add(ch, c);
        return *this;
    }

    fock_state scaled(const C& f) const {
        fock_state out;
        if (is_zero_coeff(f)) return out;
        for (const auto& [ch, c] : terms_) out.terms_.emplace(ch, c * f);
        return out;
    }

    C coefficient(const chain_vector& ch) const {
        auto it = terms_.find(ch);
        return it == terms_.end() ? C(0) : it->second;
    }

    // chains are orthonormal and coefficients real, so this is the bilinear
    // pairing sum of products over common chains
    C inner(const fock_state& o) const {
        C acc(0);
        for (const auto& [ch, c] : terms_) {
            auto it = o.terms_.find(ch);
            if (it != o.terms_.end()) acc += c * it->second;
        }
        return acc;
    }

    bool operator==(const fock_state& o) const { return terms_ == o.terms_; }

private:
    static bool is_zero_coeff(const C& c) {
        if constexpr (std::is_same_v<C, polynomial<rational>> || std::is_same_v<C, polynomial<double>>)
            return c.is_zero();
        else
            return c == C(0);
    }

    std::map<chain_vector, C> terms_;
};

enum class fock_op { creation, annihilation, conservation };

// Action of one ladder operator at xi on a basis chain, linearly extended.
// creation prepends when xi is strictly above the top (or onto the vacuum);
// annihilation and conservation hit only when xi equals the top.
template <class C>
fock_state<C> apply(const cone& k, fock_op op, const cone_point& xi, const fock_state<C>& s) {
    k.require_in_cone(xi, "apply");
    fock_state<C> out;
    for (const auto& [ch, c] : s.terms()) {
        switch (op) {
            case fock_op::creation:
                if (ch.empty() || k.lt(ch.points.front(), xi)) {
                    chain_vector nc;
                    nc.points.reserve(ch.points.size() + 1);
                    nc.points.push_back(xi);
                    nc.points.insert(nc.points.end(), ch.points.begin(), ch.points.end());
                    out.add(nc, c);
                }
                break;
            case fock_op::annihilation:
                if (!ch.empty() && ch.points.front() == xi) {
                    chain_vector nc;
                    nc.points.assign(ch.points.begin() + 1, ch.points.end());
                    out.add(nc, c);
                }
                break;
            case fock_op::conservation:
                if (!ch.empty() && ch.points.front() == xi) out.add(ch, c);
                break;
        }
    }
    return out;
}

// One application of the normalized sum
//   S = v(rho)^(-1/2) * sum over [0,rho] of (creation + annihilation)
//     + lambda * sum over [0,rho] of conservation.
// Summed over the interval, annihilation and conservation act only at the
// top of each chain, so only creation fans out.
inline fock_state<double> apply_S(const cone& k, const std::vector<cone_point>& interval,
                                  double inv_sqrt_v, double lambda, const fock_state<double>& s) {
    fock_state<double> out;
    for (const auto& [ch, c] : s.terms()) {
        if (!ch.empty()) {
            chain_vector popped;
            popped.points.assign(ch.points.begin() + 1, ch.points.end());
            out.add(popped, c * inv_sqrt_v);           // annihilation at the top
            if (lambda != 0.0) out.add(ch, c * lambda);  // conservation at the top
        }
        for (const auto& xi : interval) {
            if (ch.empty() || k.lt(ch.points.front(), xi)) {
                chain_vector nc;
                nc.points.reserve(ch.points.size() + 1);
                nc.points.push_back(xi);
                nc.points.insert(nc.points.end(), ch.points.begin(), ch.points.end());
                out.add(nc, c * inv_sqrt_v);
            }
        }
    }
    return out;
}

inline fock_state<double> apply_S(const cone& k, const cone_point& rho, double lambda,
                                  const fock_state<double>& s) {
    return apply_S(k, k.interval_lattice(rho), 1.0 / std::sqrt(k.euclid_volume(rho)), lambda, s);
}

// Unnormalized symbolic application: the intensity is the polynomial
// variable, normalization powers are restored afterwards from the degree.
// This is the exact-mode counterpart of apply_S.
inline fock_state<polynomial<rational>> apply_S_symbolic(const cone& k,
                                                         const std::vector<cone_point>& interval,
                                                         const fock_state<polynomial<rational>>& s) {
    fock_state<polynomial<rational>> out;
    for (const auto& [ch, c] : s.terms()) {
        if (!ch.empty()) {
            chain_vector popped;
            popped.points.assign(ch.points.begin() + 1, ch.points.end());
            out.add(popped, c);
            out.add(ch, c.shifted(1));  // conservation picks up one intensity power
        }
        for (const auto& xi : interval) {
            if (ch.empty() || k.lt(ch.points.front(), xi)) {
                chain_vector nc;
                nc.points.reserve(ch.points.size() + 1);
                nc.points.push_back(xi);
                nc.points.insert(nc.points.end(), ch.points.begin(), ch.points.end());
                out.add(nc, c);
            }
        }
    }
    return out;
}

namespace detail {

inline void guard_state_space(const cone& k, const cone_point& rho, int p, double cap) {
    // chains longer than p/2 are pruned during moment evaluation, so the
    // live state is bounded by the chain count up to that length
    double n = static_cast<double>(k.interval_count(rho));
    double est = 1, term = 1;
    for (int j = 1; 2 * j <= p + 1 && j <= static_cast<int>(n); ++j) {
        term *= (n - j + 1) / j;
        est += term;
        if (est > cap) break;
    }
    if (est > cap) {
        std::ostringstream os;
        os << "fock moment: estimated reachable chain count " << est << " for |interval| = " << n
           << ", p = " << p << " exceeds cap " << cap;
        throw feasibility_error(os.str());
    }
}

// A chain of length L needs L further annihilations to reach the vacuum, so
// terms longer than the remaining application count never contribute to the
// moment and can be dropped between applications.
template <class C>
fock_state<C> drop_unreturnable(const fock_state<C>& s, int remaining) {
    fock_state<C> out;
    for (const auto& [ch, c] : s.terms())
        if (static_cast<int>(ch.points.size()) <= remaining) out.add(ch, c);
    return out;
}

}  // namespace detail

// p-th vacuum moment of S at a finite truncation, evaluated numerically
inline double vacuum_moment(const cone& k, const cone_point& rho, double lambda, int p,
                            double cap = 5e6) {
    if (p < 1) throw std::invalid_argument("vacuum_moment: p must be positive");
    if (k.euclid_volume(rho) <= 0)
        throw std::invalid_argument("vacuum_moment: zero interval volume at the boundary point " +
                                    k.format_point(rho));
    detail::guard_state_space(k, rho, p, cap);
    auto interval = k.interval_lattice(rho);
    double inv_sqrt_v = 1.0 / std::sqrt(k.euclid_volume(rho));
    auto s = fock_state<double>::vacuum();
    for (int i = 0; i < p; ++i)
        s = detail::drop_unreturnable(apply_S(k, interval, inv_sqrt_v, lambda, s), p - i - 1);
    return s.coefficient(chain_vector{});
}

// Same moment with the intensity kept symbolic: exact rational coefficients,
// normalization restored as v^(-(p-degree)/2). Only for cones with rational
// interval volumes.
inline rational_polynomial vacuum_moment_poly(const cone& k, const cone_point& rho, int p,
                                              double cap = 5e6) {
    if (p < 1) throw std::invalid_argument("vacuum_moment_poly: p must be positive");
    if (!k.volume_is_rational())
        throw std::invalid_argument("vacuum_moment_poly: " + k.name() +
                                    " has irrational interval volumes");
    if (k.euclid_volume_rational(rho) == 0)
        throw std::invalid_argument("vacuum_moment_poly: zero interval volume at the boundary point " +
                                    k.format_point(rho));
    detail::guard_state_space(k, rho, p, cap);
    auto interval = k.interval_lattice(rho);
    auto s = fock_state<polynomial<rational>>::vacuum(polynomial<rational>::monomial(0, rational(1)));
    for (int i = 0; i < p; ++i)
        s = detail::drop_unreturnable(apply_S_symbolic(k, interval, s), p - i - 1);
    rational v = k.euclid_volume_rational(rho);
    rational_polynomial raw = s.coefficient(chain_vector{});
    rational_polynomial out;
    for (const auto& [deg, c] : raw.coeffs()) {
        if ((p - deg) % 2 != 0)
            throw std::logic_error("vacuum_moment_poly: odd creation/annihilation count survived");
        out.add(deg, c / rational_pow(v, static_cast<unsigned>((p - deg) / 2)));
    }
    return out;
}

}  // namespace bmp
