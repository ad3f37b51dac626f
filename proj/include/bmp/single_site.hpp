#pragma once

#include "bmp/enumerate.hpp"
#include "bmp/polynomial.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace bmp {

// Moments a_p of a single site operator (creation + annihilation + intensity
// times conservation) in the vacuum state, as polynomials in the intensity.
// Three independent routes are provided and must agree exactly.

// combinatorial route: sum of lambda^(#singletons) over noncrossing
// partitions with outer pair blocks and inner singletons
inline rational_polynomial single_site_moment_enumerated(int p) {
    if (p < 0) throw std::invalid_argument("single_site_moment: p must be >= 0");
    rational_polynomial out;
    if (p == 0) {
        out.set(0, rational(1));
        return out;
    }
    for (const auto& pi : enumerate_outer_pair_inner_singleton(p))
        out.add(singleton_count(pi), rational(1));
    return out;
}

// a_0 = 1, a_1 = 0, a_p = lambda a_{p-1} + a_{p-2}
inline rational_polynomial single_site_moment_recursive(int p) {
    if (p < 0) throw std::invalid_argument("single_site_moment: p must be >= 0");
    rational_polynomial prev2 = rational_polynomial::monomial(0, rational(1));
    if (p == 0) return prev2;
    rational_polynomial prev1;  // zero
    for (int i = 2; i <= p; ++i) {
        rational_polynomial cur = prev1.shifted(1) + prev2;
        prev2 = std::move(prev1);
        prev1 = std::move(cur);
    }
    return prev1;
}

// transfer-matrix route: vacuum entry of the p-th power of [[0,1],[1,lambda]]
inline rational_polynomial single_site_moment_transfer(int p) {
    if (p < 0) throw std::invalid_argument("single_site_moment: p must be >= 0");
    using M = std::array<rational_polynomial, 4>;  // row-major 2x2
    auto mul = [](const M& a, const M& b) {
        return M{{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                  a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]}};
    };
    const auto one = rational_polynomial::monomial(0, rational(1));
    const auto lam = rational_polynomial::monomial(1, rational(1));
    M acc{{one, {}, {}, one}};
    M base{{{}, one, one, lam}};
    for (int i = 0; i < p; ++i) acc = mul(acc, base);
    return acc[0];
}

// two-atom vacuum distribution of the single site operator
struct two_atom_measure {
    double x1, x2;  // atom positions, x1 > 0 > x2 for positive intensity
    double p1, p2;  // weights, p1 + p2 = 1

    double moment(int p) const { return p1 * std::pow(x1, p) + p2 * std::pow(x2, p); }
};

inline two_atom_measure single_site_measure(double lambda) {
    if (lambda < 0) throw std::invalid_argument("single_site_measure: intensity must be >= 0");
    double root = std::sqrt(lambda * lambda + 4.0);
    return two_atom_measure{lambda / 2 + root / 2, lambda / 2 - root / 2,
                            0.5 - lambda / (2 * root), 0.5 + lambda / (2 * root)};
}

inline std::string mgf_pole_description(double lambda) {
    // roots of x^2 + lambda x - 1 = 0
    double r = std::sqrt(lambda * lambda + 4.0);
    return std::to_string((-lambda + r) / 2) + " or " + std::to_string((-lambda - r) / 2);
}

inline std::string cauchy_pole_description(double lambda) {
    auto nu = single_site_measure(lambda);
    return std::to_string(nu.x1) + " or " + std::to_string(nu.x2);
}

namespace detail {
template <class X>
bool at_pole(const X& den) {
    using std::abs;
    return abs(den) < 1e-12;
}
}  // namespace detail

// M(x) = (1 - lambda x) / (1 - lambda x - x^2)
template <class X>
X moment_generating_function(double lambda, const X& x) {
    X den = X(1) - X(lambda) * x - x * x;
    if (detail::at_pole(den))
        throw std::domain_error("moment_generating_function: pole at x = " + mgf_pole_description(lambda));
    return (X(1) - X(lambda) * x) / den;
}

// G(x) = (x - 1) / (x^2 - lambda x - 1), as published
template <class X>
X cauchy_transform(double lambda, const X& x) {
    X den = x * x - X(lambda) * x - X(1);
    if (detail::at_pole(den))
        throw std::domain_error("cauchy_transform: pole at x = " + cauchy_pole_description(lambda));
    return (x - X(1)) / den;
}

// exact power-series coefficients of M around 0; must match the moment
// sequence coefficientwise
inline std::vector<rational> mgf_series(const rational& lambda, int n) {
    rational_polynomial num, den;
    num.set(0, rational(1));
    num.set(1, rational(0) - lambda);
    den.set(0, rational(1));
    den.set(1, rational(0) - lambda);
    den.set(2, rational(-1));
    return series_of_rational_function(num, den, n);
}

}  // namespace bmp
