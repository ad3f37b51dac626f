#pragma once

#include "bmp/rational.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

namespace bmp {

namespace detail {
inline bool coeff_is_zero(const rational& c) { return c == 0; }
inline bool coeff_is_zero(double c) { return c == 0.0; }
inline std::string coeff_str(const rational& c) { return to_string(c); }
inline std::string coeff_str(double c) {
    std::ostringstream os;
    os.precision(12);
    os << c;
    return os.str();
}
}  // namespace detail

// sparse polynomial in one variable; zero coefficients are never stored
template <class C>
class polynomial {
public:
    polynomial() = default;
    explicit polynomial(int constant) {
        if (constant != 0) coeffs_[0] = C(constant);
    }

    static polynomial monomial(int exp, C coeff) {
        polynomial q;
        q.set(exp, std::move(coeff));
        return q;
    }

    const std::map<int, C>& coeffs() const { return coeffs_; }

    C coeff(int exp) const {
        auto it = coeffs_.find(exp);
        return it == coeffs_.end() ? C(0) : it->second;
    }

    void set(int exp, C value) {
        if (exp < 0) throw std::invalid_argument("polynomial: negative exponent");
        if (detail::coeff_is_zero(value))
            coeffs_.erase(exp);
        else
            coeffs_[exp] = std::move(value);
    }

    void add(int exp, const C& value) { set(exp, coeff(exp) + value); }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

    polynomial& operator+=(const polynomial& o) {
        for (const auto& [e, c] : o.coeffs_) add(e, c);
        return *this;
    }
    polynomial& operator-=(const polynomial& o) {
        for (const auto& [e, c] : o.coeffs_) add(e, C(0) - c);
        return *this;
    }
    friend polynomial operator+(polynomial a, const polynomial& b) { return a += b; }
    friend polynomial operator-(polynomial a, const polynomial& b) { return a -= b; }

    friend polynomial operator*(const polynomial& a, const polynomial& b) {
        polynomial r;
        for (const auto& [ea, ca] : a.coeffs_)
            for (const auto& [eb, cb] : b.coeffs_) r.add(ea + eb, ca * cb);
        return r;
    }

    polynomial& scale(const C& f) {
        polynomial r;
        for (const auto& [e, c] : coeffs_) r.set(e, c * f);
        coeffs_ = std::move(r.coeffs_);
        return *this;
    }

    // multiply by x^k
    polynomial shifted(int k) const {
        polynomial r;
        for (const auto& [e, c] : coeffs_) r.set(e + k, c);
        return r;
    }

    template <class X>
    X eval(const X& x) const {
        X acc(0);
        for (const auto& [e, c] : coeffs_) {
            X t(to_eval<X>(c));
            for (int i = 0; i < e; ++i) t = t * x;
            acc = acc + t;
        }
        return acc;
    }

    bool operator==(const polynomial& o) const { return coeffs_ == o.coeffs_; }

    // "λ^4 + 129/35·λ^2 + 443/350"
    std::string str(const std::string& var = "λ") const {
        if (coeffs_.empty()) return "0";
        std::string out;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            if (!out.empty()) out += " + ";
            const auto& [e, c] = *it;
            std::string cs = detail::coeff_str(c);
            if (e == 0) {
                out += cs;
            } else {
                std::string x = e == 1 ? var : var + "^" + std::to_string(e);
                out += (cs == "1") ? x : cs + "·" + x;
            }
        }
        return out;
    }

private:
    template <class X>
    static X to_eval(const C& c) {
        if constexpr (std::is_same_v<C, rational> && !std::is_same_v<X, rational>)
            return X(to_double(c));
        else
            return X(c);
    }

    std::map<int, C> coeffs_;
};

using rational_polynomial = polynomial<rational>;

inline polynomial<double> to_real(const rational_polynomial& q) {
    polynomial<double> r;
    for (const auto& [e, c] : q.coeffs()) r.set(e, to_double(c));
    return r;
}

// exact evaluation of a rational-coefficient polynomial at a rational point
inline rational eval_exact(const rational_polynomial& q, const rational& x) {
    rational acc(0);
    for (const auto& [e, c] : q.coeffs()) acc += c * rational_pow(x, static_cast<unsigned>(e));
    return acc;
}

// first n coefficients of the power series of num/den around 0 (den(0) != 0)
template <class C>
std::vector<C> series_of_rational_function(const polynomial<C>& num, const polynomial<C>& den,
                                           int n) {
    C d0 = den.coeff(0);
    if (detail::coeff_is_zero(d0))
        throw std::invalid_argument("series_of_rational_function: denominator vanishes at 0");
    std::vector<C> out;
    out.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        C acc = num.coeff(k);
        for (int j = 1; j <= k; ++j) acc = acc - den.coeff(j) * out[static_cast<size_t>(k - j)];
        out.push_back(acc / d0);
    }
    return out;
}

}  // namespace bmp
