#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace bmp {

using bigint = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

// thrown when a computation would exceed the configured work caps;
// callers are expected to refuse loudly, never to truncate silently
class feasibility_error : public std::runtime_error {
public:
    explicit feasibility_error(const std::string& what) : std::runtime_error(what) {}
};

inline rational make_rational(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    return rational(bigint(num), bigint(den));
}

inline rational rational_pow(const rational& base, unsigned exp) {
    rational r(1);
    rational b = base;
    while (exp) {
        if (exp & 1u) r *= b;
        b *= b;
        exp >>= 1u;
    }
    return r;
}

inline bigint bigint_pow(const bigint& base, unsigned exp) {
    bigint r(1), b = base;
    while (exp) {
        if (exp & 1u) r *= b;
        b *= b;
        exp >>= 1u;
    }
    return r;
}

inline double to_double(const rational& q) { return q.convert_to<double>(); }

// canonical text form: "num/den", or just "num" for integers
inline std::string to_string(const rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return rational(bigint(s));
        bigint num(s.substr(0, slash));
        bigint den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_rational: bad input '" + s + "'");
    }
}

inline long long to_int64_checked(const bigint& v, const char* context) {
    if (v > bigint(std::numeric_limits<long long>::max()) ||
        v < bigint(std::numeric_limits<long long>::min()))
        throw std::overflow_error(std::string(context) + ": value " + v.str() +
                                  " does not fit in 64 bits");
    return v.convert_to<long long>();
}

}  // namespace bmp
