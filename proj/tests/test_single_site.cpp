#include "bmp/single_site.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace bmp;

namespace {
rational_polynomial poly(std::vector<std::pair<int, std::string>> coeffs) {
    rational_polynomial q;
    for (auto& [e, c] : coeffs) q.set(e, parse_rational(c));
    return q;
}
}  // namespace

TEST_CASE("single-site moments: first values") {
    CHECK(single_site_moment_recursive(0) == poly({{0, "1"}}));
    CHECK(single_site_moment_recursive(1).is_zero());
    CHECK(single_site_moment_recursive(2) == poly({{0, "1"}}));
    CHECK(single_site_moment_recursive(3) == poly({{1, "1"}}));
    CHECK(single_site_moment_recursive(4) == poly({{0, "1"}, {2, "1"}}));
    CHECK(single_site_moment_recursive(5) == poly({{1, "2"}, {3, "1"}}));
    CHECK(single_site_moment_recursive(6) == poly({{0, "1"}, {2, "3"}, {4, "1"}}));
}

TEST_CASE("single-site moments: three routes agree exactly") {
    for (int p = 0; p <= 16; ++p) {
        auto rec = single_site_moment_recursive(p);
        CHECK(rec == single_site_moment_enumerated(p));
        CHECK(rec == single_site_moment_transfer(p));
    }
}

TEST_CASE("unit intensity gives shifted Fibonacci numbers") {
    // F(0) = 0, F(1) = F(2) = 1, ...
    long long fib[17] = {0, 1};
    for (int i = 2; i <= 16; ++i) fib[i] = fib[i - 1] + fib[i - 2];
    for (int p = 1; p <= 16; ++p)
        CHECK(eval_exact(single_site_moment_recursive(p), rational(1)) == rational(fib[p - 1]));
    CHECK(eval_exact(single_site_moment_recursive(7), rational(1)) == rational(8));
}

TEST_CASE("two-atom vacuum distribution") {
    auto nu0 = single_site_measure(0);
    CHECK(nu0.x1 == doctest::Approx(1));
    CHECK(nu0.x2 == doctest::Approx(-1));
    CHECK(nu0.p1 == doctest::Approx(0.5));

    auto nu1 = single_site_measure(1);
    CHECK(nu1.x1 == doctest::Approx((1 + std::sqrt(5.0)) / 2));
    CHECK(nu1.x2 == doctest::Approx((1 - std::sqrt(5.0)) / 2));
    CHECK(nu1.p1 == doctest::Approx(0.5 - 1 / (2 * std::sqrt(5.0))));

    auto nu2 = single_site_measure(2);
    CHECK(nu2.x1 == doctest::Approx(1 + std::sqrt(2.0)));
    CHECK(nu2.x2 == doctest::Approx(1 - std::sqrt(2.0)));

    for (double lambda : {0.0, 0.5, 1.0, 2.0}) {
        auto nu = single_site_measure(lambda);
        CHECK(nu.p1 + nu.p2 == doctest::Approx(1.0));
        CHECK(nu.p1 > 0);
        CHECK(nu.p2 > 0);
        CHECK(nu.moment(1) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(nu.moment(2) == doctest::Approx(1.0));
        for (int p = 0; p <= 10; ++p) {
            double expected = to_double(eval_exact(single_site_moment_recursive(p),
                                                   parse_rational(lambda == 0.5 ? "1/2" : std::to_string(
                                                                      static_cast<int>(lambda)))));
            CHECK(std::abs(nu.moment(p) - expected) < 1e-9);
        }
    }
}

TEST_CASE("moment generating function and its series") {
    CHECK(moment_generating_function(1.5, 0.0) == doctest::Approx(1.0));
    // vanishing intensity: geometric series in x^2
    CHECK(moment_generating_function(0.0, 0.5) == doctest::Approx(1.0 / (1 - 0.25)));

    for (const char* ls : {"0", "1/2", "1", "2"}) {
        rational lambda = parse_rational(ls);
        auto coeffs = mgf_series(lambda, 11);
        for (int p = 0; p <= 10; ++p) {
            rational expected = eval_exact(single_site_moment_recursive(p), lambda);
            CHECK(coeffs[static_cast<size_t>(p)] == expected);
            CHECK(std::abs(to_double(coeffs[static_cast<size_t>(p)] - expected)) <= 1e-12);
        }
    }

    // complex evaluation stays finite off the poles
    std::complex<double> z(0.1, 0.2);
    auto mz = moment_generating_function(1.0, z);
    CHECK(std::isfinite(mz.real()));

    // pole rejection names the location
    double pole = (-1.0 + std::sqrt(5.0)) / 2;  // root of 1 - x - x^2 at unit intensity
    CHECK_THROWS_AS(moment_generating_function(1.0, pole), std::domain_error);
}

TEST_CASE("published resolvent formula") {
    // normalization: x G(x) tends to 1 at infinity
    CHECK(1e6 * cauchy_transform(1.5, 1e6) == doctest::Approx(1.0).epsilon(1e-4));
    // atoms of the measure are poles
    auto nu = single_site_measure(1.0);
    CHECK_THROWS_AS(cauchy_transform(1.0, nu.x1), std::domain_error);
    CHECK(std::abs(cauchy_transform(1.0, 3.0) - (3.0 - 1) / (9.0 - 3.0 - 1)) < 1e-15);
}
