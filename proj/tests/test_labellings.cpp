#include "bmp/enumerate.hpp"
#include "bmp/labelling.hpp"
#include "bmp/moments.hpp"

#include <doctest.h>

#include <cmath>

using namespace bmp;

namespace {
cone_point pt(std::vector<long long> c) { return cone_point{std::move(c)}; }
partition P(int p, std::vector<std::vector<int>> blocks) { return make_partition(p, std::move(blocks)); }

const cone o1{cone_family::orthant, 1};
const cone o2{cone_family::orthant, 2};
const cone o3{cone_family::orthant, 3};
const cone l1{cone_family::lorentz, 1};
const cone l2{cone_family::lorentz, 2};
const cone s2{cone_family::psd, 2};
}  // namespace

TEST_CASE("labelling counts: worked examples") {
    auto pair2 = P(2, {{1, 2}});
    CHECK(count_labellings(pair2, o1, pt({3}), label_mode::strict) == 3);
    CHECK(count_labellings(pair2, o1, pt({3}), label_mode::nonstrict) == 3);

    auto nested = P(4, {{1, 4}, {2, 3}});
    CHECK(count_labellings(nested, o1, pt({4}), label_mode::strict) == 6);     // C(4,2)
    CHECK(count_labellings(nested, o1, pt({4}), label_mode::nonstrict) == 10); // C(5,2)

    auto forced = P(4, {{1, 4}, {2}, {3}});
    CHECK(count_labellings(forced, o2, pt({2, 2}), label_mode::strict) == 4);
    CHECK(count_labellings(forced, o2, pt({2, 2}), label_mode::nonstrict) == 4);
}

TEST_CASE("labelling counts: rejects bad inputs") {
    CHECK_THROWS_AS(count_labellings(P(4, {{1, 3}, {2, 4}}), o1, pt({2}), label_mode::strict),
                    std::invalid_argument);  // crossing
    CHECK_THROWS_AS(count_labellings(P(3, {{1, 2}, {3}}), o1, pt({2}), label_mode::strict),
                    std::invalid_argument);  // outer singleton
    CHECK_THROWS_AS(count_labellings(P(3, {{1, 2, 3}}), o1, pt({2}), label_mode::strict),
                    std::invalid_argument);  // block of size 3
    CHECK_THROWS_AS(count_labellings(P(2, {{1, 2}}), l1, pt({1, 5}), label_mode::strict),
                    std::invalid_argument);  // rho outside the cone
}

TEST_CASE("naive tuple scan: worked examples") {
    CHECK(count_sequences_naive(P(2, {{1, 2}}), o1, pt({2})) == 2);
    CHECK(count_sequences_naive(P(3, {{1, 3}, {2}}), o1, pt({3})) == 3);
    CHECK(count_sequences_naive(P(4, {{1, 4}, {2, 3}}), o1, pt({3})) == 6);
    CHECK_THROWS_AS(count_sequences_naive(P(6, {{1, 6}, {2, 5}, {3, 4}}), o1, pt({100})),
                    feasibility_error);
}

TEST_CASE("oracle equality: naive scan matches nonstrict backtracking") {
    for (int p = 2; p <= 5; ++p)
        for (const auto& pi : enumerate_pair_inner_singleton(p)) {
            for (long long r = 1; r <= 4; ++r)
                CHECK(count_sequences_naive(pi, o1, pt({r})) ==
                      count_labellings(pi, o1, pt({r}), label_mode::nonstrict));
            for (long long a = 1; a <= 2; ++a)
                for (long long b = 1; b <= 2; ++b)
                    CHECK(count_sequences_naive(pi, o2, pt({a, b})) ==
                          count_labellings(pi, o2, pt({a, b}), label_mode::nonstrict));
        }
}

TEST_CASE("specialized counting routes agree with generic backtracking") {
    for (int p : {2, 4, 6})
        for (const auto& pi : enumerate_pair_inner_singleton(p))
            for (auto mode : {label_mode::nonstrict, label_mode::strict}) {
                for (const auto& rho : {pt({5}), pt({3})})
                    CHECK(count_labellings_big(pi, o1, rho, mode) ==
                          count_labellings_backtracking(pi, o1, rho, mode));
                CHECK(count_labellings_big(pi, o2, pt({3, 2}), mode) ==
                      count_labellings_backtracking(pi, o2, pt({3, 2}), mode));
                CHECK(count_labellings_big(pi, o3, pt({2, 2, 2}), mode) ==
                      count_labellings_backtracking(pi, o3, pt({2, 2, 2}), mode));
                CHECK(count_labellings_big(pi, l1, pt({4, 1}), mode) ==
                      count_labellings_backtracking(pi, l1, pt({4, 1}), mode));
                CHECK(count_labellings_big(pi, l1, pt({5, 0}), mode) ==
                      count_labellings_backtracking(pi, l1, pt({5, 0}), mode));
            }
}

TEST_CASE("counts over non-product lattices") {
    auto pair2 = P(2, {{1, 2}});
    CHECK(count_labellings(pair2, s2, pt({2, 0, 2}), label_mode::strict) == 10);
    CHECK(count_labellings(pair2, l2, pt({2, 0, 0}), label_mode::strict) ==
          l2.interval_count(pt({2, 0, 0})));

    // frozen values, confirmed by an independent implementation
    auto nested = P(4, {{1, 4}, {2, 3}});
    auto chain3 = P(6, {{1, 6}, {2, 5}, {3, 4}});
    CHECK(count_labellings(nested, s2, pt({2, 0, 2}), label_mode::strict) == 21);
    CHECK(count_labellings(nested, s2, pt({2, 0, 2}), label_mode::nonstrict) == 31);
    CHECK(count_labellings(chain3, s2, pt({2, 0, 2}), label_mode::strict) == 18);
    CHECK(count_labellings(chain3, s2, pt({2, 0, 2}), label_mode::nonstrict) == 70);
    CHECK(count_labellings(nested, l2, pt({3, 1, 0}), label_mode::strict) == 22);
    CHECK(count_labellings(nested, l2, pt({3, 1, 0}), label_mode::nonstrict) == 33);
}

TEST_CASE("counts grow along the schedule") {
    for (const cone& k : {o1, o2, l1}) {
        auto nested = P(4, {{1, 4}, {2, 3}});
        long long prev = -1;
        for (const auto& rho : k.rho_schedule(6)) {
            long long cur = count_labellings(nested, k, rho, label_mode::nonstrict);
            CHECK(cur >= prev);
            prev = cur;
        }
    }
}

TEST_CASE("strict and nonstrict counts agree asymptotically") {
    for (const auto& pi : {P(4, {{1, 4}, {2, 3}}), P(6, {{1, 6}, {2, 5}, {3, 4}}),
                           P(6, {{1, 6}, {2, 3}, {4, 5}})}) {
        for (const cone& k : {o1, o2, l1}) {
            double prev_gap = 1;
            for (int n : {5, 10, 20, 40}) {
                auto rho = k.schedule_point(n);
                double ns = static_cast<double>(count_labellings(pi, k, rho, label_mode::nonstrict));
                double st = static_cast<double>(count_labellings(pi, k, rho, label_mode::strict));
                double gap = (ns - st) / ns;
                CHECK(gap >= 0);
                CHECK(gap < prev_gap);
                prev_gap = gap;
            }
        }
    }
}

TEST_CASE("outer pair blocks carry no mutual constraint") {
    // every all-outer pair partition counts like a free product, so the
    // strictness flag cannot matter
    for (int p : {2, 4, 6}) {
        for (const auto& pi : enumerate_pair(p)) {
            auto rep = structure(pi);
            bool all_outer = rep.roots.size() == static_cast<size_t>(block_count(pi));
            if (!all_outer) continue;
            for (const cone& k : {o2, l1}) {
                auto rho = k.schedule_point(3);
                auto ns = count_labellings(pi, k, rho, label_mode::nonstrict);
                auto st = count_labellings(pi, k, rho, label_mode::strict);
                CHECK(ns == st);
                long long n = k.interval_count(rho);
                long long expected = 1;
                for (int b = 0; b < block_count(pi); ++b) expected *= n;
                CHECK(ns == expected);
            }
        }
    }
}

TEST_CASE("normalized ratio series approaches the recursive weight") {
    // closed form for the nested pair on the half-line: C(n,2)/n^2
    auto series = v_ratio_series(P(4, {{1, 4}, {2, 3}}), o1, 100);
    CHECK(series.back().second == doctest::Approx(99.0 / 200.0));
    // single pair: ratio is interval count over volume, which tends to 1
    auto single = v_ratio_series(P(2, {{1, 2}}), l1, 40);
    CHECK(single.back().second == doctest::Approx(1.0).epsilon(0.06));
    // orthant d=2 nested pair tends to 1/4
    auto o2series = v_ratio_series(P(4, {{1, 4}, {2, 3}}), o2, 60);
    CHECK(o2series.back().second == doctest::Approx(0.25).epsilon(0.05));

    // error decreases over the second half of a schedule
    double target = to_double(V_of(P(2, {{1, 2}}), o2));
    auto s = v_ratio_series(P(4, {{1, 4}, {2}, {3}}), o2, 30);
    for (size_t i = s.size() / 2; i + 1 < s.size(); ++i)
        CHECK(std::abs(s[i + 1].second - target) <= std::abs(s[i].second - target) + 1e-12);
}

TEST_CASE("terminal ratios match the recursive weights within 5 percent") {
    struct scale { cone k; long long n; };
    std::vector<scale> scales{{o1, 200}, {o2, 150}, {o3, 250}, {l1, 300}};
    for (int p : {2, 4, 6})
        for (const auto& pi : enumerate_pair(p))
            for (const auto& [k, n] : scales) {
                auto rho = k.schedule_point(n);
                double cnt = detail::count_dispatch<double>(pi, k, rho, label_mode::strict);
                double ratio = cnt / std::pow(k.euclid_volume(rho), block_count(pi));
                double target = to_double(V_of(pi, k));
                CHECK(std::abs(ratio - target) / target < 0.05);
            }
}

TEST_CASE("count records") {
    auto rec = make_count_record(P(4, {{1, 4}, {2, 3}}), o1, pt({4}), true);
    CHECK(rec.nonstrict == 10);
    CHECK(rec.strict_count == 6);
    REQUIRE(rec.naive.has_value());
    CHECK(*rec.naive == rec.nonstrict);
    CHECK(rec.strict_count <= rec.nonstrict);
    CHECK(rec.volume == doctest::Approx(4.0));
    CHECK(rec.ratio == doctest::Approx(6.0 / 16.0));

    auto rec2 = make_count_record(P(4, {{1, 4}, {2}, {3}}), o2, pt({2, 2}), true);
    CHECK(rec2.nonstrict == 4);
    CHECK(*rec2.naive == 4);
    CHECK(rec2.ratio == doctest::Approx(4.0 / 4.0));  // reduced to a single pair
}
