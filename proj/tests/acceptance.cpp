// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Every tolerance is pinned here, not configurable.

#include "bmp/fock.hpp"
#include "bmp/fock_checks.hpp"
#include "bmp/moments.hpp"
#include "bmp/reference_tables.hpp"
#include "bmp/single_site.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace bmp;

namespace {

int failures = 0;

void run_criterion(int number, const std::string& title, double budget_seconds,
                   const std::function<bool(std::string&)>& body) {
    std::string detail;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > budget_seconds) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    std::printf("%s  criterion %d: %s  (%.2fs of %.0fs)%s%s\n", ok ? "PASS" : "FAIL", number,
                title.c_str(), dt, budget_seconds, detail.empty() ? "" : "  -- ", detail.c_str());
    if (!ok) ++failures;
}

rational_polynomial poly_of(std::vector<std::pair<int, const char*>> cs) {
    rational_polynomial q;
    for (auto& [e, c] : cs) q.set(e, parse_rational(c));
    return q;
}

cone_point pt(std::vector<long long> c) { return cone_point{std::move(c)}; }

const cone o1{cone_family::orthant, 1};
const cone o2{cone_family::orthant, 2};
const cone o3{cone_family::orthant, 3};
const cone l1{cone_family::lorentz, 1};
const cone l2{cone_family::lorentz, 2};
const cone s2{cone_family::psd, 2};

}  // namespace

int main() {
    std::printf("acceptance: exact bm-Poisson moment machinery\n");

    run_criterion(1, "published moment tables reproduced exactly (one flagged misprint)", 1.0,
                  [](std::string& detail) {
                      const auto derived_l2_m5 = poly_of({{1, "82/35"}, {3, "1"}});
                      for (const cone& k : {o2, o3, l2}) {
                          for (int p = 1; p <= 6; ++p) {
                              auto computed = moment_poly(p, k);
                              auto ref = reference_entry_for(k.name(), p);
                              if (!ref) {
                                  detail = "missing reference entry " + k.name() + " p=" + std::to_string(p);
                                  return false;
                              }
                              if (k.name() == "lorentz:2" && p == 5) {
                                  if (!ref->flagged || computed != derived_l2_m5 ||
                                      computed == reference_poly(*ref)) {
                                      detail = "flagged entry not handled as derived 82/35";
                                      return false;
                                  }
                                  continue;
                              }
                              if (computed != reference_poly(*ref)) {
                                  detail = k.name() + " p=" + std::to_string(p) + ": computed " +
                                           computed.str() + " vs printed " + reference_poly(*ref).str();
                                  return false;
                              }
                          }
                      }
                      return true;
                  });

    run_criterion(2, "worked recursive-weight example: 1/64, 1/512 and flagged 8/5005", 1.0,
                  [](std::string& detail) {
                      auto pi = make_partition(15, {{1, 15}, {2}, {3, 9}, {4, 8}, {5}, {6}, {7},
                                                    {10, 13}, {11}, {12}, {14}});
                      auto red = reduce(pi);
                      auto ex = reference_block_weight_example();
                      if (V_of(red, o2) != parse_rational(ex.orthant2)) {
                          detail = "quarter-plane weight " + to_string(V_of(red, o2));
                          return false;
                      }
                      if (V_of(red, o3) != parse_rational(ex.orthant3)) {
                          detail = "octant weight " + to_string(V_of(red, o3));
                          return false;
                      }
                      auto w = V_of(red, l2);
                      if (w != parse_rational(ex.lorentz2_derived) ||
                          w == parse_rational(ex.lorentz2_printed)) {
                          detail = "light-cone weight " + to_string(w) + " (printed value is a misprint)";
                          return false;
                      }
                      return true;
                  });

    run_criterion(
        3, "operator truncations equal combinatorial truncations exactly (p<=6)", 120.0,
        [](std::string& detail) {
            for (int p = 1; p <= 6; ++p)
                for (long long n = 1; n <= 6; ++n)
                    if (vacuum_moment_poly(o1, pt({n}), p) != finite_rho_moment(p, o1, pt({n}))) {
                        detail = "half-line mismatch at p=" + std::to_string(p) +
                                 " n=" + std::to_string(n);
                        return false;
                    }
            for (int p = 1; p <= 6; ++p)
                for (long long a = 1; a <= 3; ++a)
                    for (long long b = 1; b <= 3; ++b)
                        if (vacuum_moment_poly(o2, pt({a, b}), p) !=
                            finite_rho_moment(p, o2, pt({a, b}))) {
                            detail = "quarter-plane mismatch at p=" + std::to_string(p) + " rho=(" +
                                     std::to_string(a) + "," + std::to_string(b) + ")";
                            return false;
                        }
            return true;
        });

    run_criterion(4, "naive tuple scan equals nonstrict labelling count (p<=5, rho<=4)", 60.0,
                  [](std::string& detail) {
                      for (int p = 2; p <= 5; ++p)
                          for (const auto& pi : enumerate_pair_inner_singleton(p))
                              for (long long r = 1; r <= 4; ++r)
                                  if (count_sequences_naive(pi, o1, pt({r})) !=
                                      count_labellings(pi, o1, pt({r}), label_mode::nonstrict)) {
                                      detail = to_text(pi) + " at rho=" + std::to_string(r);
                                      return false;
                                  }
                      return true;
                  });

    run_criterion(
        5, "desk-scale convergence: moment constant, ratio, gamma estimates", 60.0,
        [](std::string& detail) {
            for (long long n : {2, 17, 200}) {
                auto m4 = finite_rho_moment(4, o1, pt({n}));
                if (m4.coeff(0) != rational(1) + rational(n - 1) / rational(2 * n)) {
                    detail = "fourth-moment constant at n=" + std::to_string(n);
                    return false;
                }
            }
            double c200 = to_double(finite_rho_moment(4, o1, pt({200})).coeff(0));
            if (std::abs(c200 - 1.5) >= 0.003) {
                detail = "fourth-moment constant at 200: " + std::to_string(c200);
                return false;
            }
            auto nested = make_partition(4, {{1, 4}, {2, 3}});
            double ratio =
                static_cast<double>(count_labellings(nested, o1, pt({200}), label_mode::strict)) /
                std::pow(o1.euclid_volume(pt({200})), 2);
            if (std::abs(ratio - 0.5) >= 0.003) {
                detail = "nested-pair ratio at 200: " + std::to_string(ratio);
                return false;
            }
            interval_counter cache(l1);
            for (int m = 1; m <= 4; ++m) {
                double est = to_double(gamma_estimate(l1, m, pt({60, 0}), &cache));
                double target = 1.0 / (m * m);
                if (std::abs(est - target) >= 0.05) {
                    detail = "gamma estimate m=" + std::to_string(m) + ": " + std::to_string(est);
                    return false;
                }
            }
            return true;
        });

    run_criterion(
        6, "single-site moments: three routes, Fibonacci, vacuum law, series", 5.0,
        [](std::string& detail) {
            for (int p = 0; p <= 16; ++p) {
                auto rec = single_site_moment_recursive(p);
                if (rec != single_site_moment_enumerated(p) || rec != single_site_moment_transfer(p)) {
                    detail = "route mismatch at p=" + std::to_string(p);
                    return false;
                }
            }
            long long fib[17] = {0, 1};
            for (int i = 2; i <= 16; ++i) fib[i] = fib[i - 1] + fib[i - 2];
            for (int p = 1; p <= 16; ++p)
                if (eval_exact(single_site_moment_recursive(p), rational(1)) != rational(fib[p - 1])) {
                    detail = "unit-intensity value at p=" + std::to_string(p);
                    return false;
                }
            const std::vector<std::pair<double, rational>> lambdas = {
                {0.0, rational(0)}, {0.5, make_rational(1, 2)}, {1.0, rational(1)}, {2.0, rational(2)}};
            for (const auto& [ld, lq] : lambdas) {
                auto nu = single_site_measure(ld);
                for (int p = 0; p <= 10; ++p) {
                    double expected = to_double(eval_exact(single_site_moment_recursive(p), lq));
                    if (std::abs(nu.moment(p) - expected) >= 1e-9) {
                        detail = "vacuum-law moment p=" + std::to_string(p);
                        return false;
                    }
                }
                auto series = mgf_series(lq, 11);
                for (int p = 0; p <= 10; ++p) {
                    rational expected = eval_exact(single_site_moment_recursive(p), lq);
                    if (std::abs(to_double(series[static_cast<size_t>(p)] - expected)) > 1e-12) {
                        detail = "series coefficient p=" + std::to_string(p);
                        return false;
                    }
                }
            }
            return true;
        });

    run_criterion(7, "vanishing-intensity moments: recursion equals partition sum (n<=6)", 5.0,
                  [](std::string& detail) {
                      for (const cone& k : {o1, o2, o3, l1, l2, s2})
                          for (int n = 0; n <= 6; ++n)
                              if (!clt_moment(n, k).equal()) {
                                  detail = k.name() + " at n=" + std::to_string(n);
                                  return false;
                              }
                      struct want { const cone& k; const char* v; };
                      for (const auto& [k, v] : std::vector<want>{{o1, "5/2"},
                                                                  {o2, "59/36"},
                                                                  {o3, "31/24"},
                                                                  {l2, "443/350"}})
                          if (clt_moment(3, k).recursion != parse_rational(v)) {
                              detail = std::string("sixth-moment constant for ") + k.name();
                              return false;
                          }
                      return true;
                  });

    run_criterion(8, "operator identities and bm-independence presets (four cones)", 60.0,
                  [](std::string& detail) {
                      for (auto& [k, rho] : std::vector<std::pair<cone, cone_point>>{
                               {o1, pt({4})}, {o2, pt({2, 2})}, {l1, pt({3, 0})}, {s2, pt({2, 0, 2})}}) {
                          auto rel = check_relations(k, rho);
                          if (!rel.all_pass()) {
                              detail = k.name() + " relations:\n" + rel.summary();
                              return false;
                          }
                          auto bm = bm_independence_preset(k, rho);
                          if (!bm.all_pass()) {
                              detail = k.name() + " bm preset:\n" + bm.summary();
                              return false;
                          }
                      }
                      return true;
                  });

    run_criterion(
        9, "adjudication: disputed sixth-moment coefficient converges to 6", 60.0,
        [](std::string& detail) {
            double prev = -1;
            double last = 0;
            for (long long n = 2; n <= 40; ++n) {
                double c = to_double(finite_rho_moment(6, o1, pt({n})).coeff(2));
                if (c < prev - 1e-12) {
                    detail = "sequence not monotone at n=" + std::to_string(n);
                    return false;
                }
                prev = c;
                last = c;
            }
            // rises from 9/2 at n=2 and passes well beyond it, toward 6
            if (last <= 5.5 || std::abs(last - (6.0 - 3.0 / 40)) > 1e-9) {
                detail = "terminal coefficient " + std::to_string(last);
                return false;
            }
            std::ostringstream verdict;
            verdict << "verdict: degree-2 coefficient of the sixth half-line moment climbs "
                       "monotonically from 4.5 (n=2) to "
                    << last << " (n=40), matching 6 - 3/n; the limit is 6, not the printed 9/2";
            detail = verdict.str();
            return true;
        });

    std::printf("%s: %d of 9 criteria passed\n", failures ? "FAILURE" : "SUCCESS", 9 - failures);
    return failures ? 1 : 0;
}
