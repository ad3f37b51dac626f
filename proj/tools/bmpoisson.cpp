// bmpoisson: moment tables, labelling counts, convergence studies and
// operator-model checks for bm-independent Poisson type limits over the
// three positive-cone families.

#include "bmp/fock.hpp"
#include "bmp/fock_checks.hpp"
#include "bmp/io.hpp"
#include "bmp/moments.hpp"
#include "bmp/reference_tables.hpp"
#include "bmp/single_site.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_infeasible = 2;   // a work cap refused the computation
constexpr int exit_mismatch = 3;     // an internal cross-check disagreed

struct run_config {
    std::string cone_name = "orthant:1";
    std::string p_range = "1..6";
    std::string partition_text;
    std::string rho_text;
    std::string study = "ratio";
    std::string format = "pretty";
    std::vector<double> lambdas;
    int p = 4;
    int coeff = 0;
    int m = 2;
    int steps = 20;
    int pmax = 10;
    long long naive_guard = 10'000'000;
    bool compare_reference = false;
    bool with_naive = false;
    bool exact = false;
    bool poly = false;
    long long count_cap = 3000;
    double fock_cap = 5e6;
    unsigned seed = 12345;  // only sampling-based checks consume this
};

std::pair<int, int> parse_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        int p = std::stoi(s);
        return {p, p};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
}

int cmd_moments(const run_config& cfg) {
    bmp::cone k = bmp::cone::parse(cfg.cone_name);
    auto [plo, phi] = parse_range(cfg.p_range);
    if (plo < 1 || phi < plo) throw CLI::ValidationError("--p", "bad range");

    bool mismatch = false;
    bmp::json jout = bmp::json::array();
    if (cfg.format == "csv") std::cout << "p,cone,exponent,coefficient\n";
    for (int p = plo; p <= phi; ++p) {
        auto m = bmp::moment_poly(p, k);
        if (cfg.format == "json") {
            bmp::json row{{"p", p}, {"cone", k.name()}, {"poly", bmp::to_json(m)}};
            if (cfg.compare_reference) {
                if (auto ref = bmp::reference_entry_for(k.name(), p)) {
                    row["printed"] = bmp::to_json(bmp::reference_poly(*ref));
                    row["status"] = (m == bmp::reference_poly(*ref))
                                        ? "confirmed"
                                        : (ref->flagged ? "flagged-misprint" : "MISMATCH");
                    if (ref->flagged) row["note"] = ref->note;
                }
            }
            jout.push_back(row);
        } else if (cfg.format == "csv") {
            for (const auto& [e, c] : m.coeffs())
                std::cout << p << ',' << k.name() << ',' << e << ',' << bmp::to_string(c) << '\n';
        } else {
            std::cout << "m_" << p << "(λ) = " << m.str() << "   " << bmp::to_json(m).dump();
            for (double l : cfg.lambdas)
                std::cout << "   [λ=" << l << ": " << m.eval(l) << "]";
            if (cfg.compare_reference) {
                if (auto ref = bmp::reference_entry_for(k.name(), p)) {
                    auto printed = bmp::reference_poly(*ref);
                    if (m == printed) {
                        std::cout << "   (confirms published table " << bmp::reference_tables_version
                                  << ")";
                    } else {
                        std::cout << "   (published: " << printed.str()
                                  << (ref->flagged ? "; suspected misprint: " : "; MISMATCH: ")
                                  << ref->note << ")";
                    }
                }
            }
            std::cout << '\n';
        }
        if (cfg.compare_reference) {
            if (auto ref = bmp::reference_entry_for(k.name(), p))
                if (m != bmp::reference_poly(*ref) && !ref->flagged) mismatch = true;
        }
    }
    if (cfg.format == "json") std::cout << jout.dump(2) << '\n';
    return mismatch ? exit_mismatch : exit_ok;
}

int cmd_count(const run_config& cfg) {
    bmp::cone k = bmp::cone::parse(cfg.cone_name);
    bmp::cone_point rho = k.parse_point(cfg.rho_text);
    std::vector<bmp::partition> parts;
    if (!cfg.partition_text.empty())
        parts.push_back(bmp::parse_partition(cfg.partition_text));
    else
        parts = bmp::enumerate_pair_inner_singleton(cfg.p);

    std::cout << bmp::count_record_csv_header() << '\n';
    for (const auto& pi : parts) {
        auto rec = bmp::make_count_record(pi, k, rho, cfg.with_naive, cfg.naive_guard);
        std::cout << bmp::to_csv_row(rec, k) << '\n';
        if (rec.naive && *rec.naive != rec.nonstrict) {
            std::cerr << "count: naive tuple scan disagrees with the labelling count for "
                      << bmp::to_text(pi) << "\n";
            return exit_mismatch;
        }
    }
    return exit_ok;
}

int cmd_converge(const run_config& cfg) {
    bmp::cone k = bmp::cone::parse(cfg.cone_name);
    if (cfg.steps < 2) throw CLI::ValidationError("--steps", "need at least 2");

    struct row {
        int step;
        std::string rho;
        double value, target;
    };
    std::vector<row> rows;
    auto schedule = k.rho_schedule(cfg.steps);
    auto emit = [&] {
        std::cout << "step,rho,value,target,abs_error\n";
        std::cout.precision(12);
        for (const auto& r : rows)
            std::cout << r.step << ',' << bmp::csv_escape(r.rho) << ',' << r.value << ','
                      << r.target << ',' << std::abs(r.value - r.target) << '\n';
    };

    try {
        if (cfg.study == "ratio") {
            auto pi = bmp::parse_partition(
                cfg.partition_text.empty() ? "{{1,4},{2,3}}" : cfg.partition_text);
            double target = bmp::to_double(bmp::V_of(bmp::reduce(pi), k));
            auto series = bmp::v_ratio_series(pi, k, cfg.steps);
            for (size_t i = 0; i < series.size(); ++i)
                rows.push_back({static_cast<int>(i) + 1, k.format_point(series[i].first),
                                series[i].second, target});
        } else if (cfg.study == "moment") {
            auto target_poly = bmp::moment_poly(cfg.p, k);
            double target = bmp::to_double(target_poly.coeff(cfg.coeff));
            for (int i = 0; i < cfg.steps; ++i) {
                const auto& rho = schedule[static_cast<size_t>(i)];
                double value =
                    k.volume_is_rational()
                        ? bmp::to_double(
                              bmp::finite_rho_moment(cfg.p, k, rho, cfg.count_cap).coeff(cfg.coeff))
                        : bmp::finite_rho_moment_real(cfg.p, k, rho, cfg.count_cap).coeff(cfg.coeff);
                rows.push_back({i + 1, k.format_point(rho), value, target});
            }
        } else if (cfg.study == "gamma") {
            double target = bmp::to_double(k.gamma_closed(cfg.m));
            bmp::interval_counter cache(k);
            for (int i = 0; i < cfg.steps; ++i) {
                const auto& rho = schedule[static_cast<size_t>(i)];
                double value = bmp::to_double(bmp::gamma_estimate(k, cfg.m, rho, &cache));
                rows.push_back({i + 1, k.format_point(rho), value, target});
            }
        } else if (cfg.study == "volume") {
            for (int i = 0; i < cfg.steps; ++i) {
                const auto& rho = schedule[static_cast<size_t>(i)];
                rows.push_back({i + 1, k.format_point(rho),
                                static_cast<double>(k.interval_count(rho)) / k.euclid_volume(rho),
                                1.0});
            }
        } else {
            throw CLI::ValidationError("--study", "unknown study '" + cfg.study + "'");
        }
    } catch (const bmp::feasibility_error& e) {
        // emit what exists, mark the truncation, refuse the rest
        emit();
        std::cout << "# truncated: " << e.what() << '\n';
        return exit_infeasible;
    }

    emit();
    // the error trail must settle: nonincreasing over the second half
    for (size_t i = rows.size() / 2; i + 1 < rows.size(); ++i) {
        double a = std::abs(rows[i].value - rows[i].target);
        double b = std::abs(rows[i + 1].value - rows[i + 1].target);
        if (b > a + 1e-12) {
            std::cerr << "converge: error increased between steps " << rows[i].step << " and "
                      << rows[i + 1].step << "\n";
            return exit_mismatch;
        }
    }
    return exit_ok;
}

int cmd_single_site(const run_config& cfg) {
    std::cout << "moments (three computation routes, asserted equal):\n";
    for (int p = 0; p <= cfg.pmax; ++p) {
        auto rec = bmp::single_site_moment_recursive(p);
        if (!(rec == bmp::single_site_moment_enumerated(p)) ||
            !(rec == bmp::single_site_moment_transfer(p))) {
            std::cerr << "single-site: the three routes disagree at p = " << p << "\n";
            return exit_mismatch;
        }
        std::cout << "  a_" << p << "(λ) = " << rec.str() << '\n';
    }
    std::vector<double> lambdas = cfg.lambdas.empty() ? std::vector<double>{0, 0.5, 1, 2} : cfg.lambdas;
    std::cout << "two-atom vacuum law:\n";
    for (double l : lambdas) {
        auto nu = bmp::single_site_measure(l);
        std::cout << "  λ=" << l << ": atoms " << nu.x1 << ", " << nu.x2 << "  weights "
                  << nu.p1 << ", " << nu.p2 << '\n';
    }
    std::cout << "transforms at x = 0.1:\n";
    for (double l : lambdas)
        std::cout << "  λ=" << l << ": M = " << bmp::moment_generating_function(l, 0.1)
                  << "  G = " << bmp::cauchy_transform(l, 0.1) << '\n';
    return exit_ok;
}

int cmd_fock_moment(const run_config& cfg) {
    bmp::cone k = bmp::cone::parse(cfg.cone_name);
    bmp::cone_point rho = k.parse_point(cfg.rho_text);
    double lambda = cfg.lambdas.empty() ? 0.0 : cfg.lambdas.front();
    if (cfg.poly || cfg.exact) {
        auto m = bmp::vacuum_moment_poly(k, rho, cfg.p, cfg.fock_cap);
        if (cfg.poly) std::cout << "m_" << cfg.p << "(λ) = " << m.str() << '\n';
        if (!cfg.poly || !cfg.lambdas.empty())
            std::cout << "m_" << cfg.p << "(" << lambda << ") = "
                      << bmp::to_string(bmp::eval_exact(m, bmp::rational(lambda))) << " = "
                      << m.eval(lambda) << '\n';
    } else {
        std::cout << "m_" << cfg.p << "(" << lambda << ") = "
                  << bmp::vacuum_moment(k, rho, lambda, cfg.p, cfg.fock_cap) << '\n';
    }
    return exit_ok;
}

int cmd_fock_check(const run_config& cfg) {
    bmp::cone k = bmp::cone::parse(cfg.cone_name);
    bmp::cone_point rho = k.parse_point(cfg.rho_text);
    auto rel = bmp::check_relations(k, rho);
    std::cout << "operator relation checks on " << k.name() << ", rho = " << k.format_point(rho)
              << ":\n"
              << rel.summary();
    auto sym = bmp::check_s_self_adjoint(k, rho, cfg.lambdas.empty() ? 1.0 : cfg.lambdas.front(),
                                         cfg.seed);
    std::cout << (sym.pass ? "pass" : "FAIL") << "  " << sym.name << "  (" << sym.cases
              << " cases, seed " << cfg.seed << ")\n";
    auto bm = bmp::bm_independence_preset(k, rho);
    std::cout << "bm-independence preset:\n" << bm.summary();
    bool ok = rel.all_pass() && sym.pass && bm.all_pass();
    std::cout << (ok ? "all checks passed" : "CHECKS FAILED") << '\n';
    return ok ? exit_ok : exit_mismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bm-independence Poisson type limit moments: exact combinatorics, labelling "
                 "counts and a discrete Fock space simulator"};
    app.require_subcommand(1);
    run_config cfg;

    auto add_cone = [&](CLI::App* c) {
        c->add_option("--cone", cfg.cone_name, "cone family:dim, e.g. orthant:2 | lorentz:1 | psd:2");
    };

    auto* moments = app.add_subcommand("moments", "limit moment polynomials m_p");
    add_cone(moments);
    moments->add_option("--p", cfg.p_range, "moment order or range, e.g. 4 or 1..6");
    moments->add_flag("--compare-paper", cfg.compare_reference,
                      "annotate against the published tables, flagging suspected misprints");
    moments->add_option("--format", cfg.format, "pretty|json|csv")
        ->check(CLI::IsMember({"pretty", "json", "csv"}));
    moments->add_option("--lambda", cfg.lambdas, "evaluate at these intensities");

    auto* count = app.add_subcommand("count", "labelling counts as CSV records");
    add_cone(count);
    count->add_option("--rho", cfg.rho_text, "truncation point, e.g. 4 or 3;0 or 2,0,2")->required();
    count->add_option("--partition", cfg.partition_text, "partition text, e.g. {{1,4},{2},{3}}");
    count->add_option("--p", cfg.p, "enumerate all pair/inner-singleton partitions of [p]");
    count->add_flag("--naive", cfg.with_naive, "also run the exhaustive tuple-scan oracle");
    count->add_option("--guard", cfg.naive_guard, "tuple cap for the naive scan");

    auto* converge = app.add_subcommand("converge", "convergence studies along the growth schedule");
    add_cone(converge);
    converge->add_option("--study", cfg.study, "ratio|moment|gamma|volume")
        ->check(CLI::IsMember({"ratio", "moment", "gamma", "volume"}));
    converge->add_option("--steps", cfg.steps, "schedule length");
    converge->add_option("--partition", cfg.partition_text, "partition for the ratio study");
    converge->add_option("--p", cfg.p, "moment order for the moment study");
    converge->add_option("--coeff", cfg.coeff, "intensity exponent tracked in the moment study");
    converge->add_option("--m", cfg.m, "volume characteristic index for the gamma study");
    converge->add_option("--cap", cfg.count_cap, "interval-size cap for counting studies");

    auto* single = app.add_subcommand("single-site", "one-site moments, vacuum law and transforms");
    single->add_option("--pmax", cfg.pmax, "largest moment order");
    single->add_option("--lambda", cfg.lambdas, "intensities for the vacuum law table");

    auto* fockm = app.add_subcommand("fock-moment", "vacuum moment of the normalized operator sum");
    add_cone(fockm);
    fockm->add_option("--rho", cfg.rho_text, "truncation point")->required();
    fockm->add_option("--p", cfg.p, "moment order");
    fockm->add_option("--lambda", cfg.lambdas, "conservation intensity");
    fockm->add_flag("--exact", cfg.exact, "exact rational evaluation");
    fockm->add_flag("--poly", cfg.poly, "print the full intensity polynomial");
    fockm->add_option("--cap", cfg.fock_cap, "reachable-state cap");

    auto* fockc = app.add_subcommand("fock-check", "operator identities and bm-independence presets");
    add_cone(fockc);
    fockc->add_option("--rho", cfg.rho_text, "truncation point")->required();
    fockc->add_option("--lambda", cfg.lambdas, "intensity for the symmetry check");
    fockc->add_option("--seed", cfg.seed, "seed for the random-state symmetry check");

    CLI11_PARSE(app, argc, argv);

    try {
        if (moments->parsed()) return cmd_moments(cfg);
        if (count->parsed()) return cmd_count(cfg);
        if (converge->parsed()) return cmd_converge(cfg);
        if (single->parsed()) return cmd_single_site(cfg);
        if (fockm->parsed()) return cmd_fock_moment(cfg);
        if (fockc->parsed()) return cmd_fock_check(cfg);
    } catch (const bmp::feasibility_error& e) {
        std::cerr << "refused: " << e.what() << '\n';
        return exit_infeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_ok;
}
