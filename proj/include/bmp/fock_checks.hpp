#pragma once

#include "bmp/fock.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace bmp {

// ---- executable checks of the operator identities ------------------------

struct check_item {
    std::string name;
    bool pass = true;
    std::string witness;  // first failing configuration, empty when passing
    long long cases = 0;
};

struct check_report {
    std::vector<check_item> items;

    bool all_pass() const {
        return std::all_of(items.begin(), items.end(), [](const auto& i) { return i.pass; });
    }
    std::string summary() const {
        std::ostringstream os;
        for (const auto& i : items) {
            os << (i.pass ? "pass" : "FAIL") << "  " << i.name << "  (" << i.cases << " cases)";
            if (!i.pass) os << "  witness: " << i.witness;
            os << "\n";
        }
        return os.str();
    }
};

// every strictly decreasing chain with entries in [0,rho], length <= maxlen,
// vacuum included
inline std::vector<chain_vector> basis_chains(const cone& k, const cone_point& rho, int maxlen) {
    auto pts = k.interval_lattice(rho);
    std::vector<chain_vector> out{chain_vector{}};
    auto extend = [&](auto&& self, const chain_vector& ch) -> void {
        if (static_cast<int>(ch.points.size()) == maxlen) return;
        for (const auto& q : pts) {
            if (!ch.points.empty() && !k.lt(q, ch.points.back())) continue;
            chain_vector nc = ch;
            nc.points.push_back(q);
            out.push_back(nc);
            self(self, nc);
        }
    };
    extend(extend, chain_vector{});
    return out;
}

// Verifies, on every basis chain: the vanishing products of same-kind ladder
// operators at comparable points, the vanishing mixed products at distinct
// points, conservation = creation o annihilation on the chain sector,
// mutual adjointness, and that operators keep chains strictly decreasing.
inline check_report check_relations(const cone& k, const cone_point& rho, int maxlen = 4) {
    auto pts = k.interval_lattice(rho);
    auto chains = basis_chains(k, rho, maxlen);
    check_report rep;

    auto state_of = [](const chain_vector& ch) {
        fock_state<rational> s;
        s.add(ch, rational(1));
        return s;
    };
    auto witness = [&](const cone_point& xi, const cone_point& eta, const chain_vector& ch) {
        return "xi=" + k.format_point(xi) + " eta=" + k.format_point(eta) +
               " chain=" + format_chain(k, ch);
    };

    check_item up_up{"creation pair vanishes upward: A+(eta) A+(xi) = 0 when xi >= eta"};
    check_item down_down{"annihilation pair vanishes: A-(xi) A-(eta) = 0 when xi >= eta"};
    for (const auto& xi : pts)
        for (const auto& eta : pts) {
            if (!k.leq(eta, xi)) continue;
            for (const auto& ch : chains) {
                ++up_up.cases;
                ++down_down.cases;
                auto s = state_of(ch);
                if (!apply(k, fock_op::creation, eta, apply(k, fock_op::creation, xi, s)).is_zero() &&
                    up_up.pass) {
                    up_up.pass = false;
                    up_up.witness = witness(xi, eta, ch);
                }
                if (!apply(k, fock_op::annihilation, xi, apply(k, fock_op::annihilation, eta, s))
                         .is_zero() &&
                    down_down.pass) {
                    down_down.pass = false;
                    down_down.witness = witness(xi, eta, ch);
                }
            }
        }
    rep.items.push_back(up_up);
    rep.items.push_back(down_down);

    check_item mixed{"mixed products vanish at distinct points: A-A0, A0A+, A-A+, A0A0"};
    for (const auto& xi : pts)
        for (const auto& eta : pts) {
            if (xi == eta) continue;
            for (const auto& ch : chains) {
                ++mixed.cases;
                auto s = state_of(ch);
                bool bad =
                    !apply(k, fock_op::annihilation, xi, apply(k, fock_op::conservation, eta, s)).is_zero() ||
                    !apply(k, fock_op::conservation, xi, apply(k, fock_op::creation, eta, s)).is_zero() ||
                    !apply(k, fock_op::annihilation, xi, apply(k, fock_op::creation, eta, s)).is_zero() ||
                    !apply(k, fock_op::conservation, xi, apply(k, fock_op::conservation, eta, s)).is_zero();
                if (bad && mixed.pass) {
                    mixed.pass = false;
                    mixed.witness = witness(xi, eta, ch);
                }
            }
        }
    rep.items.push_back(mixed);

    check_item sub{"conservation factorizes on the chain sector: A0 = A+ A-"};
    for (const auto& xi : pts)
        for (const auto& ch : chains) {
            ++sub.cases;
            auto s = state_of(ch);
            auto lhs = apply(k, fock_op::conservation, xi, s);
            auto rhs = apply(k, fock_op::creation, xi, apply(k, fock_op::annihilation, xi, s));
            if (!(lhs == rhs) && sub.pass) {
                sub.pass = false;
                sub.witness = "xi=" + k.format_point(xi) + " chain=" + format_chain(k, ch);
            }
        }
    rep.items.push_back(sub);

    check_item adj{"adjointness: <A+ u, w> = <u, A- w>, conservation self-adjoint"};
    for (const auto& xi : pts)
        for (const auto& u : chains)
            for (const auto& w : chains) {
                ++adj.cases;
                auto su = state_of(u), sw = state_of(w);
                bool ok = apply(k, fock_op::creation, xi, su).inner(sw) ==
                              su.inner(apply(k, fock_op::annihilation, xi, sw)) &&
                          apply(k, fock_op::conservation, xi, su).inner(sw) ==
                              su.inner(apply(k, fock_op::conservation, xi, sw));
                if (!ok && adj.pass) {
                    adj.pass = false;
                    adj.witness = "xi=" + k.format_point(xi) + " u=" + format_chain(k, u) +
                                  " w=" + format_chain(k, w);
                }
            }
    rep.items.push_back(adj);

    check_item valid{"operators preserve strictly decreasing chains"};
    for (const auto& xi : pts)
        for (const auto& ch : chains)
            for (auto op : {fock_op::creation, fock_op::annihilation, fock_op::conservation}) {
                ++valid.cases;
                auto result = apply(k, op, xi, state_of(ch));
                for (const auto& [oc, c] : result.terms())
                    if (!chain_is_valid(k, oc) && valid.pass) {
                        valid.pass = false;
                        valid.witness = "xi=" + k.format_point(xi) + " chain=" + format_chain(k, ch);
                    }
            }
    rep.items.push_back(valid);

    return rep;
}

// numerical self-adjointness of S on pseudo-random states (fixed seed)
inline check_item check_s_self_adjoint(const cone& k, const cone_point& rho, double lambda,
                                       unsigned seed = 12345, int trials = 32, double tol = 1e-12) {
    auto chains = basis_chains(k, rho, 3);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_int_distribution<size_t> pick(0, chains.size() - 1);
    check_item item{"S is symmetric on random states"};
    for (int t = 0; t < trials; ++t) {
        fock_state<double> u, w;
        for (int j = 0; j < 4; ++j) {
            u.add(chains[pick(rng)], coeff(rng));
            w.add(chains[pick(rng)], coeff(rng));
        }
        ++item.cases;
        double lhs = apply_S(k, rho, lambda, u).inner(w);
        double rhs = u.inner(apply_S(k, rho, lambda, w));
        if (std::abs(lhs - rhs) > tol && item.pass) {
            item.pass = false;
            item.witness = "trial " + std::to_string(t) + ": " + std::to_string(lhs) +
                           " vs " + std::to_string(rhs);
        }
    }
    return item;
}

// ---- bm-independence ------------------------------------------------------

// element of the *-algebra at one lattice point: rational combination of
// ladder-operator words, optionally recentred by its vacuum expectation
struct site_op {
    struct monomial {
        rational coeff;
        std::vector<fock_op> word;  // written order; word.back() acts first
    };
    std::vector<monomial> monomials;
    bool centered = false;
    std::string label;
};

inline fock_state<rational> apply_word(const cone& k, const std::vector<fock_op>& word,
                                       const cone_point& xi, fock_state<rational> s) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) s = apply(k, *it, xi, s);
    return s;
}

inline rational phi_uncentered(const cone& k, const site_op& w, const cone_point& xi) {
    rational acc(0);
    for (const auto& m : w.monomials)
        acc += m.coeff *
               apply_word(k, m.word, xi, fock_state<rational>::vacuum(rational(1)))
                   .coefficient(chain_vector{});
    return acc;
}

inline fock_state<rational> apply_site_op(const cone& k, const site_op& w, const cone_point& xi,
                                          const fock_state<rational>& s) {
    fock_state<rational> out;
    for (const auto& m : w.monomials) out += apply_word(k, m.word, xi, s).scaled(m.coeff);
    if (w.centered) out += s.scaled(rational(0) - phi_uncentered(k, w, xi));
    return out;
}

inline rational phi_site_op(const cone& k, const site_op& w, const cone_point& xi) {
    return apply_site_op(k, w, xi, fock_state<rational>::vacuum(rational(1)))
        .coefficient(chain_vector{});
}

// small standard families used by the preset checks
inline std::vector<site_op> bm_word_family_basic() {
    using O = fock_op;
    auto one = [](std::vector<O> word, std::string label) {
        return site_op{{{rational(1), std::move(word)}}, false, std::move(label)};
    };
    site_op sum{{{rational(1), {O::creation}}, {rational(1), {O::annihilation}}}, false, "A+ + A-"};
    return {one({O::creation}, "A+"), one({O::annihilation}, "A-"), one({O::conservation}, "A0"), sum};
}

inline std::vector<site_op> bm_word_family_extended() {
    using O = fock_op;
    auto fam = bm_word_family_basic();
    fam.push_back(site_op{{{rational(1), {O::annihilation, O::creation}}}, false, "A- A+"});
    fam.push_back(site_op{{{rational(1), {O::creation, O::annihilation}}}, false, "A+ A-"});
    fam.push_back(site_op{{{rational(1), {O::creation}},
                           {rational(1), {O::annihilation}},
                           {rational(1), {O::conservation}}},
                          false,
                          "A+ + A- + A0"});
    fam.push_back(site_op{{{rational(1), {O::annihilation, O::creation}}}, true, "A- A+ - phi"});
    return fam;
}

// words with nonzero vacuum expectation included, for state factorization
inline std::vector<site_op> bm_word_family_bm2() {
    using O = fock_op;
    std::vector<site_op> fam;
    fam.push_back(site_op{{{rational(1), {O::annihilation, O::creation}}}, false, "A- A+"});
    fam.push_back(site_op{{{rational(1), {O::creation}}, {rational(1), {O::annihilation}}}, false,
                          "A+ + A-"});
    fam.push_back(site_op{{{rational(1), {O::creation}},
                           {rational(1), {O::annihilation}},
                           {rational(1), {O::conservation}}},
                          false,
                          "A+ + A- + A0"});
    fam.push_back(site_op{{{rational(1), {O::annihilation, O::creation}}}, true, "A- A+ - phi"});
    return fam;
}

enum class bm_pattern {
    bm1_below_above,    // xi < rho > eta
    bm1_incomp_above,   // xi ~/~ rho > eta
    bm1_below_incomp,   // xi < rho ~/~ eta
    bm2_chain_template  // decreasing, then incomparable, then increasing
};

inline const char* bm_pattern_name(bm_pattern p) {
    switch (p) {
        case bm_pattern::bm1_below_above: return "BM1 xi<rho>eta";
        case bm_pattern::bm1_incomp_above: return "BM1 xi~rho>eta";
        case bm_pattern::bm1_below_incomp: return "BM1 xi<rho~eta";
        case bm_pattern::bm2_chain_template: return "BM2 template";
    }
    return "?";
}

// classifies the point list; throws when it fits neither BM1 nor BM2
inline bm_pattern classify_bm_pattern(const cone& k, const std::vector<cone_point>& pts) {
    if (pts.size() == 3) {
        const auto& xi = pts[0];
        const auto& mid = pts[1];
        const auto& eta = pts[2];
        bool xi_lt = k.lt(xi, mid), xi_inc = !k.comparable(xi, mid);
        bool eta_lt = k.lt(eta, mid), eta_inc = !k.comparable(eta, mid);
        if (xi_lt && eta_lt) return bm_pattern::bm1_below_above;
        if (xi_inc && eta_lt) return bm_pattern::bm1_incomp_above;
        if (xi_lt && eta_inc) return bm_pattern::bm1_below_incomp;
    }
    // Greedy: maximal strictly decreasing prefix, then maximal run of
    // consecutive incomparables, then a strictly increasing tail. The points
    // must be pairwise distinct: a repeated point revisits its algebra, and
    // the factorization template does not cover that.
    for (size_t a = 0; a < pts.size(); ++a)
        for (size_t b = a + 1; b < pts.size(); ++b)
            if (pts[a] == pts[b])
                throw std::invalid_argument(
                    "check_bm_independence: repeated point in a factorization template");
    size_t i = 0;
    while (i + 1 < pts.size() && k.lt(pts[i + 1], pts[i])) ++i;
    while (i + 1 < pts.size() && !k.comparable(pts[i], pts[i + 1])) ++i;
    while (i + 1 < pts.size() && k.lt(pts[i], pts[i + 1])) ++i;
    if (i + 1 == pts.size()) return bm_pattern::bm2_chain_template;
    throw std::invalid_argument("check_bm_independence: points fit neither a BM1 triple nor the BM2 template");
}

// For BM1 triples: the operator identity a1 a2 a3 = phi(a2) a1 a3 over the
// supplied word families, verified on every basis chain. For BM2 templates:
// the vacuum factorization phi(a1...an) = prod phi(aj). Exact arithmetic.
inline check_report check_bm_independence(const cone& k, const cone_point& rho,
                                          const std::vector<cone_point>& points,
                                          const std::vector<std::vector<site_op>>& words,
                                          int chain_len = 3) {
    if (points.empty()) throw std::invalid_argument("check_bm_independence: no points");
    for (const auto& p : points) k.require_in_cone(p, "check_bm_independence");
    if (words.size() != points.size())
        throw std::invalid_argument("check_bm_independence: need one word family per point");
    bm_pattern pat = classify_bm_pattern(k, points);

    auto point_list = [&] {
        std::string s;
        for (size_t i = 0; i < points.size(); ++i) s += (i ? " " : "") + k.format_point(points[i]);
        return s;
    }();

    check_report rep;
    if (pat != bm_pattern::bm2_chain_template) {
        auto chains = basis_chains(k, rho, chain_len);
        check_item item{std::string(bm_pattern_name(pat)) + " at (" + point_list + ")"};
        for (const auto& a1 : words[0])
            for (const auto& a2 : words[1])
                for (const auto& a3 : words[2]) {
                    rational phi2 = phi_site_op(k, a2, points[1]);
                    for (const auto& ch : chains) {
                        ++item.cases;
                        fock_state<rational> s;
                        s.add(ch, rational(1));
                        auto inner3 = apply_site_op(k, a3, points[2], s);
                        auto lhs = apply_site_op(k, a1, points[0],
                                                 apply_site_op(k, a2, points[1], inner3));
                        auto rhs = apply_site_op(k, a1, points[0], inner3).scaled(phi2);
                        if (!(lhs == rhs) && item.pass) {
                            item.pass = false;
                            item.witness = "a1=" + a1.label + " a2=" + a2.label + " a3=" + a3.label +
                                           " chain=" + format_chain(k, ch);
                        }
                    }
                }
        rep.items.push_back(item);
        return rep;
    }

    check_item item{std::string("BM2 factorization at (") + point_list + ")"};
    std::vector<size_t> choice(points.size(), 0);
    for (;;) {
        auto s = fock_state<rational>::vacuum(rational(1));
        rational prod(1);
        for (size_t j = points.size(); j-- > 0;) {
            const auto& w = words[j][choice[j]];
            s = apply_site_op(k, w, points[j], s);
            prod *= phi_site_op(k, w, points[j]);
        }
        ++item.cases;
        if (s.coefficient(chain_vector{}) != prod && item.pass) {
            item.pass = false;
            std::string labels;
            for (size_t j = 0; j < points.size(); ++j)
                labels += (j ? ", " : "") + words[j][choice[j]].label;
            item.witness = labels;
        }
        size_t j = points.size();
        while (j-- > 0) {
            if (++choice[j] < words[j].size()) break;
            choice[j] = 0;
            if (j == 0) {
                rep.items.push_back(item);
                return rep;
            }
        }
    }
}

// Preset sweep: scans the interval for instances of each BM1 pattern and for
// BM2 templates (decreasing chains, antichains, increasing chains, mixed),
// then runs the checks with the standard word families.
inline check_report bm_independence_preset(const cone& k, const cone_point& rho,
                                           size_t instance_cap = 12) {
    auto pts = k.interval_lattice(rho);
    check_report rep;

    auto side = bm_word_family_basic();
    auto mid = bm_word_family_extended();

    size_t n_below_above = 0, n_incomp_above = 0, n_below_incomp = 0;
    for (const auto& xi : pts)
        for (const auto& mid_pt : pts)
            for (const auto& eta : pts) {
                if (xi == mid_pt || eta == mid_pt) continue;
                bool xi_lt = k.lt(xi, mid_pt), xi_inc = !k.comparable(xi, mid_pt);
                bool eta_lt = k.lt(eta, mid_pt), eta_inc = !k.comparable(eta, mid_pt);
                size_t* counter = nullptr;
                if (xi_lt && eta_lt) counter = &n_below_above;
                else if (xi_inc && eta_lt) counter = &n_incomp_above;
                else if (xi_lt && eta_inc) counter = &n_below_incomp;
                if (!counter || *counter >= instance_cap) continue;
                ++*counter;
                auto sub = check_bm_independence(k, rho, {xi, mid_pt, eta}, {side, mid, side});
                rep.items.insert(rep.items.end(), sub.items.begin(), sub.items.end());
            }

    auto bm2 = bm_word_family_bm2();
    auto run_bm2 = [&](const std::vector<cone_point>& tuple) {
        std::vector<std::vector<site_op>> fams(tuple.size(), bm2);
        auto sub = check_bm_independence(k, rho, tuple, fams);
        rep.items.insert(rep.items.end(), sub.items.begin(), sub.items.end());
    };

    // decreasing and increasing chains of length 2 and 3
    size_t found = 0;
    for (const auto& a : pts) {
        for (const auto& b : pts) {
            if (found >= instance_cap) break;
            if (k.lt(b, a)) {
                run_bm2({a, b});
                run_bm2({b, a});
                ++found;
            }
        }
        if (found >= instance_cap) break;
    }
    found = 0;
    for (const auto& a : pts) {
        for (const auto& b : pts)
            for (const auto& c : pts) {
                if (found < instance_cap && k.lt(b, a) && k.lt(c, b)) {
                    run_bm2({a, b, c});
                    run_bm2({c, b, a});
                    ++found;
                }
            }
        if (found >= instance_cap) break;
    }
    // antichains of size 2 and 3
    found = 0;
    for (size_t i = 0; i < pts.size() && found < instance_cap; ++i)
        for (size_t j = i + 1; j < pts.size() && found < instance_cap; ++j)
            if (!k.comparable(pts[i], pts[j])) {
                run_bm2({pts[i], pts[j]});
                ++found;
            }
    found = 0;
    for (size_t i = 0; i < pts.size() && found < 4; ++i)
        for (size_t j = i + 1; j < pts.size() && found < 4; ++j)
            for (size_t l = j + 1; l < pts.size() && found < 4; ++l)
                if (!k.comparable(pts[i], pts[j]) && !k.comparable(pts[j], pts[l]) &&
                    !k.comparable(pts[i], pts[l])) {
                    run_bm2({pts[i], pts[j], pts[l]});
                    ++found;
                }
    // mixed template: down, incomparable, up (endpoints must differ, or the
    // tuple would revisit the first algebra)
    found = 0;
    for (const auto& a : pts) {
        for (const auto& b : pts)
            for (const auto& c : pts)
                for (const auto& d : pts) {
                    if (found >= 4) break;
                    if (a != d && k.lt(b, a) && !k.comparable(b, c) && k.lt(c, d)) {
                        run_bm2({a, b, c, d});
                        ++found;
                    }
                }
        if (found >= 4) break;
    }

    if (rep.items.empty())
        rep.items.push_back(check_item{"bm-independence preset: no pattern instances in interval"});
    return rep;
}

}  // namespace bmp
