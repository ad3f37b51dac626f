#pragma once

#include "bmp/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <compare>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace bmp {

enum class cone_family { orthant, lorentz, psd };

// One lattice point. Coordinate layout depends on the cone family:
//   orthant d   : (x_1, ..., x_d), all >= 1
//   lorentz d   : (t, z_1, ..., z_d), t >= 1, t^2 >= |z|^2
//   psd d=2     : (a, b, c) for the symmetric matrix [[a, b], [b, c]]
struct cone_point {
    std::vector<long long> c;

    auto operator<=>(const cone_point&) const = default;
};

// volume constants for the continuous interval [0, rho]:
// lorentz d: v = alpha_d (t^2 - |z|^2)^((d+1)/2); psd d=2: v = beta_2 det^(3/2)
inline constexpr double lorentz_alpha_1 = 0.5;
inline constexpr double lorentz_alpha_2 = std::numbers::pi / 12.0;  // double cone
inline constexpr double psd_beta_2 = std::numbers::pi / 6.0;

class cone {
public:
    cone(cone_family family, int d) : family_(family), d_(d) {
        switch (family_) {
            case cone_family::orthant:
                if (d_ < 1) throw std::invalid_argument("cone: orthant needs d >= 1");
                break;
            case cone_family::lorentz:
                if (d_ < 1 || d_ > 2) throw std::invalid_argument("cone: lorentz supports d in {1,2}");
                break;
            case cone_family::psd:
                if (d_ != 2) throw std::invalid_argument("cone: psd supports d = 2");
                break;
        }
    }

    cone_family family() const { return family_; }
    int dim() const { return d_; }

    // flag syntax "orthant:2", "lorentz:1", "psd:2"
    static cone parse(const std::string& s) {
        auto colon = s.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("cone: expected family:d, got '" + s + "'");
        std::string fam = s.substr(0, colon);
        int d = std::stoi(s.substr(colon + 1));
        if (fam == "orthant") return cone(cone_family::orthant, d);
        if (fam == "lorentz") return cone(cone_family::lorentz, d);
        if (fam == "psd") return cone(cone_family::psd, d);
        throw std::invalid_argument("cone: unknown family '" + fam + "'");
    }

    std::string name() const {
        switch (family_) {
            case cone_family::orthant: return "orthant:" + std::to_string(d_);
            case cone_family::lorentz: return "lorentz:" + std::to_string(d_);
            case cone_family::psd: return "psd:" + std::to_string(d_);
        }
        return {};
    }

    size_t point_size() const {
        switch (family_) {
            case cone_family::orthant: return static_cast<size_t>(d_);
            case cone_family::lorentz: return static_cast<size_t>(d_) + 1;
            case cone_family::psd: return 3;
        }
        return 0;
    }

    // lattice membership; the apex is excluded in every family so that each
    // label is a nonzero cone element
    bool contains(const cone_point& x) const {
        check_size(x);
        switch (family_) {
            case cone_family::orthant:
                return std::all_of(x.c.begin(), x.c.end(), [](long long v) { return v >= 1; });
            case cone_family::lorentz: {
                if (x.c[0] < 1) return false;
                long long s = 0;
                for (size_t i = 1; i < x.c.size(); ++i) s += x.c[i] * x.c[i];
                return x.c[0] * x.c[0] >= s;
            }
            case cone_family::psd: {
                long long a = x.c[0], b = x.c[1], cc = x.c[2];
                if (a < 0 || cc < 0 || a * cc - b * b < 0) return false;
                return !(a == 0 && b == 0 && cc == 0);
            }
        }
        return false;
    }

    // b - a lies in the closed cone
    bool leq(const cone_point& a, const cone_point& b) const {
        check_size(a);
        check_size(b);
        switch (family_) {
            case cone_family::orthant:
                for (size_t i = 0; i < a.c.size(); ++i)
                    if (a.c[i] > b.c[i]) return false;
                return true;
            case cone_family::lorentz: {
                long long dt = b.c[0] - a.c[0];
                if (dt < 0) return false;
                long long s = 0;
                for (size_t i = 1; i < a.c.size(); ++i) {
                    long long dz = b.c[i] - a.c[i];
                    s += dz * dz;
                }
                return dt * dt >= s;
            }
            case cone_family::psd: {
                long long da = b.c[0] - a.c[0], db = b.c[1] - a.c[1], dc = b.c[2] - a.c[2];
                return da >= 0 && dc >= 0 && da * dc - db * db >= 0;
            }
        }
        return false;
    }

    bool lt(const cone_point& a, const cone_point& b) const { return a != b && leq(a, b); }
    bool comparable(const cone_point& a, const cone_point& b) const { return leq(a, b) || leq(b, a); }

    // all lattice points xi with 0 < xi <= rho, sorted by coordinates
    std::vector<cone_point> interval_lattice(const cone_point& rho) const {
        require_in_cone(rho, "interval_lattice");
        std::vector<cone_point> out;
        switch (family_) {
            case cone_family::orthant: {
                cone_point x{std::vector<long long>(static_cast<size_t>(d_), 1)};
                for (;;) {
                    out.push_back(x);
                    int i = d_ - 1;
                    while (i >= 0 && x.c[static_cast<size_t>(i)] == rho.c[static_cast<size_t>(i)]) {
                        x.c[static_cast<size_t>(i)] = 1;
                        --i;
                    }
                    if (i < 0) break;
                    ++x.c[static_cast<size_t>(i)];
                }
                break;
            }
            case cone_family::lorentz: {
                // t in [1, t_rho]; each z_i within the light cone from below
                // and the backward cone from rho
                long long T = rho.c[0];
                std::vector<long long> z(static_cast<size_t>(d_));
                for (long long t = 1; t <= T; ++t) {
                    auto scan = [&](auto&& self, size_t i) -> void {
                        if (i == z.size()) {
                            cone_point x{{}};
                            x.c.reserve(z.size() + 1);
                            x.c.push_back(t);
                            x.c.insert(x.c.end(), z.begin(), z.end());
                            if (contains(x) && leq(x, rho)) out.push_back(std::move(x));
                            return;
                        }
                        for (long long v = -t; v <= t; ++v) {
                            z[i] = v;
                            self(self, i + 1);
                        }
                    };
                    scan(scan, 0);
                }
                std::sort(out.begin(), out.end());
                break;
            }
            case cone_family::psd: {
                // diagonal entries of a PSD difference are nonnegative, so
                // 0 <= a <= a_rho and 0 <= c <= c_rho; |b| <= sqrt(ac)
                for (long long a = 0; a <= rho.c[0]; ++a)
                    for (long long cc = 0; cc <= rho.c[2]; ++cc) {
                        long long bmax = static_cast<long long>(std::sqrt(static_cast<double>(a * cc))) + 1;
                        while (bmax * bmax > a * cc) --bmax;
                        for (long long b = -bmax; b <= bmax; ++b) {
                            cone_point x{{a, b, cc}};
                            if (contains(x) && leq(x, rho)) out.push_back(std::move(x));
                        }
                    }
                std::sort(out.begin(), out.end());
                break;
            }
        }
        return out;
    }

    long long interval_count(const cone_point& rho) const {
        return static_cast<long long>(interval_lattice(rho).size());
    }

    bool volume_is_rational() const {
        return family_ == cone_family::orthant || (family_ == cone_family::lorentz && d_ == 1);
    }

    // Lebesgue volume of the continuous interval [0, rho], exact form
    rational euclid_volume_rational(const cone_point& rho) const {
        require_in_cone(rho, "euclid_volume");
        switch (family_) {
            case cone_family::orthant: {
                rational v(1);
                for (long long a : rho.c) v *= a;
                return v;
            }
            case cone_family::lorentz:
                if (d_ == 1) return make_rational(rho.c[0] * rho.c[0] - rho.c[1] * rho.c[1], 2);
                break;
            default: break;
        }
        throw std::invalid_argument("euclid_volume_rational: volume of " + name() + " is irrational");
    }

    double euclid_volume(const cone_point& rho) const {
        require_in_cone(rho, "euclid_volume");
        switch (family_) {
            case cone_family::orthant: {
                double v = 1;
                for (long long a : rho.c) v *= static_cast<double>(a);
                return v;
            }
            case cone_family::lorentz: {
                long long q = rho.c[0] * rho.c[0];
                for (size_t i = 1; i < rho.c.size(); ++i) q -= rho.c[i] * rho.c[i];
                if (d_ == 1) return 0.5 * static_cast<double>(q);
                return lorentz_alpha_2 * std::pow(static_cast<double>(q), 1.5);
            }
            case cone_family::psd: {
                long long det = rho.c[0] * rho.c[2] - rho.c[1] * rho.c[1];
                return psd_beta_2 * std::pow(static_cast<double>(det), 1.5);
            }
        }
        return 0;
    }

    // closed form of the volume characteristic sequence
    rational gamma_closed(int m) const {
        if (m < 1) throw std::invalid_argument("gamma_closed: m must be >= 1");
        switch (family_) {
            case cone_family::orthant: {
                bigint den = bigint_pow(bigint(m), static_cast<unsigned>(d_));
                return rational(bigint(1), den);
            }
            case cone_family::lorentz:
                if (d_ == 1) return make_rational(1, static_cast<long long>(m) * m);
                [[fallthrough]];
            case cone_family::psd: {
                long long n = m;
                return make_rational(24, (3 * n - 1) * 3 * n * (3 * n + 1));
            }
        }
        throw std::invalid_argument("gamma_closed: unsupported cone " + name());
    }

    // increasing chain realizing growth to infinity in the cone order:
    // orthant (n,...,n); lorentz (n; 0); psd n * identity
    std::vector<cone_point> rho_schedule(int steps) const {
        if (steps < 1) throw std::invalid_argument("rho_schedule: steps must be >= 1");
        std::vector<cone_point> out;
        out.reserve(static_cast<size_t>(steps));
        for (long long n = 1; n <= steps; ++n) out.push_back(schedule_point(n));
        return out;
    }

    cone_point schedule_point(long long n) const {
        switch (family_) {
            case cone_family::orthant: return cone_point{std::vector<long long>(static_cast<size_t>(d_), n)};
            case cone_family::lorentz: {
                std::vector<long long> c(static_cast<size_t>(d_) + 1, 0);
                c[0] = n;
                return cone_point{std::move(c)};
            }
            case cone_family::psd: return cone_point{{n, 0, n}};
        }
        return {};
    }

    // text forms: orthant "2,3"; lorentz "3;0,1"; psd "2,0,2"
    std::string format_point(const cone_point& x) const {
        check_size(x);
        std::string s;
        for (size_t i = 0; i < x.c.size(); ++i) {
            if (i) s += (family_ == cone_family::lorentz && i == 1) ? ';' : ',';
            s += std::to_string(x.c[i]);
        }
        return s;
    }

    cone_point parse_point(const std::string& text) const {
        cone_point x;
        std::string cur;
        for (char ch : text) {
            if (ch == ',' || ch == ';') {
                x.c.push_back(std::stoll(cur));
                cur.clear();
            } else if (!std::isspace(static_cast<unsigned char>(ch))) {
                cur += ch;
            }
        }
        if (!cur.empty()) x.c.push_back(std::stoll(cur));
        if (x.c.size() != point_size())
            throw std::invalid_argument("parse_point: '" + text + "' has " + std::to_string(x.c.size()) +
                                        " coordinates, " + name() + " needs " + std::to_string(point_size()));
        if (!contains(x))
            throw std::invalid_argument("parse_point: '" + text + "' is not in the " + name() + " lattice");
        return x;
    }

    void require_in_cone(const cone_point& x, const char* who) const {
        if (!contains(x))
            throw std::invalid_argument(std::string(who) + ": point " + format_point_lenient(x) +
                                        " is outside the " + name() + " lattice");
    }

private:
    void check_size(const cone_point& x) const {
        if (x.c.size() != point_size())
            throw std::invalid_argument("cone_point has wrong coordinate count for " + name());
    }

    std::string format_point_lenient(const cone_point& x) const {
        std::string s;
        for (size_t i = 0; i < x.c.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(x.c[i]);
        }
        return s;
    }

    cone_family family_;
    int d_;
};

// memoized interval sizes; pass one of these around instead of relying on
// shared global state
class interval_counter {
public:
    explicit interval_counter(const cone& k) : cone_(k) {}

    long long count(const cone_point& rho) {
        auto it = memo_.find(rho);
        if (it != memo_.end()) return it->second;
        long long n = cone_.interval_count(rho);
        memo_.emplace(rho, n);
        return n;
    }

    const cone& underlying_cone() const { return cone_; }

private:
    cone cone_;
    std::map<cone_point, long long> memo_;
};

// discrete analogue of the volume characteristic, with lattice counts as the
// volume proxy: sum over eta in [0,rho] of count(eta)^(m-1) / count(rho)^m
inline rational gamma_estimate(const cone& k, int m, const cone_point& rho, interval_counter* cache = nullptr) {
    if (m < 1) throw std::invalid_argument("gamma_estimate: m must be >= 1");
    interval_counter local(k);
    interval_counter& cnt = cache ? *cache : local;
    bigint total(0);
    for (const auto& eta : k.interval_lattice(rho))
        total += bigint_pow(bigint(cnt.count(eta)), static_cast<unsigned>(m - 1));
    bigint den = bigint_pow(bigint(cnt.count(rho)), static_cast<unsigned>(m));
    return rational(total, den);
}

}  // namespace bmp
