#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mordell/arith.hpp"

namespace mordell {

/// Dense univariate polynomial; coefficient i multiplies T^i.
template <class Coeff>
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Coeff> low_to_high) : c_(std::move(low_to_high)) { trim(); }
    UPoly(std::initializer_list<Coeff> low_to_high) : c_(low_to_high) { trim(); }

    /// Builds from a leading-coefficient-first list a_0 T^d + ... + a_d.
    static UPoly from_high_to_low(std::span<Coeff const> coeffs) {
        return UPoly(std::vector<Coeff>(coeffs.rbegin(), coeffs.rend()));
    }

    static UPoly monomial(Coeff c, std::size_t degree) {
        std::vector<Coeff> v(degree + 1, Coeff(0));
        v[degree] = std::move(c);
        return UPoly(std::move(v));
    }

    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Coeff coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Coeff(0); }
    Coeff leading() const { return c_.empty() ? Coeff(0) : c_.back(); }
    std::vector<Coeff> const& coefficients() const { return c_; }

    template <class T>
    T operator()(T const& x) const {
        T acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = T(acc * x + *it);
        return acc;
    }

    friend UPoly operator+(UPoly const& a, UPoly const& b) {
        std::vector<Coeff> v(std::max(a.c_.size(), b.c_.size()), Coeff(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
        return UPoly(std::move(v));
    }
    friend UPoly operator-(UPoly const& a) {
        std::vector<Coeff> v(a.c_);
        for (auto& x : v) x = -x;
        return UPoly(std::move(v));
    }
    friend UPoly operator-(UPoly const& a, UPoly const& b) { return a + (-b); }
    friend UPoly operator*(UPoly const& a, UPoly const& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Coeff> v(a.c_.size() + b.c_.size() - 1, Coeff(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        return UPoly(std::move(v));
    }
    friend UPoly operator*(Coeff const& s, UPoly const& a) {
        std::vector<Coeff> v(a.c_);
        for (auto& x : v) x *= s;
        return UPoly(std::move(v));
    }
    friend bool operator==(UPoly const& a, UPoly const& b) { return a.c_ == b.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Coeff> c_;
};

using RationalUPoly = UPoly<Rational>;

/// Multiplies out prod (T - root).
inline RationalUPoly poly_from_roots(std::span<Rational const> roots) {
    RationalUPoly p{Rational(1)};
    for (auto const& r : roots) p = p * RationalUPoly{Rational(-r), Rational(1)};
    return p;
}

/// Quotient and remainder of a by b != 0.
inline std::pair<RationalUPoly, RationalUPoly> divmod(RationalUPoly const& a, RationalUPoly const& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> r = a.coefficients();
    long const db = b.degree();
    std::vector<Rational> q(r.size() > static_cast<std::size_t>(db) ? r.size() - static_cast<std::size_t>(db) : 1,
                            Rational(0));
    for (long i = static_cast<long>(r.size()) - 1; i >= db; --i) {
        Rational const t = r[static_cast<std::size_t>(i)] / b.leading();
        if (t == 0) continue;
        q[static_cast<std::size_t>(i - db)] = t;
        for (long j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= t * b.coeff(static_cast<std::size_t>(j));
    }
    return {RationalUPoly(std::move(q)), RationalUPoly(std::move(r))};
}

inline RationalUPoly derivative(RationalUPoly const& f) {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < f.coefficients().size(); ++i) d.push_back(Rational(f.coefficients()[i] * i));
    return RationalUPoly(std::move(d));
}

/// Monic gcd; gcd(0, 0) = 0.
inline RationalUPoly poly_gcd(RationalUPoly a, RationalUPoly b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return Rational(1 / a.leading()) * a;
}

namespace detail {

/// a/b with a = b r (mod m), |a| <= num_bound, 0 < b <= den_bound; unique when
/// 2 num_bound den_bound < m.
inline std::optional<Rational> rational_reconstruction(Integer const& r, Integer const& m, Integer const& num_bound,
                                                       Integer const& den_bound) {
    Integer r0 = m, r1 = r, t0 = 0, t1 = 1;
    while (abs_int(r1) > num_bound) {
        Integer const q = r0 / r1;
        Integer r2 = r0 - q * r1, t2 = t0 - q * t1;
        r0 = std::move(r1), r1 = std::move(r2);
        t0 = std::move(t1), t1 = std::move(t2);
    }
    if (t1 == 0 || abs_int(t1) > den_bound) return std::nullopt;
    if (t1 < 0) r1 = -r1, t1 = -t1;
    if (gcd(r1, t1) != 1) return std::nullopt;
    return make_rational(r1, t1);
}

inline Integer eval_mod(std::vector<Integer> const& ints, Integer const& x, Integer const& m) {
    Integer acc = 0;
    for (auto it = ints.rbegin(); it != ints.rend(); ++it) {
        acc = (acc * x + *it) % m;
    }
    if (acc < 0) acc += m;
    return acc;
}

}  // namespace detail

/// Distinct rational roots, ascending. Works on the squarefree part as an
/// integer polynomial g: roots modulo a small prime p of good reduction are
/// Hensel-lifted past 2 |g(0)| |lead(g)| and rationally reconstructed, then
/// confirmed exactly. `denominator_ok` can veto denominators known not to
/// occur (e.g. non-squares for abscissae of rational points).
inline std::vector<Rational> rational_roots(RationalUPoly const& f,
                                            std::function<bool(Integer const&)> const& denominator_ok = {}) {
    if (f.is_zero()) throw std::domain_error("rational_roots of the zero polynomial");
    RationalUPoly const common = poly_gcd(f, derivative(f));
    RationalUPoly const sqfree = common.is_zero() ? f : divmod(f, common).first;

    Integer den = 1;
    for (auto const& c : sqfree.coefficients()) den = lcm(den, c.get_den());
    std::vector<Integer> ints;
    for (auto const& c : sqfree.coefficients()) ints.push_back(Integer(c * den));

    std::vector<Rational> roots;
    std::size_t shift = 0;
    while (ints[shift] == 0) ++shift;
    if (shift > 0) roots.emplace_back(0);
    ints.erase(ints.begin(), ints.begin() + static_cast<long>(shift));
    std::size_t const n = ints.size() - 1;

    auto const accept = [&](Rational const& x) {
        if (denominator_ok && !denominator_ok(x.get_den())) return;
        Integer acc = 0, qpow = 1, ppow = 1;
        std::vector<Integer> qpows(n + 1);
        for (std::size_t i = 0; i <= n; ++i) qpows[i] = qpow, qpow *= x.get_den();
        for (std::size_t i = 0; i <= n; ++i) acc += ints[i] * ppow * qpows[n - i], ppow *= x.get_num();
        if (acc == 0) roots.push_back(x);
    };

    if (n == 1) {
        accept(make_rational(-ints[0], ints[1]));
    } else if (n > 1) {
        std::vector<Integer> deriv;
        for (std::size_t i = 1; i <= n; ++i) deriv.push_back(ints[i] * i);
        Integer const num_bound = abs_int(ints.front()), den_bound = abs_int(ints.back());
        Integer const target = 2 * num_bound * den_bound;

        for (unsigned long p = 3;; p += 2) {
            if (!is_prime(Integer(p))) continue;
            Integer const P(p);
            if (ints.back() % P == 0) continue;
            std::vector<Integer> local_roots;
            bool good = true;
            for (unsigned long r = 0; r < p && good; ++r) {
                if (detail::eval_mod(ints, Integer(r), P) != 0) continue;
                if (detail::eval_mod(deriv, Integer(r), P) == 0) good = false;
                local_roots.emplace_back(r);
            }
            if (!good) continue;
            for (Integer r : local_roots) {
                Integer m = P;
                while (m <= target) {
                    m *= m;
                    Integer inv;
                    Integer const dv = detail::eval_mod(deriv, r, m);
                    mpz_invert(inv.get_mpz_t(), dv.get_mpz_t(), m.get_mpz_t());
                    r = (r - detail::eval_mod(ints, r, m) * inv) % m;
                    if (r < 0) r += m;
                }
                if (auto x = detail::rational_reconstruction(r, m, num_bound, den_bound)) accept(*x);
            }
            break;
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

/// Sparse multivariate polynomial keyed by exponent vectors.
template <class Coeff>
class MPoly {
public:
    using Exponents = std::vector<unsigned>;

    explicit MPoly(std::size_t num_vars = 0) : n_(num_vars) {}

    static MPoly constant(std::size_t num_vars, Coeff c) { return monomial(num_vars, std::move(c), Exponents(num_vars, 0)); }

    static MPoly variable(std::size_t num_vars, std::size_t index) {
        Exponents e(num_vars, 0);
        e.at(index) = 1;
        return monomial(num_vars, Coeff(1), std::move(e));
    }

    static MPoly monomial(std::size_t num_vars, Coeff c, Exponents e) {
        if (e.size() != num_vars) throw std::invalid_argument("exponent vector has wrong arity");
        MPoly p(num_vars);
        if (c != 0) p.terms_.emplace(std::move(e), std::move(c));
        return p;
    }

    std::size_t num_vars() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    std::map<Exponents, Coeff> const& terms() const { return terms_; }

    Coeff coeff(Exponents const& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Coeff(0) : it->second;
    }

    /// -1 for the zero polynomial.
    long total_degree() const {
        long d = -1;
        for (auto const& [e, c] : terms_) d = std::max(d, static_cast<long>(degree_of(e)));
        return d;
    }

    bool is_homogeneous() const {
        long d = -1;
        for (auto const& [e, c] : terms_) {
            long const de = static_cast<long>(degree_of(e));
            if (d >= 0 && de != d) return false;
            d = de;
        }
        return true;
    }

    template <class T>
    T operator()(std::span<T const> point) const {
        if (point.size() != n_) throw std::invalid_argument("evaluation point has wrong arity");
        T acc(0);
        for (auto const& [e, c] : terms_) {
            T term(c);
            for (std::size_t i = 0; i < n_; ++i)
                for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
            acc += term;
        }
        return acc;
    }

    template <class T>
    T operator()(std::vector<T> const& point) const {
        return (*this)(std::span<T const>(point));
    }

    friend MPoly operator+(MPoly a, MPoly const& b) {
        a.check_arity(b);
        for (auto const& [e, c] : b.terms_) a.accumulate(e, c);
        return a;
    }
    friend MPoly operator-(MPoly a) {
        for (auto& [e, c] : a.terms_) c = -c;
        return a;
    }
    friend MPoly operator-(MPoly const& a, MPoly const& b) { return a + (-b); }
    friend MPoly operator*(MPoly const& a, MPoly const& b) {
        a.check_arity(b);
        MPoly out(a.n_);
        for (auto const& [ea, ca] : a.terms_)
            for (auto const& [eb, cb] : b.terms_) {
                Exponents e(a.n_);
                for (std::size_t i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
                out.accumulate(e, Coeff(ca * cb));
            }
        return out;
    }
    friend MPoly operator*(Coeff const& s, MPoly const& a) {
        MPoly out(a.n_);
        for (auto const& [e, c] : a.terms_) out.accumulate(e, Coeff(s * c));
        return out;
    }
    friend bool operator==(MPoly const& a, MPoly const& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

    /// Human-readable rendering with variables named by `names`.
    std::string to_string(std::vector<std::string> const& names) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            auto const& [e, c] = *it;
            Coeff mag = c < 0 ? Coeff(-c) : c;
            os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
            bool const unit = (mag == 1) && degree_of(e) > 0;
            if (!unit) os << mordell::to_string(mag);
            bool need_star = !unit;
            for (std::size_t i = 0; i < n_; ++i) {
                if (e[i] == 0) continue;
                if (need_star) os << "*";
                os << names.at(i);
                if (e[i] > 1) os << "^" << e[i];
                need_star = true;
            }
            first = false;
        }
        return os.str();
    }

private:
    static unsigned degree_of(Exponents const& e) {
        unsigned d = 0;
        for (unsigned x : e) d += x;
        return d;
    }

    void check_arity(MPoly const& other) const {
        if (n_ != other.n_) throw std::invalid_argument("polynomials have different arity");
    }

    void accumulate(Exponents const& e, Coeff const& c) {
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        } else if (c == 0) {
            terms_.erase(it);
        }
    }

    std::size_t n_;
    std::map<Exponents, Coeff> terms_;
};

}  // namespace mordell
