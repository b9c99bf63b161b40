#pragma once

// Exact integer and rational arithmetic on top of GMP, plus the handful of
// elementary number-theoretic routines the rest of the library leans on:
// parsing/printing, integer square roots, primality, factorization and
// squarefree parts.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mordell/errors.hpp"

namespace mordell {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(Integer const& num, Integer const& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Integer abs_int(Integer const& n) { return n < 0 ? Integer(-n) : n; }

inline Integer gcd(Integer const& a, Integer const& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer lcm(Integer const& a, Integer const& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Integer pow_int(Integer const& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational pow_rat(Rational const& base, unsigned long e) {
    return make_rational(pow_int(base.get_num(), e), pow_int(base.get_den(), e));
}

inline bool is_integral(Rational const& r) { return r.get_den() == 1; }

inline std::string to_string(Integer const& n) { return n.get_str(); }

/// Canonical rendering: "p" for integers, "p/q" (q > 0, lowest terms) otherwise.
inline std::string to_string(Rational const& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

inline bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace detail

inline Integer parse_integer(std::string_view text) {
    auto s = detail::trim(text);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!detail::all_digits(s)) throw ParseError("not an integer: '" + std::string(text) + "'");
    Integer n(std::string(s), 10);
    return negative ? Integer(-n) : n;
}

/// Accepts integer literals and "p/q"; the result is reduced.
inline Rational parse_rational(std::string_view text) {
    auto s = detail::trim(text);
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(s));
    Integer num = parse_integer(s.substr(0, slash));
    auto den_text = detail::trim(s.substr(slash + 1));
    if (!detail::all_digits(den_text)) throw ParseError("bad denominator in '" + std::string(text) + "'");
    Integer den(std::string(den_text), 10);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return make_rational(num, den);
}

/// Natural log of |n|, valid far beyond the range of double.
inline double log_abs(Integer const& n) {
    if (n == 0) throw std::domain_error("log of zero");
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

inline double log_abs(Rational const& r) { return log_abs(r.get_num()) - log_abs(r.get_den()); }

inline double to_double(Rational const& r) { return r.get_d(); }

inline Integer isqrt(Integer const& n) {
    if (n < 0) throw std::domain_error("isqrt of negative");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline std::optional<Integer> exact_sqrt(Integer const& n) {
    if (n < 0 || mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
    return isqrt(n);
}

/// Nonnegative square root of r when r is the square of a rational.
inline std::optional<Rational> rational_sqrt(Rational const& r) {
    auto num = exact_sqrt(r.get_num());
    if (!num) return std::nullopt;
    auto den = exact_sqrt(r.get_den());
    if (!den) return std::nullopt;
    return make_rational(*num, *den);
}

namespace detail {

inline bool miller_rabin_round(Integer const& n, Integer const& d, unsigned s, unsigned long base) {
    Integer a(base);
    if (a % n == 0) return true;
    Integer x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    Integer n_minus_1 = n - 1;
    if (x == 1 || x == n_minus_1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n_minus_1) return true;
    }
    return false;
}

inline constexpr unsigned long kSmallPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

}  // namespace detail

/// Primality. Deterministic Miller-Rabin (first 13 prime bases) below
/// 3.3e24; above that GMP's BPSW-plus-rounds test, which has no known
/// counterexample.
inline bool is_prime(Integer const& n) {
    if (n < 2) return false;
    for (unsigned long p : detail::kSmallPrimes) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    static Integer const deterministic_limit("3317044064679887385961981", 10);
    if (n >= deterministic_limit) return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
    Integer d = n - 1;
    unsigned s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    for (unsigned long base : detail::kSmallPrimes)
        if (!detail::miller_rabin_round(n, d, s, base)) return false;
    return true;
}

namespace detail {

// Brent's variant of Pollard rho; returns a nontrivial factor of an odd
// composite n, or n itself on failure for this seed.
inline Integer pollard_brent(Integer const& n, unsigned long seed) {
    Integer c = Integer(seed) % n;
    Integer y = Integer(seed * 7 + 3) % n;
    Integer x, ys, q = 1, g = 1;
    auto step = [&](Integer const& v) {
        Integer t = v * v + c;
        return Integer(t % n);
    };
    constexpr unsigned long batch = 128;
    unsigned long r = 1;
    while (g == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i) y = step(y);
        unsigned long k = 0;
        while (k < r && g == 1) {
            ys = y;
            for (unsigned long i = 0; i < std::min(batch, r - k); ++i) {
                y = step(y);
                q = q * abs_int(x - y) % n;
            }
            g = gcd(q, n);
            k += batch;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = step(ys);
            g = gcd(abs_int(x - ys), n);
        } while (g == 1);
    }
    return g;
}

inline void factor_into(Integer n, std::vector<Integer>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    for (unsigned long seed = 1;; ++seed) {
        Integer f = pollard_brent(n, seed);
        if (f != n && f != 1) {
            factor_into(f, out);
            factor_into(n / f, out);
            return;
        }
    }
}

}  // namespace detail

/// Prime factorization of |n| as sorted (prime, exponent) pairs; n != 0.
inline std::vector<std::pair<Integer, unsigned>> factorize(Integer const& value) {
    if (value == 0) throw std::domain_error("factorize(0)");
    Integer n = abs_int(value);
    std::vector<Integer> primes;
    while (n % 2 == 0) {
        primes.emplace_back(2);
        n /= 2;
    }
    for (unsigned long p = 3; p < 10000 && Integer(p) * p <= n; p += 2) {
        while (n % p == 0) {
            primes.emplace_back(p);
            n /= p;
        }
    }
    detail::factor_into(n, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<Integer, unsigned>> result;
    for (auto const& p : primes) {
        if (!result.empty() && result.back().first == p)
            ++result.back().second;
        else
            result.emplace_back(p, 1u);
    }
    return result;
}

inline std::vector<Integer> prime_divisors(Integer const& n) {
    std::vector<Integer> out;
    for (auto const& [p, e] : factorize(n)) out.push_back(p);
    return out;
}

/// All positive divisors of |n|, ascending; n != 0.
inline std::vector<Integer> divisors(Integer const& n) {
    std::vector<Integer> divs{1};
    for (auto const& [p, e] : factorize(n)) {
        std::size_t const existing = divs.size();
        Integer pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < existing; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

/// p-adic valuation of a nonzero integer.
inline unsigned valuation(Integer n, Integer const& p) {
    if (n == 0) throw std::domain_error("valuation of zero");
    unsigned v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

/// Signed squarefree representative of the square class of n != 0.
inline Integer squarefree_part(Integer const& n) {
    Integer out = n < 0 ? -1 : 1;
    for (auto const& [p, e] : factorize(n))
        if (e % 2 == 1) out *= p;
    return out;
}

/// Square class of a nonzero rational: p/q and p*q differ by the square q^2.
inline Integer squarefree_part(Rational const& r) {
    if (r == 0) throw std::domain_error("square class of zero");
    return squarefree_part(Integer(r.get_num() * r.get_den()));
}

/// Same value as squarefree_part(r), but first divides out `likely` primes and
/// only factors the cofactor if it is not already a perfect square.
inline Integer squarefree_part(Rational const& r, std::vector<Integer> const& likely) {
    if (r == 0) throw std::domain_error("square class of zero");
    Integer n = r.get_num() * r.get_den();
    Integer out = n < 0 ? -1 : 1;
    n = abs_int(n);
    for (auto const& p : likely)
        if (valuation(n, p) % 2 == 1) out *= p;
    for (auto const& p : likely)
        while (n % p == 0) n /= p;
    if (mpz_perfect_square_p(n.get_mpz_t())) return out;
    return out * squarefree_part(n);
}

/// Square class of a product of two squarefree integers: ab / gcd(a, b)^2.
inline Integer squarefree_product(Integer const& a, Integer const& b) {
    Integer const g = gcd(a, b);
    return Integer(a / g) * Integer(b / g);
}

}  // namespace mordell
