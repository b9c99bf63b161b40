#pragma once

// Heights on E(Q) for short models y^2 = x^3 + Ax + B: the x-height, the
// duplication polynomial system and its cancellation bound, the maps sigma
// and g that linearize h(P+Q) + h(P-Q), defect measurements, and
// bounded-height point search.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "mordell/curve.hpp"
#include "mordell/group_law.hpp"
#include "mordell/heights.hpp"
#include "mordell/polynomial.hpp"

namespace mordell {

/// h_x(P) = log H(x(P)), and h_x(O) = 0.
inline HeightValue hx(Point const& p) {
    if (p.is_infinity()) return HeightValue{};
    return height_rational(p.x());
}

inline HeightValue hx(ShortCurve const& /*curve*/, Point const& p) { return hx(p); }

using RationalForm = MPoly<Rational>;

/// Binary forms in (X, Z) that control the cancellation in x([2]P) = F/G:
///   f1 F - g1 G = 4 disc Z^7,   f2 F - g2 G = 4 disc X^7,   disc = 4A^3 + 27B^2.
struct DuplicationSystem {
    Rational A, B;
    RationalForm F, G, f1, g1, f2, g2;
    Rational disc_short;
};

namespace detail {

inline RationalForm binary_term(Rational c, unsigned x_exp, unsigned z_exp) {
    return RationalForm::monomial(2, std::move(c), {x_exp, z_exp});
}

inline RationalForm binary_cubic(Rational c3, Rational c2, Rational c1, Rational c0) {
    return binary_term(std::move(c3), 3, 0) + binary_term(std::move(c2), 2, 1) + binary_term(std::move(c1), 1, 2) +
           binary_term(std::move(c0), 0, 3);
}

}  // namespace detail

/// Both identities, checked as exact polynomial identities.
inline bool duplication_identities_hold(DuplicationSystem const& s) {
    using detail::binary_term;
    auto const z7 = binary_term(4 * s.disc_short, 0, 7);
    auto const x7 = binary_term(4 * s.disc_short, 7, 0);
    return s.f1 * s.F - s.g1 * s.G == z7 && s.f2 * s.F - s.g2 * s.G == x7;
}

/// Builds F, G, f1, g1, f2, g2 for y^2 = x^3 + Ax + B and verifies both
/// identities; throws IdentityFailure if they do not hold.
inline DuplicationSystem build_duplication_system(Rational const& A, Rational const& B) {
    using detail::binary_cubic;
    using detail::binary_term;
    Rational const A2 = A * A, A3 = A2 * A, B2 = B * B;
    DuplicationSystem s;
    s.A = A;
    s.B = B;
    s.disc_short = 4 * A3 + 27 * B2;
    s.F = binary_term(1, 4, 0) + binary_term(-2 * A, 2, 2) + binary_term(-8 * B, 1, 3) + binary_term(A2, 0, 4);
    s.G = binary_term(4, 3, 1) + binary_term(4 * A, 1, 3) + binary_term(4 * B, 0, 4);
    s.f1 = binary_term(12, 2, 1) + binary_term(16 * A, 0, 3);
    s.g1 = binary_cubic(3, 0, -5 * A, -27 * B);
    s.f2 = binary_cubic(4 * s.disc_short, -4 * A2 * B, 4 * A * (3 * A3 + 22 * B2), 12 * B * (A3 + 8 * B2));
    // Sign flipped relative to the usual printed g2 (A^2 B X^3 + ...): with that
    // sign the second identity reads f2 F + g2 G = 4 disc X^7.
    s.g2 = binary_cubic(-A2 * B, -A * (5 * A3 + 32 * B2), -2 * B * (13 * A3 + 96 * B2), 3 * A2 * (A3 + 8 * B2));
    if (!duplication_identities_hold(s)) throw IdentityFailure("duplication identities fail");
    return s;
}

struct FGDoubling {
    Rational value;         // x([2]P)
    Integer F_value;        // F(a, b) after clearing coefficient denominators
    Integer G_value;        // G(a, b), same scaling
    Integer cancellation;   // gcd(F_value, G_value)
};

/// x([2]P) = F(a, b) / G(a, b) for x(P) = a/b in lowest terms.
inline FGDoubling x_double_via_FG(DuplicationSystem const& s, Rational const& x) {
    std::vector<Rational> const ab{Rational(x.get_num()), Rational(x.get_den())};
    Rational f = s.F(ab);
    Rational g = s.G(ab);
    if (g == 0) throw DenominatorVanishes("G(a, b) = 0: x is the abscissa of a 2-torsion point");
    Integer den = lcm(f.get_den(), g.get_den());
    FGDoubling out;
    out.value = f / g;
    out.F_value = Integer(f * den);
    out.G_value = Integer(g * den);
    out.cancellation = gcd(out.F_value, out.G_value);
    return out;
}

/// sigma([a1, b1], [a2, b2]) = [b1 b2, a1 b2 + a2 b1, a1 a2].
inline ProjectivePoint sigma(ProjectivePoint const& p1, ProjectivePoint const& p2) {
    if (p1.dimension() != 1 || p2.dimension() != 1) throw std::invalid_argument("sigma takes two points of P^1");
    Integer const &a1 = p1[0], &b1 = p1[1], &a2 = p2[0], &b2 = p2[1];
    return ProjectivePoint::from_integers({b1 * b2, a1 * b2 + a2 * b1, a1 * a2});
}

/// x as a map E -> P^1: [x, 1] on affine points, [1, 0] at O.
inline ProjectivePoint x_coordinate(Point const& p) {
    if (p.is_infinity()) return ProjectivePoint::from_integers({1, 0});
    return ProjectivePoint::of_rational(p.x());
}

/// The three quadratic forms of g in (t, u, v):
///   [u^2 - 4tv, 2u(At + v) + 4Bt^2, (v - At)^2 - 4Btu].
inline std::array<RationalForm, 3> g_forms(Rational const& A, Rational const& B) {
    auto const t = RationalForm::variable(3, 0);
    auto const u = RationalForm::variable(3, 1);
    auto const v = RationalForm::variable(3, 2);
    auto const v_minus_at = v - A * t;
    return {u * u - Rational(4) * t * v, Rational(2) * u * (A * t + v) + Rational(4 * B) * t * t,
            v_minus_at * v_minus_at - Rational(4 * B) * t * u};
}

/// g : P^2 -> P^2 with g(sigma(x(P), x(Q))) = sigma(x(P+Q), x(P-Q)).
inline ProjectivePoint g_map(Rational const& A, Rational const& B, ProjectivePoint const& p) {
    if (p.dimension() != 2) throw std::invalid_argument("g_map takes a point of P^2");
    Rational const t(p[0]), u(p[1]), v(p[2]);
    std::vector<Rational> image{Rational(u * u - 4 * t * v), Rational(2 * u * (A * t + v) + 4 * B * t * t),
                                Rational((v - A * t) * (v - A * t) - 4 * B * t * u)};
    if (std::all_of(image.begin(), image.end(), [](Rational const& c) { return c == 0; }))
        throw CommonZero("g vanishes identically at this point (singular curve)");
    return ProjectivePoint::from_rationals(image);
}

/// psi(x) = 4x^3 + 4Ax + 4B.
inline RationalUPoly psi_poly(Rational const& A, Rational const& B) {
    return RationalUPoly{Rational(4 * B), Rational(4 * A), Rational(0), Rational(4)};
}

/// phi(x) = x^4 - 2Ax^2 - 8Bx + A^2.
inline RationalUPoly phi_poly(Rational const& A, Rational const& B) {
    return RationalUPoly{Rational(A * A), Rational(-8 * B), Rational(-2 * A), Rational(0), Rational(1)};
}

/// Checks (12X^2 + 16A) phi - (3X^3 - 5AX - 27B) psi = 4(4A^3 + 27B^2) exactly.
inline bool quotient_identity_check(Rational const& A, Rational const& B, RationalUPoly const& phi,
                                    RationalUPoly const& psi) {
    RationalUPoly const lhs_phi{Rational(16 * A), Rational(0), Rational(12)};
    RationalUPoly const lhs_psi{Rational(-27 * B), Rational(-5 * A), Rational(0), Rational(3)};
    RationalUPoly const rhs{Rational(4 * (4 * A * A * A + 27 * B * B))};
    return lhs_phi * phi - lhs_psi * psi == rhs;
}

inline bool quotient_identity_check(Rational const& A, Rational const& B) {
    return quotient_identity_check(A, B, phi_poly(A, B), psi_poly(A, B));
}

/// h(P+Q) + h(P-Q) - 2h(P) - 2h(Q), from exact magnitudes and one final log.
inline double parallelogram_defect(ShortCurve const& c, Point const& p, Point const& q) {
    GeneralCurve const g = c.general();
    Integer num = hx(add(g, p, q)).magnitude * hx(subtract(g, p, q)).magnitude;
    Integer hp = hx(p).magnitude, hq = hx(q).magnitude;
    Integer den = hp * hp * hq * hq;
    return log_abs(num) - log_abs(den);
}

/// h([m]P) - m^2 h(P).
inline double multiplication_defect(ShortCurve const& c, long m, Point const& p) {
    Integer hm = hx(mul(c.general(), m, p)).magnitude;
    Integer base = pow_int(hx(p).magnitude, static_cast<unsigned long>(m * m));
    return log_abs(hm) - log_abs(base);
}

namespace detail {

// Squares modulo 64, 63, 65 and 11 reject most non-squares before any sqrt.
struct SquareFilter {
    std::array<bool, 64> m64{};
    std::array<bool, 63> m63{};
    std::array<bool, 65> m65{};
    std::array<bool, 11> m11{};

    SquareFilter() {
        for (unsigned i = 0; i < 64; ++i) m64[i * i % 64] = true;
        for (unsigned i = 0; i < 63; ++i) m63[i * i % 63] = true;
        for (unsigned i = 0; i < 65; ++i) m65[i * i % 65] = true;
        for (unsigned i = 0; i < 11; ++i) m11[i * i % 11] = true;
    }

    bool maybe_square(__int128 n) const {
        if (n < 0) return false;
        return m64[static_cast<unsigned>(n % 64)] && m63[static_cast<unsigned>(n % 63)] &&
               m65[static_cast<unsigned>(n % 65)] && m11[static_cast<unsigned>(n % 11)];
    }
};

inline SquareFilter const& square_filter() {
    static SquareFilter const f;
    return f;
}

inline std::optional<std::int64_t> small_sqrt(__int128 n) {
    if (!square_filter().maybe_square(n)) return std::nullopt;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
    while (static_cast<__int128>(r) * r > n) --r;
    while (static_cast<__int128>(r + 1) * (r + 1) <= n) ++r;
    if (static_cast<__int128>(r) * r != n) return std::nullopt;
    return r;
}

// Points with denominator-root d and |a| <= bound; appends in ascending a,
// each x contributing (x, -y) before (x, y).
inline void points_for_denominator(ShortCurve const& c, Integer const& d, Integer const& bound,
                                   std::vector<Point>& out) {
    Integer const d2 = d * d, d4 = d2 * d2, d6 = d4 * d2;
    Integer const Ad4 = c.A().get_num() * d4;
    Integer const Bd6 = c.B().get_num() * d6;
    Integer const d3 = d2 * d;

    // a^3 + A a d^4 + B d^6 fits comfortably in 128 bits when every term is below 2^100.
    bool const fast = mpz_sizeinbase(bound.get_mpz_t(), 2) <= 32 && Ad4.fits_slong_p() &&
                      mpz_sizeinbase(Bd6.get_mpz_t(), 2) <= 96 && bound.fits_slong_p();
    auto emit = [&](Integer const& a, Integer const& b) {
        Rational x = make_rational(a, d2);
        if (b == 0) {
            out.push_back(Point::affine(x, 0));
        } else {
            out.push_back(Point::affine(x, make_rational(-b, d3)));
            out.push_back(Point::affine(x, make_rational(b, d3)));
        }
    };

    if (fast) {
        long const lim = bound.get_si();
        long const dl = d.get_si();
        auto const ad4 = static_cast<__int128>(Ad4.get_si());
        __int128 bd6 = 0;
        {
            // Bd6 may exceed 64 bits; assemble from two halves.
            Integer hi = Bd6 >> 62, lo = Bd6 - (hi << 62);
            bd6 = (static_cast<__int128>(hi.get_si()) << 62) + static_cast<__int128>(lo.get_si());
        }
        for (long a = -lim; a <= lim; ++a) {
            if (std::gcd(a, dl) != 1) continue;
            __int128 const a128 = a;
            __int128 const r = a128 * a128 * a128 + ad4 * a128 + bd6;
            if (auto b = small_sqrt(r)) emit(Integer(a), Integer(static_cast<long>(*b)));
        }
        return;
    }
    for (Integer a = -bound; a <= bound; ++a) {
        if (gcd(a, d) != 1) continue;
        Integer r = a * a * a + Ad4 * a + Bd6;
        if (auto b = exact_sqrt(r)) emit(a, *b);
    }
}

}  // namespace detail

/// O followed by every affine P with H(x(P)) <= height_bound, ordered by
/// (denominator root d, numerator a), each (x, -y) before (x, y).
/// Requires integral A, B. `threads` partitions the d-range; output order
/// does not depend on it.
inline std::vector<Point> enumerate_points_by_height(ShortCurve const& c, Integer const& height_bound,
                                                     unsigned threads = 1) {
    if (!c.is_integral()) throw NonIntegralModel("point search needs integral A, B");
    std::vector<Point> out{Point::infinity()};
    if (height_bound < 1) return out;
    Integer const max_d = isqrt(height_bound);
    if (!max_d.fits_ulong_p()) throw std::invalid_argument("height bound too large to enumerate");
    unsigned long const dmax = max_d.get_ui();

    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(dmax)));
    std::vector<std::vector<Point>> chunks(threads);
    auto work = [&](unsigned w) {
        unsigned long const lo = 1 + dmax * w / threads;
        unsigned long const hi = dmax * (w + 1) / threads;
        for (unsigned long d = lo; d <= hi; ++d) detail::points_for_denominator(c, Integer(d), height_bound, chunks[w]);
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    }
    for (auto& chunk : chunks) out.insert(out.end(), chunk.begin(), chunk.end());
    return out;
}

/// Largest integer N with log N <= log_bound, tolerant of rounding in
/// log_bound itself (so log_bound = log 2 admits 2).
inline Integer height_bound_from_log(double log_bound) {
    if (log_bound < 0) throw std::invalid_argument("log height bound must be nonnegative");
    constexpr double tol = 1e-9;
    double const limit = log_bound + tol * std::max(1.0, log_bound);
    if (limit > 4000) throw std::invalid_argument("log height bound too large to enumerate");
    Integer n(std::floor(std::exp(log_bound)));
    if (n < 1) n = 1;
    while (log_abs(Integer(n + 1)) <= limit) ++n;
    while (n > 1 && log_abs(n) > limit) --n;
    return n;
}

inline std::vector<Point> enumerate_points(ShortCurve const& c, double log_bound, unsigned threads = 1) {
    return enumerate_points_by_height(c, height_bound_from_log(log_bound), threads);
}

}  // namespace mordell
