#pragma once

// Chord-and-tangent group law on E(Q) for a general Weierstrass model.

#include <optional>
#include <vector>

#include "mordell/curve.hpp"
#include "mordell/polynomial.hpp"

namespace mordell {

/// The line y = lambda x + nu through two points (or tangent at one).
struct SlopeIntercept {
    Rational lambda;
    Rational nu;
};

inline Point negate(GeneralCurve const& c, Point const& p) {
    if (p.is_infinity()) return p;
    return Point::affine(p.x(), -p.y() - c.a1() * p.x() - c.a3());
}

/// nullopt when the line through p and q is vertical (p + q = O).
inline std::optional<SlopeIntercept> line_through(GeneralCurve const& c, Point const& p, Point const& q) {
    Rational const& x1 = p.x();
    Rational const& y1 = p.y();
    Rational const& x2 = q.x();
    Rational const& y2 = q.y();
    if (x1 == x2 && y1 + y2 + c.a1() * x2 + c.a3() == 0) return std::nullopt;
    if (x1 != x2) {
        Rational dx = x2 - x1;
        return SlopeIntercept{(y2 - y1) / dx, (y1 * x2 - y2 * x1) / dx};
    }
    Rational den = 2 * y1 + c.a1() * x1 + c.a3();
    Rational lambda = (3 * x1 * x1 + 2 * c.a2() * x1 + c.a4() - c.a1() * y1) / den;
    Rational nu = (-x1 * x1 * x1 + c.a4() * x1 + 2 * c.a6() - c.a3() * y1) / den;
    return SlopeIntercept{std::move(lambda), std::move(nu)};
}

inline Point add(GeneralCurve const& c, Point const& p, Point const& q) {
    if (p.is_infinity()) return q;
    if (q.is_infinity()) return p;
    auto line = line_through(c, p, q);
    if (!line) return Point::infinity();
    Rational x3 = line->lambda * line->lambda + c.a1() * line->lambda - c.a2() - p.x() - q.x();
    Rational y3 = -(line->lambda + c.a1()) * x3 - line->nu - c.a3();
    return Point::affine(std::move(x3), std::move(y3));
}

inline Point subtract(GeneralCurve const& c, Point const& p, Point const& q) { return add(c, p, negate(c, q)); }

inline Point double_point(GeneralCurve const& c, Point const& p) { return add(c, p, p); }

/// [n]P by binary double-and-add; negative n goes through negate.
inline Point mul(GeneralCurve const& c, Integer const& n, Point const& p) {
    if (n < 0) return negate(c, mul(c, Integer(-n), p));
    Point result = Point::infinity();
    Point base = p;
    std::size_t const bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (std::size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(n.get_mpz_t(), i)) result = add(c, result, base);
        if (i + 1 < bits) base = double_point(c, base);
    }
    return result;
}

inline Point mul(GeneralCurve const& c, long n, Point const& p) { return mul(c, Integer(n), p); }

/// x([2]P) = (x^4 - b4 x^2 - 2 b6 x - b8) / (4x^3 + b2 x^2 + 2 b4 x + b6).
inline Rational x_double_formula(GeneralCurve const& c, Rational const& x) {
    auto inv = c.invariants();
    Rational den = ((4 * x + inv.b2) * x + 2 * inv.b4) * x + inv.b6;
    if (den == 0) throw DenominatorVanishes("x is the abscissa of a 2-torsion point");
    Rational num = ((x * x - inv.b4) * x - 2 * inv.b6) * x - inv.b8;
    return num / den;
}

/// 4x^3 + b2 x^2 + 2 b4 x + b6, whose roots are the abscissae of 2-torsion points.
inline RationalUPoly two_division_polynomial(GeneralCurve const& c) {
    auto inv = c.invariants();
    return RationalUPoly{inv.b6, Rational(2 * inv.b4), inv.b2, Rational(4)};
}

/// The rational points of exact order 2, sorted by x. Size 0, 1 or 3.
inline std::vector<Point> two_torsion(GeneralCurve const& c) {
    std::vector<Point> out;
    for (auto const& x : rational_roots(two_division_polynomial(c)))
        out.push_back(Point::affine(x, Rational(-(c.a1() * x + c.a3()) / 2)));
    return out;
}

/// Smallest n in [1, max_order] with [n]P = O; nullopt past the bound.
inline std::optional<unsigned> order_of_point(GeneralCurve const& c, Point const& p, unsigned max_order) {
    Point multiple = p;
    for (unsigned n = 1; n <= max_order; ++n) {
        if (multiple.is_infinity()) return n;
        multiple = add(c, multiple, p);
    }
    return std::nullopt;
}

}  // namespace mordell
