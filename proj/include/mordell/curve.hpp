#pragma once

// Weierstrass models over Q, their invariants, and coordinate changes.
//
//   general:  y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
//   short:    y^2 = x^3 + A x + B
//
// Every quantity is an exact rational; nothing in here touches floating point.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "mordell/arith.hpp"
#include "mordell/errors.hpp"
#include "mordell/point.hpp"

namespace mordell {

struct Invariants {
    Rational b2, b4, b6, b8, c4, c6, delta;
};

inline Invariants compute_invariants(Rational const& a1, Rational const& a2, Rational const& a3, Rational const& a4,
                                     Rational const& a6) {
    Invariants inv;
    inv.b2 = a1 * a1 + 4 * a2;
    inv.b4 = 2 * a4 + a1 * a3;
    inv.b6 = a3 * a3 + 4 * a6;
    inv.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    inv.c4 = inv.b2 * inv.b2 - 24 * inv.b4;
    inv.c6 = -inv.b2 * inv.b2 * inv.b2 + 36 * inv.b2 * inv.b4 - 216 * inv.b6;
    inv.delta = -inv.b2 * inv.b2 * inv.b8 - 8 * inv.b4 * inv.b4 * inv.b4 - 27 * inv.b6 * inv.b6 +
                9 * inv.b2 * inv.b4 * inv.b6;
    return inv;
}

class GeneralCurve {
public:
    /// Checked constructor: throws SingularCurve when the discriminant vanishes.
    GeneralCurve(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6)
        : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)} {
        if (is_singular()) throw SingularCurve("discriminant is zero: not an elliptic curve");
    }

    /// Accepts singular models too, for inspection.
    static GeneralCurve unchecked(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6) {
        return GeneralCurve(Unchecked{}, {std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)});
    }

    Rational const& a1() const { return a_[0]; }
    Rational const& a2() const { return a_[1]; }
    Rational const& a3() const { return a_[2]; }
    Rational const& a4() const { return a_[3]; }
    Rational const& a6() const { return a_[4]; }
    std::array<Rational, 5> const& coefficients() const { return a_; }

    Invariants invariants() const { return compute_invariants(a_[0], a_[1], a_[2], a_[3], a_[4]); }
    bool is_singular() const { return invariants().delta == 0; }
    bool is_short() const { return a_[0] == 0 && a_[1] == 0 && a_[2] == 0; }

    friend bool operator==(GeneralCurve const& a, GeneralCurve const& b) { return a.a_ == b.a_; }

private:
    struct Unchecked {};
    GeneralCurve(Unchecked, std::array<Rational, 5> a) : a_(std::move(a)) {}

    std::array<Rational, 5> a_;
};

inline Invariants compute_invariants(GeneralCurve const& curve) { return curve.invariants(); }

class ShortCurve {
public:
    /// Checked constructor: throws SingularCurve when 4A^3 + 27B^2 = 0.
    ShortCurve(Rational A, Rational B) : a_(std::move(A)), b_(std::move(B)) {
        if (disc_short() == 0) throw SingularCurve("4A^3 + 27B^2 = 0: not an elliptic curve");
    }

    static ShortCurve unchecked(Rational A, Rational B) {
        ShortCurve c(Unchecked{});
        c.a_ = std::move(A);
        c.b_ = std::move(B);
        return c;
    }

    Rational const& A() const { return a_; }
    Rational const& B() const { return b_; }

    /// 4A^3 + 27B^2 (the duplication-identity convention).
    Rational disc_short() const { return 4 * a_ * a_ * a_ + 27 * b_ * b_; }
    /// -16(4A^3 + 27B^2), the Weierstrass discriminant of the model.
    Rational discriminant() const { return -16 * disc_short(); }
    bool is_singular() const { return disc_short() == 0; }
    bool is_integral() const { return is_integral_rat(a_) && is_integral_rat(b_); }

    GeneralCurve general() const { return GeneralCurve::unchecked(0, 0, 0, a_, b_); }
    operator GeneralCurve() const { return general(); }  // NOLINT(google-explicit-constructor)

    friend bool operator==(ShortCurve const& a, ShortCurve const& b) { return a.a_ == b.a_ && a.b_ == b.b_; }

private:
    struct Unchecked {};
    explicit ShortCurve(Unchecked) {}
    static bool is_integral_rat(Rational const& r) { return r.get_den() == 1; }

    Rational a_{0};
    Rational b_{0};
};

inline bool is_on_curve(GeneralCurve const& c, Point const& p) {
    if (p.is_infinity()) return true;
    Rational const& x = p.x();
    Rational const& y = p.y();
    Rational lhs = y * y + c.a1() * x * y + c.a3() * y;
    Rational rhs = ((x + c.a2()) * x + c.a4()) * x + c.a6();
    return lhs == rhs;
}

inline bool is_on_curve(ShortCurve const& c, Point const& p) {
    if (p.is_infinity()) return true;
    Rational const& x = p.x();
    return p.y() * p.y() == (x * x + c.A()) * x + c.B();
}

/// Invertible change of coordinates (x, y) -> (sx*x + tx, sy*y + syx*x + ty)
/// with sx, sy nonzero. Fixes O.
class AffineChange {
public:
    AffineChange() = default;  // identity

    AffineChange(Rational sx, Rational tx, Rational sy, Rational syx, Rational ty)
        : sx_(std::move(sx)), tx_(std::move(tx)), sy_(std::move(sy)), syx_(std::move(syx)), ty_(std::move(ty)) {
        if (sx_ == 0 || sy_ == 0) throw std::invalid_argument("coordinate change is not invertible");
    }

    static AffineChange identity() { return {}; }

    Point apply(Point const& p) const {
        if (p.is_infinity()) return p;
        return Point::affine(sx_ * p.x() + tx_, sy_ * p.y() + syx_ * p.x() + ty_);
    }
    Point operator()(Point const& p) const { return apply(p); }

    AffineChange inverse() const {
        Rational sx = 1 / sx_;
        Rational sy = 1 / sy_;
        Rational syx = -syx_ / (sy_ * sx_);
        Rational ty = syx_ * tx_ / (sy_ * sx_) - ty_ / sy_;
        return {sx, Rational(-tx_ / sx_), sy, syx, ty};
    }

    /// This change followed by `next`.
    AffineChange then(AffineChange const& next) const {
        return {next.sx_ * sx_, next.sx_ * tx_ + next.tx_, next.sy_ * sy_, next.sy_ * syx_ + next.syx_ * sx_,
                next.sy_ * ty_ + next.syx_ * tx_ + next.ty_};
    }

    bool is_identity() const { return sx_ == 1 && tx_ == 0 && sy_ == 1 && syx_ == 0 && ty_ == 0; }

    friend bool operator==(AffineChange const&, AffineChange const&) = default;

private:
    Rational sx_{1}, tx_{0}, sy_{1}, syx_{0}, ty_{0};
};

/// y^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
struct CompletedSquareModel {
    Rational b2, b4, b6;

    bool contains(Point const& p) const {
        if (p.is_infinity()) return true;
        Rational const& x = p.x();
        return p.y() * p.y() == ((4 * x + b2) * x + 2 * b4) * x + b6;
    }
};

struct CompletedSquare {
    CompletedSquareModel model;
    AffineChange change;  // source model -> completed-square model
};

/// Completing the square: y -> 2y + a1 x + a3.
inline CompletedSquare complete_square(GeneralCurve const& c) {
    auto inv = c.invariants();
    return {{inv.b2, inv.b4, inv.b6}, AffineChange(1, 0, 2, c.a1(), c.a3())};
}

struct ShortForm {
    ShortCurve curve;
    AffineChange change;  // source model -> short model
};

/// Short model y^2 = x^3 - 27c4 x - 54c6 reached through (x, y) -> (36x + 3b2, 108y)
/// on the completed-square model. Inputs already in short form come back unchanged
/// under the identity change.
inline ShortForm short_form(GeneralCurve const& c) {
    if (c.is_short()) return {ShortCurve::unchecked(c.a4(), c.a6()), AffineChange::identity()};
    auto inv = c.invariants();
    auto square = complete_square(c);
    AffineChange to_short(36, 3 * inv.b2, 108, 0, 0);
    return {ShortCurve::unchecked(-27 * inv.c4, -54 * inv.c6), square.change.then(to_short)};
}

struct IntegralModel {
    ShortCurve curve;
    AffineChange change;  // (x, y) -> (u^2 x, u^3 y)
    Integer scale;        // u
};

/// Smallest u >= 1 with u^4 A and u^6 B integral.
inline IntegralModel integral_model(ShortCurve const& c) {
    Integer u = 1;
    Integer den = lcm(c.A().get_den(), c.B().get_den());
    if (den != 1) {
        for (auto const& [p, e] : factorize(den)) {
            unsigned const va = c.A() == 0 ? 0 : valuation(c.A().get_den(), p);
            unsigned const vb = c.B() == 0 ? 0 : valuation(c.B().get_den(), p);
            unsigned const k = std::max((va + 3) / 4, (vb + 5) / 6);
            u *= pow_int(p, k);
        }
    }
    Rational u2(u * u), u3(u * u * u);
    Rational A = c.A() * u2 * u2;
    Rational B = c.B() * u3 * u3;
    return {ShortCurve::unchecked(A, B), AffineChange(u2, 0, u3, 0, 0), u};
}

/// A curve read from text: "a1,a2,a3,a4,a6" or "A,B".
struct ParsedCurve {
    GeneralCurve curve;
    bool is_short_input;

    ShortCurve short_curve() const { return ShortCurve::unchecked(curve.a4(), curve.a6()); }
};

inline ParsedCurve parse_curve(std::string_view text) {
    std::vector<Rational> parts;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        parts.push_back(parse_rational(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (parts.size() == 2) return {GeneralCurve::unchecked(0, 0, 0, parts[0], parts[1]), true};
    if (parts.size() == 5) return {GeneralCurve::unchecked(parts[0], parts[1], parts[2], parts[3], parts[4]), false};
    throw ParseError("curve must be 'A,B' or 'a1,a2,a3,a4,a6': '" + std::string(text) + "'");
}

}  // namespace mordell
