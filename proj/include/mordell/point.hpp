#pragma once

#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mordell/arith.hpp"

namespace mordell {

/// A rational point of an elliptic curve in affine coordinates, or the
/// point at infinity O = [0,1,0]. Carries no curve; callers pair it with one.
class Point {
public:
    Point() = default;  // O

    static Point infinity() { return Point(); }
    static Point affine(Rational x, Rational y) { return Point(std::move(x), std::move(y)); }

    bool is_infinity() const { return infinity_; }

    Rational const& x() const {
        require_affine();
        return x_;
    }
    Rational const& y() const {
        require_affine();
        return y_;
    }

    friend bool operator==(Point const& a, Point const& b) {
        if (a.infinity_ || b.infinity_) return a.infinity_ == b.infinity_;
        return a.x_ == b.x_ && a.y_ == b.y_;
    }

    /// Total order: O first, then by (x, y).
    friend bool operator<(Point const& a, Point const& b) {
        if (a.infinity_ || b.infinity_) return a.infinity_ && !b.infinity_;
        if (a.x_ != b.x_) return a.x_ < b.x_;
        return a.y_ < b.y_;
    }

    friend std::ostream& operator<<(std::ostream& os, Point const& p) {
        if (p.infinity_) return os << "O";
        return os << "(" << to_string(p.x_) << "," << to_string(p.y_) << ")";
    }

private:
    Point(Rational x, Rational y) : infinity_(false), x_(std::move(x)), y_(std::move(y)) {}

    void require_affine() const {
        if (infinity_) throw std::logic_error("point at infinity has no affine coordinates");
    }

    bool infinity_ = true;
    Rational x_{0};
    Rational y_{0};
};

inline std::string to_string(Point const& p) {
    if (p.is_infinity()) return "O";
    return "(" + to_string(p.x()) + "," + to_string(p.y()) + ")";
}

/// Parses "x,y" (exact rationals, optional surrounding parentheses) or "O".
inline Point parse_point(std::string_view text) {
    auto s = detail::trim(text);
    if (s == "O" || s == "o" || s == "inf") return Point::infinity();
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    auto comma = s.find(',');
    if (comma == std::string_view::npos || s.find(',', comma + 1) != std::string_view::npos)
        throw ParseError("point must be 'x,y' or 'O': '" + std::string(text) + "'");
    return Point::affine(parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1)));
}

}  // namespace mordell
