#pragma once

// Complete 2-descent bookkeeping for y^2 = (x - e1)(x - e2)(x - e3) with all
// e_i rational, plus torsion computation for arbitrary short models.
//
// The upper rank bound only uses the fact that square classes in the image
// are supported on -1 and the primes dividing 2*disc; no local solvability
// test is run, so the bound is crude.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mordell/arith.hpp"
#include "mordell/curve.hpp"
#include "mordell/ec_heights.hpp"
#include "mordell/group_law.hpp"

namespace mordell {

/// Mazur: a rational torsion point on an elliptic curve over Q has order at most 12.
inline constexpr unsigned kMazurOrderBound = 12;

/// An element of (Q^x / Q^x2)^2, each entry a squarefree integer.
struct SquareClassPair {
    Integer c1{1};
    Integer c2{1};

    static SquareClassPair of(Rational const& a, Rational const& b) { return {squarefree_part(a), squarefree_part(b)}; }
    static SquareClassPair identity() { return {}; }

    friend SquareClassPair operator*(SquareClassPair const& a, SquareClassPair const& b) {
        return {squarefree_product(a.c1, b.c1), squarefree_product(a.c2, b.c2)};
    }
    friend bool operator==(SquareClassPair const&, SquareClassPair const&) = default;
    friend bool operator<(SquareClassPair const& a, SquareClassPair const& b) {
        return a.c1 != b.c1 ? a.c1 < b.c1 : a.c2 < b.c2;
    }
};

class FullTwoTorsionModel {
public:
    /// e1 + e2 + e3 must vanish (short model) and the roots must be distinct.
    FullTwoTorsionModel(Rational e1, Rational e2, Rational e3) : e_{std::move(e1), std::move(e2), std::move(e3)} {
        if (e_[0] + e_[1] + e_[2] != 0) throw std::invalid_argument("roots of a short model sum to zero");
        if (e_[0] == e_[1] || e_[0] == e_[2] || e_[1] == e_[2]) throw SingularCurve("repeated 2-torsion root");
        Integer bad = 2;
        for (Rational const& d : {Rational(e_[0] - e_[1]), Rational(e_[0] - e_[2]), Rational(e_[1] - e_[2])}) bad *= d.get_num() * d.get_den();
        for (auto const& e : e_) bad *= e.get_den();
        primes_ = prime_divisors(bad);
    }

    /// nullopt unless 4x^3 + 4Ax + 4B has three rational roots; roots ascending.
    static std::optional<FullTwoTorsionModel> from_curve(ShortCurve const& c) {
        auto roots = rational_roots(RationalUPoly{c.B(), c.A(), Rational(0), Rational(1)});
        if (roots.size() != 3) return std::nullopt;
        return FullTwoTorsionModel(roots[0], roots[1], roots[2]);
    }

    Rational const& e1() const { return e_[0]; }
    Rational const& e2() const { return e_[1]; }
    Rational const& e3() const { return e_[2]; }

    /// Primes dividing 2, the root differences and the root denominators:
    /// the only primes that can occur in a delta image.
    std::vector<Integer> const& bad_primes() const { return primes_; }

    ShortCurve curve() const {
        return ShortCurve(e_[0] * e_[1] + e_[0] * e_[2] + e_[1] * e_[2], Rational(-e_[0] * e_[1] * e_[2]));
    }

private:
    std::array<Rational, 3> e_;
    std::vector<Integer> primes_;
};

/// The 2-descent map E(Q) -> (Q^x/Q^x2)^2, P -> (x - e1, x - e2), with the
/// usual substitutions at the two roots where a factor vanishes.
inline SquareClassPair delta_map(FullTwoTorsionModel const& m, Point const& p) {
    if (p.is_infinity()) return SquareClassPair::identity();
    Rational const& x = p.x();
    Rational const &e1 = m.e1(), &e2 = m.e2(), &e3 = m.e3();
    auto const cls = [&](Rational const& a, Rational const& b) {
        return SquareClassPair{squarefree_part(a, m.bad_primes()), squarefree_part(b, m.bad_primes())};
    };
    if (x == e1) return cls((e1 - e2) * (e1 - e3), e1 - e2);
    if (x == e2) return cls(e2 - e1, (e2 - e1) * (e2 - e3));
    return cls(x - e1, x - e2);
}

/// Sorted primes dividing 2 * Delta, Delta = -16(4A^3 + 27B^2).
inline std::vector<Integer> support_primes(ShortCurve const& c) {
    if (!c.is_integral()) throw NonIntegralModel("support primes need an integral model");
    Integer two_delta(2 * c.discriminant());
    if (two_delta == 0) throw SingularCurve("discriminant is zero");
    return prime_divisors(two_delta);
}

namespace detail {

/// Signed products of subsets of the support: +1, -1, p1, -p1, ...
inline std::vector<Integer> square_classes(std::vector<Integer> const& support) {
    std::vector<Integer> out;
    std::size_t const n = support.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        Integer v = 1;
        for (std::size_t k = 0; k < n; ++k)
            if (mask >> k & 1) v *= support[k];
        out.push_back(v);
        out.push_back(-v);
    }
    return out;
}

}  // namespace detail

/// Every pair of square classes supported on {-1} and the given primes:
/// (2^(1+|S|))^2 pairs.
inline std::vector<SquareClassPair> candidate_classes(std::vector<Integer> const& support) {
    if (support.size() > 20) throw std::invalid_argument("support too large to enumerate");
    auto const classes = detail::square_classes(support);
    std::vector<SquareClassPair> out;
    out.reserve(classes.size() * classes.size());
    for (auto const& a : classes)
        for (auto const& b : classes) out.push_back({a, b});
    return out;
}

/// Exponent vectors over F2 for square-class pairs, relative to a fixed
/// list of primes: [sign c1, primes of c1..., sign c2, primes of c2...].
class F2Encoder {
public:
    explicit F2Encoder(std::vector<Integer> primes) : primes_(std::move(primes)) {}

    std::vector<std::uint8_t> encode(SquareClassPair const& s) const {
        std::vector<std::uint8_t> v;
        v.reserve(2 * (primes_.size() + 1));
        for (Integer const* c : {&s.c1, &s.c2}) {
            v.push_back(*c < 0 ? 1 : 0);
            for (auto const& p : primes_) v.push_back(*c % p == 0 ? 1 : 0);
        }
        return v;
    }

private:
    std::vector<Integer> primes_;
};

/// Incremental row reduction over F2; pivots on the lowest set index.
class F2Basis {
public:
    /// Adds v; returns true if it raised the rank.
    bool insert(std::vector<std::uint8_t> v) {
        for (auto const& [pivot, row] : rows_)
            if (v[pivot]) xor_into(v, row);
        auto it = std::find(v.begin(), v.end(), 1);
        if (it == v.end()) return false;
        rows_.emplace_back(static_cast<std::size_t>(it - v.begin()), std::move(v));
        return true;
    }
    std::size_t rank() const { return rows_.size(); }

private:
    static void xor_into(std::vector<std::uint8_t>& v, std::vector<std::uint8_t> const& row) {
        for (std::size_t i = 0; i < v.size(); ++i) v[i] ^= row[i];
    }
    std::vector<std::pair<std::size_t, std::vector<std::uint8_t>>> rows_;
};

namespace detail {

/// Every prime that occurs in a list of square classes, sorted.
inline std::vector<Integer> primes_in(std::vector<SquareClassPair> const& images) {
    std::vector<Integer> primes;
    for (auto const& s : images)
        for (Integer const* c : {&s.c1, &s.c2})
            if (abs_int(*c) != 1)
                for (auto const& p : prime_divisors(*c)) primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    return primes;
}

/// Points whose delta-images are F2-independent, in search order.
inline std::vector<Point> independent_points(FullTwoTorsionModel const& model, std::vector<Point> const& points) {
    std::vector<SquareClassPair> images;
    for (auto const& p : points) images.push_back(delta_map(model, p));
    F2Encoder const enc(primes_in(images));
    F2Basis basis;
    std::vector<Point> out;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (basis.insert(enc.encode(images[i]))) out.push_back(points[i]);
    return out;
}

}  // namespace detail

struct RankBounds {
    unsigned lower = 0;
    unsigned upper = 0;
    std::vector<Point> evidence_points;  // points with independent delta-images
    std::vector<Integer> support_primes;
    std::size_t points_searched = 0;
};

/// upper = 2(1 + |S|) - 2 from the candidate count, lower from the F2-rank of
/// the delta-images of points with h_x <= search_log_height; both minus the
/// contribution 2 of the full 2-torsion, floored at 0.
inline RankBounds rank_bounds(FullTwoTorsionModel const& model, double search_log_height) {
    ShortCurve const c = model.curve();
    RankBounds out;
    out.support_primes = support_primes(c);
    unsigned const dim_bound = 2 * (1 + static_cast<unsigned>(out.support_primes.size()));
    out.upper = dim_bound >= 2 ? dim_bound - 2 : 0;
    auto const points = enumerate_points(c, search_log_height);
    out.points_searched = points.size();
    out.evidence_points = detail::independent_points(model, points);
    auto const found = static_cast<unsigned>(out.evidence_points.size());
    out.lower = found >= 2 ? found - 2 : 0;
    return out;
}

/// Representatives of E(Q)/2E(Q) from the points found up to the search
/// height: all subset sums of the points with independent delta-images.
/// Complete whenever the search found a full basis of the image.
inline std::vector<Point> coset_representatives(FullTwoTorsionModel const& model, double search_log_height) {
    ShortCurve const c = model.curve();
    GeneralCurve const g = c.general();
    auto const basis = detail::independent_points(model, enumerate_points(c, search_log_height));
    std::vector<Point> reps;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << basis.size()); ++mask) {
        Point sum = Point::infinity();
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (mask >> k & 1) sum = add(g, sum, basis[k]);
        reps.push_back(sum);
    }
    return reps;
}

struct TorsionSubgroup {
    std::string structure;         // "trivial", "Z/n" or "Z/2 x Z/2n"
    unsigned order = 1;
    std::vector<Point> points;     // sorted, O first
    std::vector<Point> generators;
    Integer search_bound;          // H(x) bound used by the search
};

/// log(max(|4 Delta|, 100)).
inline double default_torsion_search_height(ShortCurve const& c) {
    Rational const four_delta = abs(Rational(4 * c.discriminant()));
    return four_delta > 100 ? log_abs(four_delta) : std::log(100.0);
}

/// Torsion found by bounded search plus exact 2-torsion, closed under addition.
inline TorsionSubgroup torsion_subgroup(ShortCurve const& c, std::optional<double> search_log_height = std::nullopt) {
    if (!c.is_integral()) throw NonIntegralModel("torsion search needs an integral model");
    GeneralCurve const g = c.general();
    TorsionSubgroup out;
    out.search_bound = height_bound_from_log(search_log_height.value_or(default_torsion_search_height(c)));

    std::vector<Point> torsion{Point::infinity()};
    auto push_unique = [&](Point const& p) {
        if (std::find(torsion.begin(), torsion.end(), p) == torsion.end()) torsion.push_back(p);
    };
    for (auto const& t : two_torsion(g)) push_unique(t);
    for (auto const& p : enumerate_points_by_height(c, out.search_bound))
        if (order_of_point(g, p, kMazurOrderBound)) push_unique(p);
    for (std::size_t i = 0; i < torsion.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) push_unique(add(g, torsion[i], torsion[j]));

    std::sort(torsion.begin(), torsion.end());
    out.points = torsion;
    out.order = static_cast<unsigned>(torsion.size());

    unsigned two_count = 0;
    Point cyclic_gen;
    unsigned best = 1;
    for (auto const& p : torsion) {
        unsigned const n = *order_of_point(g, p, kMazurOrderBound * 2);
        if (n == 2) ++two_count;
        if (n >= best && n > 1) {
            best = n;
            cyclic_gen = p;
        }
    }
    if (out.order == 1) {
        out.structure = "trivial";
    } else if (two_count == 3) {
        out.structure = "Z/2 x Z/" + std::to_string(out.order / 2);
        // a 2-torsion point outside the cyclic factor generated by cyclic_gen
        Point const half_turn = mul(g, static_cast<long>(best / 2), cyclic_gen);
        out.generators.push_back(cyclic_gen);
        for (auto const& p : torsion)
            if (order_of_point(g, p, 2) == 2u && !(p == half_turn)) {
                out.generators.push_back(p);
                break;
            }
    } else {
        out.structure = "Z/" + std::to_string(out.order);
        out.generators.push_back(cyclic_gen);
    }
    return out;
}

}  // namespace mordell
