#pragma once

// Naive heights on Q and P^N(Q).
//
// Over Q every place has local degree 1, so the height of a point with
// coprime integer coordinates is just the largest coordinate in absolute
// value. The place-by-place product is kept as a cross-check.

#include <algorithm>
#include <cmath>
#include <compare>
#include <span>
#include <numeric>
#include <vector>

#include "mordell/arith.hpp"
#include "mordell/errors.hpp"
#include "mordell/polynomial.hpp"

namespace mordell {

/// A place of Q: the archimedean one or a prime.
class Place {
public:
    static Place archimedean() { return Place(); }

    static Place prime(Integer p) {
        if (!is_prime(p)) throw std::invalid_argument("not a prime: " + p.get_str());
        Place v;
        v.p_ = std::move(p);
        return v;
    }

    bool is_archimedean() const { return p_ == 0; }
    Integer const& prime() const {
        if (is_archimedean()) throw std::logic_error("archimedean place has no prime");
        return p_;
    }
    /// n_v = [Q_v : Q_v] = 1 for every place of Q.
    static constexpr unsigned local_degree() { return 1; }

    friend bool operator==(Place const&, Place const&) = default;

private:
    Place() = default;
    Integer p_{0};  // 0 marks the archimedean place
};

/// p-adic valuation of a nonzero rational.
inline long ord(Rational const& x, Integer const& p) {
    if (x == 0) throw std::domain_error("ord of zero");
    long v = 0;
    if (x.get_num() != 0) v += static_cast<long>(valuation(x.get_num(), p));
    v -= static_cast<long>(valuation(x.get_den(), p));
    return v;
}

/// |x|_v as an exact rational; x must be nonzero.
inline Rational abs_value(Place const& v, Rational const& x) {
    if (x == 0) throw std::domain_error("abs_value is defined on nonzero rationals");
    if (v.is_archimedean()) return abs(x);
    long const n = ord(x, v.prime());
    Integer pn = pow_int(v.prime(), static_cast<unsigned long>(std::labs(n)));
    return n >= 0 ? make_rational(1, pn) : Rational(pn);
}

/// The archimedean place followed by every prime dividing num or den.
inline std::vector<Place> places_of(Rational const& x) {
    std::vector<Place> out{Place::archimedean()};
    std::vector<Integer> primes;
    if (x.get_num() != 0 && abs_int(x.get_num()) != 1)
        for (auto const& p : prime_divisors(x.get_num())) primes.push_back(p);
    if (x.get_den() != 1)
        for (auto const& p : prime_divisors(x.get_den())) primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    for (auto const& p : primes) out.push_back(Place::prime(p));
    return out;
}

/// prod_v |x|_v^{n_v} over the (finitely many) places where |x|_v != 1.
inline Rational product_over_places(Rational const& x) {
    Rational prod = 1;
    for (auto const& v : places_of(x)) prod *= abs_value(v, x);
    return prod;
}

inline bool verify_product_formula(Rational const& x) { return product_over_places(x) == 1; }

/// Exact height H >= 1 together with h = log H.
struct HeightValue {
    Integer magnitude{1};
    double log_value = 0.0;

    static HeightValue of(Integer magnitude) {
        if (magnitude < 1) throw std::domain_error("heights are at least 1");
        double const h = log_abs(magnitude);
        return {std::move(magnitude), h};
    }

    friend bool operator==(HeightValue const& a, HeightValue const& b) { return a.magnitude == b.magnitude; }
    friend std::strong_ordering operator<=>(HeightValue const& a, HeightValue const& b) {
        int const c = cmp(a.magnitude, b.magnitude);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
};

/// H(p/q) = max(|p|, |q|) in lowest terms.
inline HeightValue height_rational(Rational const& t) {
    return HeightValue::of(std::max(abs_int(t.get_num()), Integer(t.get_den())));
}

/// Point of P^N(Q) with coprime integer coordinates, first nonzero one positive.
class ProjectivePoint {
public:
    static ProjectivePoint from_integers(std::vector<Integer> coords) {
        if (coords.empty()) throw std::invalid_argument("projective point needs coordinates");
        Integer g = 0;
        for (auto const& c : coords) g = gcd(g, c);
        if (g == 0) throw std::invalid_argument("all projective coordinates are zero");
        auto first = std::find_if(coords.begin(), coords.end(), [](Integer const& c) { return c != 0; });
        if (*first < 0) g = -g;
        for (auto& c : coords) c /= g;
        return ProjectivePoint(std::move(coords));
    }

    static ProjectivePoint from_rationals(std::span<Rational const> coords) {
        Integer den = 1;
        for (auto const& c : coords) den = lcm(den, c.get_den());
        std::vector<Integer> ints;
        ints.reserve(coords.size());
        for (auto const& c : coords) ints.emplace_back(c * den);
        return from_integers(std::move(ints));
    }

    static ProjectivePoint from_rationals(std::vector<Rational> const& coords) {
        return from_rationals(std::span<Rational const>(coords));
    }

    /// [t, 1] for a rational t.
    static ProjectivePoint of_rational(Rational const& t) { return from_integers({t.get_num(), t.get_den()}); }

    std::vector<Integer> const& coords() const { return coords_; }
    std::size_t dimension() const { return coords_.size() - 1; }
    Integer const& operator[](std::size_t i) const { return coords_.at(i); }

    friend bool operator==(ProjectivePoint const&, ProjectivePoint const&) = default;

private:
    explicit ProjectivePoint(std::vector<Integer> coords) : coords_(std::move(coords)) {}
    std::vector<Integer> coords_;
};

inline HeightValue height_projective(ProjectivePoint const& p) {
    Integer m = 0;
    for (auto const& c : p.coords()) m = std::max(m, abs_int(c));
    return HeightValue::of(m);
}

/// H_Q(P) = prod_v max_i |x_i|_v for arbitrary (not necessarily normalized)
/// rational homogeneous coordinates.
inline Rational height_by_places(std::span<Rational const> coords) {
    std::vector<Integer> primes;
    for (auto const& c : coords) {
        if (c == 0) continue;
        for (Integer const* part : {&c.get_num(), &c.get_den()})
            if (abs_int(*part) != 1)
                for (auto const& p : prime_divisors(*part)) primes.push_back(p);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    std::vector<Place> places{Place::archimedean()};
    for (auto const& p : primes) places.push_back(Place::prime(p));

    Rational prod = 1;
    for (auto const& v : places) {
        Rational local = 0;
        for (auto const& c : coords)
            if (c != 0) local = std::max(local, abs_value(v, c));
        prod *= local;
    }
    return prod;
}

/// Every t in Q with H(t) <= bound, ordered by denominator then numerator.
inline std::vector<Rational> enumerate_rationals(unsigned long bound) {
    if (bound < 1) throw std::invalid_argument("height bound must be at least 1");
    std::vector<Rational> out;
    long const b = static_cast<long>(bound);
    for (long q = 1; q <= b; ++q)
        for (long p = -b; p <= b; ++p)
            if (std::gcd(p, q) == 1) out.push_back(make_rational(p, q));
    return out;
}

struct RootHeightBounds {
    Rational lower;                // 2^-d prod H(alpha_j)
    Integer coefficient_height;    // H([a_0, ..., a_d])
    Rational upper;                // 2^(d-1) prod H(alpha_j)
    bool holds = false;
};

/// Sandwich bound between the height of a coefficient vector (leading
/// coefficient first) and the heights of its roots. The roots must reproduce
/// the polynomial exactly after dividing by the leading coefficient.
inline RootHeightBounds root_height_bounds(std::span<Rational const> coeffs, std::span<Rational const> roots) {
    if (coeffs.empty() || coeffs.front() == 0) throw std::invalid_argument("leading coefficient must be nonzero");
    if (coeffs.size() != roots.size() + 1) throw RootsDoNotMatch("degree does not match the number of roots");
    auto const f = RationalUPoly::from_high_to_low(coeffs);
    if (Rational(1 / coeffs.front()) * f != poly_from_roots(roots))
        throw RootsDoNotMatch("roots do not reproduce the coefficients");

    Integer prod = 1;
    for (auto const& r : roots) prod *= height_rational(r).magnitude;
    auto const d = static_cast<unsigned long>(roots.size());
    RootHeightBounds out;
    out.coefficient_height = height_projective(ProjectivePoint::from_rationals(coeffs)).magnitude;
    out.lower = make_rational(prod, pow_int(2, d));
    out.upper = Rational(prod) * (d == 0 ? make_rational(1, 2) : Rational(pow_int(2, d - 1)));
    out.holds = out.lower <= out.coefficient_height && out.coefficient_height <= out.upper;
    return out;
}

struct MorphismScan {
    Rational min_ratio;
    Rational max_ratio;
    std::size_t samples = 0;
};

using IntegerForm = MPoly<Integer>;

/// Image of a point under a morphism given by homogeneous integer forms.
inline ProjectivePoint apply_morphism(std::span<IntegerForm const> forms, ProjectivePoint const& p) {
    std::vector<Integer> image;
    image.reserve(forms.size());
    for (auto const& f : forms) image.push_back(f(p.coords()));
    if (std::all_of(image.begin(), image.end(), [](Integer const& v) { return v == 0; }))
        throw CommonZero("all forms vanish at the sample point");
    return ProjectivePoint::from_integers(std::move(image));
}

/// Extremes of H(F(P)) / H(P)^d over the samples: empirical witnesses for the
/// constants in C1 H(P)^d <= H(F(P)) <= C2 H(P)^d.
inline MorphismScan morphism_height_scan(std::span<IntegerForm const> forms, unsigned degree,
                                         std::span<ProjectivePoint const> samples) {
    if (forms.empty()) throw std::invalid_argument("morphism needs at least one form");
    for (auto const& f : forms) {
        if (!f.is_homogeneous() || (f.total_degree() != static_cast<long>(degree) && !f.is_zero()))
            throw std::invalid_argument("forms must be homogeneous of the common degree");
        if (!samples.empty() && f.num_vars() != samples.front().coords().size())
            throw std::invalid_argument("form arity does not match the sample dimension");
    }
    MorphismScan scan;
    for (auto const& p : samples) {
        auto image = apply_morphism(forms, p);
        Rational ratio = make_rational(height_projective(image).magnitude,
                                       pow_int(height_projective(p).magnitude, degree));
        if (scan.samples == 0 || ratio < scan.min_ratio) scan.min_ratio = ratio;
        if (scan.samples == 0 || ratio > scan.max_ratio) scan.max_ratio = ratio;
        ++scan.samples;
    }
    return scan;
}

}  // namespace mordell
