#pragma once

// Descent: given representatives Q_1..Q_r of A/mA and a height that
// contracts under division by m, repeatedly write P_{j-1} = m P_j + Q_{i_j}
// until h(P_n) <= 1 + (C1' + C2)/2. Then
//
//     P = m^n P_n + sum_{j=1..n} m^{j-1} Q_{i_j},
//
// so the reps together with the finitely many points of bounded height
// generate A.
//
// The engine is generic over any type modelling HeightedGroup; the elliptic
// instantiation (m = 2, halving through the duplication quartic) follows.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "mordell/ec_heights.hpp"
#include "mordell/errors.hpp"
#include "mordell/group_law.hpp"

namespace mordell {

template <class G>
concept HeightedGroup = requires(G const& g, typename G::Element const& a, Integer const& n) {
    { g.zero() } -> std::convertible_to<typename G::Element>;
    { g.add(a, a) } -> std::convertible_to<typename G::Element>;
    { g.negate(a) } -> std::convertible_to<typename G::Element>;
    { g.mul(n, a) } -> std::convertible_to<typename G::Element>;
    { g.height(a) } -> std::convertible_to<double>;
    { a == a } -> std::convertible_to<bool>;
};

/// P = m * quotient + coset_reps[index].
template <class Element>
struct Division {
    std::size_t index;
    Element quotient;
};

template <HeightedGroup G>
struct DescentProblem {
    using Element = typename G::Element;

    G group;
    long m = 2;
    std::vector<Element> coset_reps;
    std::function<Division<Element>(Element const&)> divide;
    double c1_prime = 0.0;
    double c2 = 0.0;

    /// 1 + (C1' + C2)/2.
    double threshold() const { return 1.0 + (c1_prime + c2) / 2.0; }
};

template <class Element>
struct DescentStep {
    std::size_t index;  // i_j
    Element element;    // P_j
    double height;      // h(P_j)
};

template <class Element>
struct DescentChain {
    Element start;
    double start_height = 0.0;
    std::vector<DescentStep<Element>> steps;

    Element const& final_element() const { return steps.empty() ? start : steps.back().element; }
    double final_height() const { return steps.empty() ? start_height : steps.back().height; }
};

namespace detail {

inline double slack(double x) { return 1e-9 * std::max(1.0, std::fabs(x)); }

}  // namespace detail

template <HeightedGroup G>
DescentChain<typename G::Element> descend(DescentProblem<G> const& problem, typename G::Element const& p) {
    using Element = typename G::Element;
    if (problem.m < 2) throw std::invalid_argument("descent needs m >= 2");
    auto const& group = problem.group;
    double const m2 = static_cast<double>(problem.m) * static_cast<double>(problem.m);
    double const limit = problem.threshold();

    DescentChain<Element> chain{p, group.height(p), {}};
    auto const max_steps = static_cast<std::size_t>(std::ceil(10.0 * (1.0 + chain.start_height)));
    Element current = p;
    double h = chain.start_height;
    while (h > limit + detail::slack(limit)) {
        if (chain.steps.size() >= max_steps)
            throw NonContraction("descent exceeded its step limit without reaching the height threshold");
        Division<Element> div = problem.divide(current);
        if (div.index >= problem.coset_reps.size())
            throw std::logic_error("divide oracle returned an out-of-range coset index");
        Element const rebuilt = group.add(group.mul(Integer(problem.m), div.quotient), problem.coset_reps[div.index]);
        if (!(rebuilt == current)) throw std::logic_error("divide oracle output violates P = m P1 + Q_i");
        double const next_h = group.height(div.quotient);
        double const bound = (2.0 * h + problem.c1_prime + problem.c2) / m2;
        if (next_h > bound + detail::slack(bound))
            throw NonContraction("height did not contract: h(P_j) exceeds (2h(P_{j-1}) + C1' + C2)/m^2");
        chain.steps.push_back({div.index, div.quotient, next_h});
        current = div.quotient;
        h = next_h;
    }
    return chain;
}

/// m^n P_n + sum_j m^{j-1} Q_{i_j}; equals chain.start for every valid chain.
template <HeightedGroup G>
typename G::Element reconstruct(DescentProblem<G> const& problem,
                                DescentChain<typename G::Element> const& chain) {
    auto const& group = problem.group;
    std::size_t const n = chain.steps.size();
    Integer const m(problem.m);
    auto acc = group.mul(pow_int(m, n), chain.final_element());
    for (std::size_t j = 1; j <= n; ++j)
        acc = group.add(acc, group.mul(pow_int(m, j - 1), problem.coset_reps[chain.steps[j - 1].index]));
    return acc;
}

/// h(P_n) <= (2/m^2)^n h(P) + (C1' + C2)/(m^2 - 2) at every step of the chain.
template <HeightedGroup G>
bool audit_chain(DescentProblem<G> const& problem, DescentChain<typename G::Element> const& chain) {
    double const m2 = static_cast<double>(problem.m) * static_cast<double>(problem.m);
    double const tail = (problem.c1_prime + problem.c2) / (m2 - 2.0);
    double factor = 1.0;
    for (auto const& step : chain.steps) {
        factor *= 2.0 / m2;
        double const bound = factor * chain.start_height + tail;
        if (step.height > bound + detail::slack(bound)) return false;
    }
    return true;
}

/// Coset reps followed by the bounded-height elements, duplicates dropped.
template <HeightedGroup G>
std::vector<typename G::Element> generators(DescentProblem<G> const& problem,
                                            std::vector<typename G::Element> const& bounded_elements) {
    std::vector<typename G::Element> out;
    auto push_unique = [&](auto const& e) {
        if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
    };
    for (auto const& q : problem.coset_reps) push_unique(q);
    for (auto const& q : bounded_elements) push_unique(q);
    return out;
}

/// Integer coefficients c with sum c_k gens_k = chain.start, read off the chain.
/// Throws if the final element is not among the generators.
template <HeightedGroup G>
std::vector<Integer> express(DescentProblem<G> const& problem, DescentChain<typename G::Element> const& chain,
                             std::vector<typename G::Element> const& gens) {
    auto index_of = [&](auto const& e) {
        auto it = std::find(gens.begin(), gens.end(), e);
        if (it == gens.end()) throw std::invalid_argument("element is not among the generators");
        return static_cast<std::size_t>(it - gens.begin());
    };
    std::vector<Integer> coeffs(gens.size(), Integer(0));
    Integer const m(problem.m);
    for (std::size_t j = 1; j <= chain.steps.size(); ++j)
        coeffs[index_of(problem.coset_reps[chain.steps[j - 1].index])] += pow_int(m, j - 1);
    coeffs[index_of(chain.final_element())] += pow_int(m, chain.steps.size());
    return coeffs;
}

template <HeightedGroup G>
typename G::Element combine(G const& group, std::vector<typename G::Element> const& gens,
                            std::vector<Integer> const& coeffs) {
    auto acc = group.zero();
    for (std::size_t k = 0; k < gens.size(); ++k)
        if (coeffs.at(k) != 0) acc = group.add(acc, group.mul(coeffs[k], gens[k]));
    return acc;
}

// ---------------------------------------------------------------------------
// Elliptic curves, m = 2.

/// E(Q) for a short model with the x-height h_x.
struct EllipticGroup {
    using Element = Point;

    explicit EllipticGroup(ShortCurve c) : curve(c.general()), short_curve(std::move(c)) {}

    GeneralCurve curve;
    ShortCurve short_curve;

    Point zero() const { return Point::infinity(); }
    Point add(Point const& a, Point const& b) const { return mordell::add(curve, a, b); }
    Point negate(Point const& a) const { return mordell::negate(curve, a); }
    Point mul(Integer const& n, Point const& a) const { return mordell::mul(curve, n, a); }
    double height(Point const& a) const { return hx(a).log_value; }
};

/// Every Q in E(Q) with [2]Q = P, sorted. Candidates come from the rational
/// roots of F(X,1) - x(P) G(X,1); each survivor is confirmed by doubling.
inline std::vector<Point> halve_point(ShortCurve const& c, Point const& p) {
    GeneralCurve const g = c.general();
    std::vector<Point> out;
    if (p.is_infinity()) {
        out.push_back(Point::infinity());
        for (auto const& t : two_torsion(g)) out.push_back(t);
        return out;
    }
    Rational const& x = p.x();
    Rational const& A = c.A();
    Rational const& B = c.B();
    RationalUPoly const quartic{Rational(A * A - 4 * B * x), Rational(-8 * B - 4 * A * x), Rational(-2 * A),
                                Rational(-4 * x), Rational(1)};
    auto const square_denominator = [](Integer const& q) { return mpz_perfect_square_p(q.get_mpz_t()) != 0; };
    for (auto const& X : rational_roots(quartic, square_denominator)) {
        auto y = rational_sqrt(Rational((X * X + A) * X + B));
        if (!y) continue;
        for (Rational const& cand_y : {Rational(-*y), *y}) {
            Point q = Point::affine(X, cand_y);
            if (double_point(g, q) == p && std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Divide oracle for m = 2: first rep index i (in order) for which P - Q_i
/// has a rational half; the smallest half under the point order is returned.
inline std::function<Division<Point>(Point const&)> halving_divider(ShortCurve c, std::vector<Point> reps) {
    return [c = std::move(c), reps = std::move(reps)](Point const& p) -> Division<Point> {
        GeneralCurve const g = c.general();
        for (std::size_t i = 0; i < reps.size(); ++i) {
            auto halves = halve_point(c, subtract(g, p, reps[i]));
            if (!halves.empty()) return {i, halves.front()};
        }
        throw IncompleteCosets("point lies in no supplied coset of 2E(Q)");
    };
}

struct DescentConstants {
    double c1_prime = 0.0;
    double c2 = 0.0;
    std::size_t sample_size = 0;
};

/// Empirical witnesses over all points with h_x <= sample_bound:
///   C2  = max(4h(P) - h([2]P)),  C1' = max over reps Q of (h(P - Q) - 2h(P)),
/// both floored at 0.
inline DescentConstants estimate_constants(ShortCurve const& c, double sample_bound, std::vector<Point> const& reps) {
    GeneralCurve const g = c.general();
    auto const sample = enumerate_points(c, sample_bound);
    DescentConstants out;
    out.sample_size = sample.size();
    for (auto const& p : sample) {
        double const hp = hx(p).log_value;
        out.c2 = std::max(out.c2, 4.0 * hp - hx(double_point(g, p)).log_value);
        for (auto const& q : reps) out.c1_prime = std::max(out.c1_prime, hx(subtract(g, p, q)).log_value - 2.0 * hp);
    }
    return out;
}

inline DescentProblem<EllipticGroup> make_elliptic_problem(ShortCurve const& c, std::vector<Point> reps,
                                                           double c1_prime, double c2) {
    DescentProblem<EllipticGroup> problem{EllipticGroup(c), 2, reps, halving_divider(c, reps), c1_prime, c2};
    return problem;
}

}  // namespace mordell
