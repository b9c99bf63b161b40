// Walks y^2 = x^3 - 25x: searches small points, bounds the rank by 2-descent,
// descends a large multiple of (-4, 6) and rebuilds it from the generators.

#include <iostream>

#include "mordell/descent.hpp"
#include "mordell/two_descent.hpp"

using namespace mordell;

int main() {
    ShortCurve const curve(-25, 0);
    GeneralCurve const g = curve.general();
    auto const model = *FullTwoTorsionModel::from_curve(curve);
    double const pool_log = std::log(100.0);

    auto const small = enumerate_points(curve, pool_log);
    std::cout << "points with H(x) <= 100: " << small.size() << "\n";
    for (auto const& p : small) std::cout << "  " << to_string(p) << "\n";

    auto const rb = rank_bounds(model, pool_log);
    std::cout << "rank bounds: " << rb.lower << " <= r <= " << rb.upper << "\n";

    auto const reps = coset_representatives(model, pool_log);
    std::vector<Point> negated;
    for (auto const& q : reps) negated.push_back(negate(g, q));
    auto const k = estimate_constants(curve, pool_log, negated);
    auto const problem = make_elliptic_problem(curve, reps, k.c1_prime, k.c2);
    std::cout << "C1' = " << k.c1_prime << ", C2 = " << k.c2 << ", threshold = " << problem.threshold() << "\n";

    Point const start = add(g, mul(g, 37L, Point::affine(-4, 6)), Point::affine(5, 0));
    auto const chain = descend(problem, start);
    std::cout << "start height " << hx(start).log_value << ", " << chain.steps.size() << " steps\n";
    for (auto const& step : chain.steps)
        std::cout << "  rep " << step.index << " -> h = " << hx(step.element).log_value << "\n";

    auto const gens = generators(problem, enumerate_points(curve, problem.threshold()));
    auto const coeffs = express(problem, chain, gens);
    bool const rebuilt = combine(problem.group, gens, coeffs) == start;
    std::cout << gens.size() << " generators, reconstruction " << (rebuilt ? "exact" : "FAILED") << "\n";
    return rebuilt ? 0 : 1;
}
