#pragma once

// Deterministic samplers shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "mordell/curve.hpp"
#include "mordell/ec_heights.hpp"
#include "mordell/group_law.hpp"

namespace mordell::sampling {

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t salt = 0) { return Rng(0x5eed'2024ULL ^ (salt * 0x9e3779b97f4a7c15ULL)); }

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline Rational random_rational(Rng& rng, long num_bound, long den_bound, bool nonzero = false) {
    while (true) {
        long const p = uniform(rng, -num_bound, num_bound);
        long const q = uniform(rng, 1, den_bound);
        if (nonzero && p == 0) continue;
        return make_rational(p, q);
    }
}

/// A nonsingular integral short curve through a known small integral point,
/// so every sampled curve has something to add.
inline ShortCurve random_curve_with_point(Rng& rng, long coeff_bound = 12) {
    while (true) {
        long const A = uniform(rng, -coeff_bound, coeff_bound);
        long const x = uniform(rng, -4, 4);
        long const y = uniform(rng, 1, 8);
        Rational const B = y * y - x * x * x - A * x;
        Rational const disc = 4 * Rational(A) * A * A + 27 * B * B;
        if (disc != 0) return ShortCurve(Rational(A), B);
    }
}

inline Rational random_coefficient(Rng& rng, long bound) { return Rational(uniform(rng, -bound, bound)); }

/// Points of small height: everything found up to H(x) <= seed_bound, their
/// doubles and pairwise sums, ordered by H(x) and truncated to `pool_size`.
inline std::vector<Point> point_pool(ShortCurve const& c, long seed_bound = 30, std::size_t pool_size = 120) {
    GeneralCurve const g = c.general();
    auto const seeds = enumerate_points_by_height(c, Integer(seed_bound));
    std::vector<Point> pool = seeds;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        pool.push_back(double_point(g, seeds[i]));
        pool.push_back(mul(g, 3L, seeds[i]));
        for (std::size_t j = i + 1; j < seeds.size(); ++j) {
            pool.push_back(add(g, seeds[i], seeds[j]));
            pool.push_back(subtract(g, seeds[i], seeds[j]));
        }
    }
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    std::stable_sort(pool.begin(), pool.end(),
                     [](Point const& a, Point const& b) { return hx(a).magnitude < hx(b).magnitude; });
    if (pool.size() > pool_size) pool.resize(pool_size);
    return pool;
}

/// `count` draws (with replacement) from the pool.
inline std::vector<Point> sample_points(ShortCurve const& c, std::size_t count, Rng& rng) {
    auto const pool = point_pool(c);
    std::vector<Point> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(pool.size()) - 1))]);
    return out;
}

inline bool near(double a, double b, double rel = 1e-9) {
    return std::fabs(a - b) <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace mordell::sampling
