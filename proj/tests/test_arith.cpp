#include <gtest/gtest.h>

#include <numeric>

#include "mordell/arith.hpp"
#include "mordell/polynomial.hpp"
#include "support.hpp"

using namespace mordell;

TEST(Arith, ParsesRationalsAndIntegers) {
    EXPECT_EQ(parse_rational("3"), Rational(3));
    EXPECT_EQ(parse_rational("-14/6"), make_rational(-7, 3));
    EXPECT_EQ(parse_rational(" 2/4 "), make_rational(1, 2));
    EXPECT_EQ(parse_integer("-12"), Integer(-12));
    EXPECT_THROW(parse_rational("1/0"), ParseError);
    EXPECT_THROW(parse_rational("abc"), ParseError);
    EXPECT_THROW(parse_rational(""), ParseError);
    EXPECT_THROW(parse_integer("3/4"), ParseError);
}

TEST(Arith, CanonicalRendering) {
    EXPECT_EQ(to_string(make_rational(6, -4)), "-3/2");
    EXPECT_EQ(to_string(Rational(5)), "5");
    EXPECT_EQ(to_string(Rational(0)), "0");
}

TEST(Arith, PrimalityMatchesSieve) {
    constexpr int kLimit = 20000;
    std::vector<bool> sieve(kLimit, true);
    sieve[0] = sieve[1] = false;
    for (int i = 2; i * i < kLimit; ++i)
        if (sieve[i])
            for (int j = i * i; j < kLimit; j += i) sieve[j] = false;
    for (int n = 0; n < kLimit; ++n) ASSERT_EQ(is_prime(Integer(n)), sieve[n]) << n;
    // strong pseudoprimes to several small bases
    EXPECT_FALSE(is_prime(Integer("3215031751")));
    EXPECT_FALSE(is_prime(Integer("3825123056546413051")));
    EXPECT_TRUE(is_prime(Integer("1000000000000000003")));
}

TEST(Arith, FactorizationReassembles) {
    auto rng = sampling::make_rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        Integer n = 1;
        for (int k = 0; k < 4; ++k) n *= Integer(sampling::uniform(rng, 1, 100000));
        if (trial % 3 == 0) n *= Integer("1000000007") * Integer("998244353");
        Integer back = 1;
        Integer prev = 1;
        for (auto const& [p, e] : factorize(n)) {
            EXPECT_TRUE(is_prime(p));
            EXPECT_GT(p, prev);
            prev = p;
            back *= pow_int(p, e);
        }
        EXPECT_EQ(back, n);
    }
    EXPECT_TRUE(factorize(Integer(1)).empty());
    EXPECT_EQ(factorize(Integer(-12)).size(), 2u);
}

TEST(Arith, DivisorsAgreeWithTrialDivision) {
    for (long n = 1; n <= 500; ++n) {
        std::vector<Integer> expected;
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) expected.push_back(Integer(d));
        EXPECT_EQ(divisors(Integer(n)), expected) << n;
    }
}

TEST(Arith, SquarefreePart) {
    EXPECT_EQ(squarefree_part(Integer(72)), Integer(2));
    EXPECT_EQ(squarefree_part(Integer(-12)), Integer(-3));
    EXPECT_EQ(squarefree_part(Integer(1)), Integer(1));
    EXPECT_EQ(squarefree_part(make_rational(3, 8)), Integer(6));
    EXPECT_EQ(squarefree_part(make_rational(-9, 4)), Integer(-1));
}

TEST(Arith, ExactSquareRoots) {
    EXPECT_EQ(exact_sqrt(Integer(144)), Integer(12));
    EXPECT_FALSE(exact_sqrt(Integer(145)));
    EXPECT_FALSE(exact_sqrt(Integer(-4)));
    EXPECT_EQ(rational_sqrt(make_rational(9, 49)), make_rational(3, 7));
    EXPECT_FALSE(rational_sqrt(make_rational(2, 9)));
}

TEST(Arith, LogOfHugeIntegers) {
    Integer big = pow_int(Integer(10), 400);
    EXPECT_NEAR(log_abs(big), 400 * std::log(10.0), 1e-9 * 400 * std::log(10.0));
    EXPECT_NEAR(log_abs(make_rational(1, 1000)), -std::log(1000.0), 1e-12);
}

TEST(Arith, SquareClassShortcutsAgreeWithFactoring) {
    auto rng = sampling::make_rng(6);
    std::vector<Integer> const likely{Integer(2), Integer(3), Integer(5)};
    for (int trial = 0; trial < 300; ++trial) {
        Rational const r = sampling::random_rational(rng, 5000, 5000, true);
        EXPECT_EQ(squarefree_part(r, likely), squarefree_part(r));
        EXPECT_EQ(squarefree_part(r, {}), squarefree_part(r));
        Integer const a = squarefree_part(r);
        Integer const b = squarefree_part(sampling::random_rational(rng, 5000, 5000, true));
        EXPECT_EQ(squarefree_product(a, b), squarefree_part(Integer(a * b)));
    }
    // a cofactor that is not a square falls back to factoring
    EXPECT_EQ(squarefree_part(make_rational(7 * 9 * 8, 1), likely), Integer(14));
}

TEST(Polynomial, RationalRootsOfProducts) {
    auto rng = sampling::make_rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Rational> roots;
        int const d = static_cast<int>(sampling::uniform(rng, 1, 5));
        for (int k = 0; k < d; ++k) roots.push_back(sampling::random_rational(rng, 9, 6));
        auto f = poly_from_roots(roots);
        Rational const scale = sampling::random_rational(rng, 7, 5, true);
        f = scale * f;
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        EXPECT_EQ(rational_roots(f), roots);
    }
    // x^2 + 1 and x^3 - 2 have none
    EXPECT_TRUE(rational_roots(RationalUPoly{Rational(1), Rational(0), Rational(1)}).empty());
    EXPECT_TRUE(rational_roots(RationalUPoly{Rational(-2), Rational(0), Rational(0), Rational(1)}).empty());
}

TEST(Polynomial, RationalRootsWithHugeCoefficients) {
    // roots with 60-digit numerators times an irreducible quadratic
    Integer const big = pow_int(Integer(10), 60) + 7;
    std::vector<Rational> roots{make_rational(big, 3), make_rational(-big - 2, big + 1), Rational(5)};
    auto f = poly_from_roots(roots) * RationalUPoly{Rational(1), Rational(1), Rational(1)};
    std::sort(roots.begin(), roots.end());
    EXPECT_EQ(rational_roots(f), roots);
    // repeated roots are reported once
    std::vector<Rational> twice{Rational(2), Rational(2), make_rational(-1, 3)};
    EXPECT_EQ(rational_roots(poly_from_roots(twice)), (std::vector<Rational>{make_rational(-1, 3), Rational(2)}));
    // the denominator filter
    auto const square = [](Integer const& q) { return mpz_perfect_square_p(q.get_mpz_t()) != 0; };
    std::vector<Rational> mixed{make_rational(1, 4), make_rational(1, 3)};
    EXPECT_EQ(rational_roots(poly_from_roots(mixed), square), (std::vector<Rational>{make_rational(1, 4)}));
}

TEST(Polynomial, DivisionAndGcd) {
    RationalUPoly const a{Rational(-1), Rational(0), Rational(1)};  // x^2 - 1
    RationalUPoly const b{Rational(1), Rational(1)};                // x + 1
    auto [q, r] = divmod(a, b);
    EXPECT_EQ(q, (RationalUPoly{Rational(-1), Rational(1)}));
    EXPECT_TRUE(r.is_zero());
    EXPECT_EQ(poly_gcd(Rational(3) * a, Rational(2) * b * b), b);
    EXPECT_EQ(derivative(a), (RationalUPoly{Rational(0), Rational(2)}));
}

TEST(Polynomial, MultivariateArithmetic) {
    using P = MPoly<Integer>;
    P const x = P::variable(2, 0);
    P const z = P::variable(2, 1);
    P const sq = (x + z) * (x + z);
    EXPECT_EQ(sq, x * x + Integer(2) * (x * z) + z * z);
    EXPECT_TRUE(sq.is_homogeneous());
    EXPECT_EQ(sq.total_degree(), 2);
    std::vector<Integer> at{Integer(3), Integer(-1)};
    EXPECT_EQ(sq(at), Integer(4));
    EXPECT_TRUE((sq - sq).is_zero());
}
