#include <gtest/gtest.h>

#include <set>

#include "mordell/two_descent.hpp"
#include "support.hpp"

using namespace mordell;

namespace {

Point pt(long x, long y) { return Point::affine(x, y); }

SquareClassPair sq(long a, long b) { return {Integer(a), Integer(b)}; }

FullTwoTorsionModel model_of(long A, long B) { return *FullTwoTorsionModel::from_curve(ShortCurve(A, B)); }

}  // namespace

TEST(TwoDescent, ModelFromCurve) {
    auto m = model_of(-1, 0);
    EXPECT_EQ(m.e1(), -1);
    EXPECT_EQ(m.e2(), 0);
    EXPECT_EQ(m.e3(), 1);
    EXPECT_EQ(m.curve().A(), -1);
    EXPECT_EQ(m.curve().B(), 0);
    EXPECT_FALSE(FullTwoTorsionModel::from_curve(ShortCurve(0, 1)));
    EXPECT_THROW(FullTwoTorsionModel(1, 1, -2), SingularCurve);
    EXPECT_THROW(FullTwoTorsionModel(1, 2, 3), std::invalid_argument);
    auto odd = FullTwoTorsionModel(make_rational(1, 2), make_rational(1, 3), make_rational(-5, 6));
    EXPECT_EQ(odd.curve().B(), -(make_rational(1, 2) * make_rational(1, 3) * make_rational(-5, 6)));
}

TEST(TwoDescent, SquareClassGroup) {
    EXPECT_EQ(SquareClassPair::of(make_rational(8, 3), Rational(-18)), sq(6, -2));
    auto rng = sampling::make_rng(71);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = SquareClassPair::of(sampling::random_rational(rng, 60, 60, true), sampling::random_rational(rng, 60, 60, true));
        EXPECT_EQ(a * a, SquareClassPair::identity());
        EXPECT_EQ(a * SquareClassPair::identity(), a);
    }
}

TEST(TwoDescent, DeltaOnCongruentCurve) {
    auto m = model_of(-1, 0);
    EXPECT_EQ(delta_map(m, pt(-1, 0)), sq(2, -1));
    EXPECT_EQ(delta_map(m, pt(0, 0)), sq(1, -1));
    EXPECT_EQ(delta_map(m, pt(1, 0)), sq(2, 1));
    EXPECT_EQ(sq(2, -1) * sq(1, -1), sq(2, 1));
    EXPECT_EQ(delta_map(m, Point::infinity()), SquareClassPair::identity());
}

TEST(TwoDescent, DeltaIsHomomorphismKillingDoubles) {
    auto rng = sampling::make_rng(72);
    for (auto [A, B] : {std::pair{-25L, 0L}, std::pair{-1L, 0L}, std::pair{-4L, 0L}, std::pair{-7L, 6L},
                        std::pair{-43L, 42L}}) {
        auto m = model_of(A, B);
        auto const g = m.curve().general();
        auto const pts = sampling::sample_points(m.curve(), 15, rng);
        for (auto const& p : pts) {
            EXPECT_EQ(delta_map(m, double_point(g, p)), SquareClassPair::identity());
            for (auto const& q : pts) {
                EXPECT_EQ(delta_map(m, add(g, p, q)), delta_map(m, p) * delta_map(m, q));
                EXPECT_EQ(delta_map(m, add(g, p, double_point(g, q))), delta_map(m, p));
            }
        }
    }
}

TEST(TwoDescent, SupportPrimes) {
    EXPECT_EQ(support_primes(ShortCurve(-1, 0)), (std::vector<Integer>{Integer(2)}));
    EXPECT_EQ(support_primes(ShortCurve(0, -1)), (std::vector<Integer>{Integer(2), Integer(3)}));
    EXPECT_EQ(support_primes(ShortCurve(0, 1)), (std::vector<Integer>{Integer(2), Integer(3)}));
    EXPECT_EQ(support_primes(ShortCurve(-25, 0)), (std::vector<Integer>{Integer(2), Integer(5)}));
    EXPECT_THROW(support_primes(ShortCurve(make_rational(1, 2), 1)), NonIntegralModel);
}

TEST(TwoDescent, CandidateClassCounts) {
    auto two = candidate_classes({Integer(2)});
    EXPECT_EQ(two.size(), 16u);
    std::set<std::pair<long, long>> got;
    for (auto const& c : two) got.insert({c.c1.get_si(), c.c2.get_si()});
    for (long a : {1L, -1L, 2L, -2L})
        for (long b : {1L, -1L, 2L, -2L}) EXPECT_TRUE(got.count({a, b}));
    EXPECT_EQ(candidate_classes({}).size(), 4u);
    EXPECT_EQ(candidate_classes({Integer(2), Integer(3)}).size(), 64u);
}

TEST(TwoDescent, RankBoundsOfCongruentCurve) {
    auto rb = rank_bounds(model_of(-1, 0), 4.0);
    EXPECT_EQ(rb.lower, 0u);
    EXPECT_EQ(rb.upper, 2u);
    EXPECT_EQ(rb.support_primes, (std::vector<Integer>{Integer(2)}));
    auto degenerate = rank_bounds(model_of(-1, 0), 0.0);
    EXPECT_EQ(degenerate.lower, 0u);
}

TEST(TwoDescent, RankBoundsOfOtherCurves) {
    auto four = rank_bounds(model_of(-4, 0), std::log(100.0));
    EXPECT_EQ(ShortCurve(-4, 0).discriminant(), 4096);
    EXPECT_EQ(four.support_primes, (std::vector<Integer>{Integer(2)}));
    EXPECT_EQ(four.upper, 2u);
    EXPECT_LE(four.lower, four.upper);

    auto congruent5 = rank_bounds(model_of(-25, 0), std::log(100.0));
    EXPECT_EQ(congruent5.lower, 1u);  // (-4, 6) has infinite order
    EXPECT_EQ(congruent5.upper, 4u);
    EXPECT_LE(congruent5.lower, congruent5.upper);

    auto rank2 = rank_bounds(model_of(-43, 42), std::log(100.0));
    EXPECT_LE(rank2.lower, rank2.upper);
}

TEST(TwoDescent, ImagesLieInCandidateClasses) {
    for (auto [A, B] : {std::pair{-25L, 0L}, std::pair{-1L, 0L}, std::pair{-7L, 6L}, std::pair{-43L, 42L}}) {
        auto m = model_of(A, B);
        auto const support = support_primes(m.curve());
        auto const classes = candidate_classes(support);
        for (auto const& p : enumerate_points(m.curve(), std::log(300.0)))
            EXPECT_NE(std::find(classes.begin(), classes.end(), delta_map(m, p)), classes.end()) << to_string(p);
    }
}

TEST(TwoDescent, CosetRepresentativesHaveDistinctImages) {
    auto m = model_of(-25, 0);
    auto reps = coset_representatives(m, std::log(100.0));
    EXPECT_EQ(reps.size(), 8u);
    std::set<SquareClassPair> images;
    for (auto const& r : reps) images.insert(delta_map(m, r));
    EXPECT_EQ(images.size(), reps.size());
    EXPECT_EQ(reps.front(), Point::infinity());
}

TEST(TwoDescent, TorsionExamples) {
    auto cong = torsion_subgroup(ShortCurve(-1, 0));
    EXPECT_EQ(cong.structure, "Z/2 x Z/2");
    EXPECT_EQ(cong.points, (std::vector<Point>{Point::infinity(), pt(-1, 0), pt(0, 0), pt(1, 0)}));

    auto three = torsion_subgroup(ShortCurve(0, 4));
    EXPECT_EQ(three.structure, "Z/3");
    EXPECT_EQ(three.generators, (std::vector<Point>{pt(0, 2)}));

    auto six = torsion_subgroup(ShortCurve(0, 1));
    EXPECT_EQ(six.structure, "Z/6");
    EXPECT_EQ(six.generators, (std::vector<Point>{pt(2, 3)}));

    auto none = torsion_subgroup(ShortCurve(0, -2));
    EXPECT_EQ(none.structure, "trivial");
    EXPECT_EQ(none.order, 1u);
    EXPECT_FALSE(order_of_point(ShortCurve(0, -2).general(), pt(3, 5), kMazurOrderBound));
}

TEST(TwoDescent, TorsionOfLargerGroups) {
    // y^2 = x^3 - 43x + 166: (3, 8) has order 7.
    auto seven = torsion_subgroup(ShortCurve(-43, 166), std::log(100.0));
    EXPECT_EQ(seven.structure, "Z/7");
    EXPECT_EQ(seven.order, 7u);
    EXPECT_EQ(order_of_point(ShortCurve(-43, 166).general(), pt(3, 8), kMazurOrderBound), 7u);
}

TEST(TwoDescent, TorsionIsASubgroup) {
    for (auto [A, B] : {std::pair{0L, 1L}, std::pair{-1L, 0L}, std::pair{-43L, 166L}, std::pair{0L, 4L}}) {
        auto const c = ShortCurve(A, B);
        auto const g = c.general();
        auto const t = torsion_subgroup(c, std::log(1000.0));
        for (auto const& p : t.points) {
            EXPECT_NE(std::find(t.points.begin(), t.points.end(), negate(g, p)), t.points.end());
            for (auto const& q : t.points)
                EXPECT_NE(std::find(t.points.begin(), t.points.end(), add(g, p, q)), t.points.end());
        }
    }
}
