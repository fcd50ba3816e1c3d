#include <gtest/gtest.h>

#include "support.hpp"

using namespace mug;
using mug::testing::audited;

namespace
{

multi_series var(unsigned nvars, unsigned D, unsigned i)
{
    return multi_series::variable(nvars, D, i);
}

} // namespace

TEST(Fgl, UnitCommutativityAssociativityThroughDegree10)
{
    const unsigned D = 10;
    const multi_series x = var(3, D, 0), y = var(3, D, 1), z = var(3, D, 2);
    const multi_series zero(3, D);
    EXPECT_EQ(fgl_add(x, zero, D), x);
    EXPECT_EQ(fgl_add(x, y, D), fgl_add(y, x, D));
    EXPECT_EQ(fgl_add(fgl_add(x, y, D), z, D), fgl_add(x, fgl_add(y, z, D), D));
}

TEST(Fgl, LowOrderTerms)
{
    const unsigned D = 4;
    const multi_series F = fgl_add(var(2, D, 0), var(2, D, 1), D);
    EXPECT_EQ(F.coefficient({1, 0}), graded_rational(1));
    EXPECT_EQ(F.coefficient({0, 1}), graded_rational(1));
    EXPECT_EQ(F.coefficient({2, 0}), graded_rational{});
    EXPECT_EQ(F.coefficient({1, 1}), -cp_class(1, D));
    EXPECT_EQ(F.coefficient({1, 1}).to_string(), "-2*m1");
}

TEST(Fgl, ExpAgreesWithLagrangeInversion)
{
    for (unsigned D : {1u, 3u, 8u}) {
        EXPECT_EQ(exp_series(D), mug::testing::lagrange_exp(D)) << "D = " << D;
    }
    // Spot values: exp = x - m1 x^2 + (2 m1^2 - m2) x^3 + ...
    const formal_series e = exp_series(3);
    EXPECT_EQ(e[2], -graded_rational::generator(1));
    EXPECT_EQ(e[3], graded_rational::generator(1).pow(2).scaled(rational(2)) - graded_rational::generator(2));
}

TEST(Fgl, XyCoefficientFromOracleSeries)
{
    // Rebuild F(x,y) from the Lagrange exponential and the bare logarithm.
    const unsigned D = 6;
    const formal_series ex = mug::testing::lagrange_exp(D);
    const multi_series x = var(2, D, 0), y = var(2, D, 1);
    const multi_series F = compose(ex, compose(log_series(D), x) + compose(log_series(D), y));
    EXPECT_EQ(mug::testing::coeff2(F, 1, 1), -cp_class(1, D));
    EXPECT_EQ(F, fgl_add(x, y, D));
}

TEST(NSeries, AdditiveAndMultiplicativeLaws)
{
    const unsigned D = 8;
    const formal_series x = formal_series::variable(D);
    for (long a = -5; a <= 5; ++a) {
        for (long b = -5; b <= 5; ++b) {
            const formal_series na = n_series(a, D), nb = n_series(b, D);
            if (a != 0 && b != 0) {
                EXPECT_EQ(fgl_add(na, nb, D), n_series(a + b, D)) << a << "," << b;
            }
            if (b != 0) {
                EXPECT_EQ(compose(na, nb), n_series(a * b, D)) << a << "," << b;
            }
        }
    }
    EXPECT_EQ(n_series(1, D), x);
    EXPECT_TRUE(n_series(0, D).is_zero());
}

TEST(NSeries, TwoSeriesPrefix)
{
    const formal_series two = audited(n_series(2, 3));
    EXPECT_EQ(two.to_string(), "2*x + -2*m1*x^2 + (8*m1^2 + -6*m2)*x^3 + O(x^4)");
    // F(x, [-1]x) = 0 forces [-1]x = -x - [CP^1] x^2 + ...
    EXPECT_EQ(n_series(-1, 2)[2], -cp_class(1, 2));
}

TEST(NSeries, Errors)
{
    EXPECT_THROW(n_series(2, 0), invalid_degree);
    EXPECT_THROW(cp_class(5, 4), truncation_error);
    EXPECT_THROW(quotient_mod_n_series(2, 4, 4), no_solution);
    EXPECT_THROW(fgl_add(formal_series::constant(3, graded_rational(1)), formal_series::variable(3), 3),
                 invalid_argument);
}

TEST(ModN, ReductionAndQuotient)
{
    const unsigned D = 6;
    EXPECT_TRUE(reduce_mod_n_series(n_series(5, D), 5).is_zero());
    EXPECT_EQ(quotient_mod_n_series(1, 5, D)[0], graded_rational(1));
    EXPECT_EQ(quotient_mod_n_series(3, 2, D)[0], graded_rational(1));
    EXPECT_EQ(quotient_mod_n_series(2, 3, D)[0], graded_rational(2));
}

TEST(Genus, ToddAndAugmentation)
{
    const genus td = todd_genus(6);
    for (unsigned n = 1; n < 6; ++n) EXPECT_EQ(genus_eval(td, cp_class(n, 6)), graded_rational(1)) << n;
    const genus aug = augmentation_genus(6);
    EXPECT_TRUE(genus_eval(aug, cp_class(2, 6)).is_zero());
    EXPECT_EQ(genus_eval(aug, graded_rational(3)), graded_rational(3));
}

TEST(Evenness, SeriesCoefficients)
{
    for (long n = -3; n <= 3; ++n) audited(n_series(n, 8));
    audited(exp_series(8));
    audited(log_series(8));
    const auto &a = mug::testing::evenness_audit::global();
    EXPECT_GT(a.components, 0u);
    EXPECT_TRUE(a.odd.empty()) << a.odd.front();
}
