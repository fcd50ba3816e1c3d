#include <gtest/gtest.h>

#include <algorithm>
#include <array>

#include "support.hpp"

using namespace mug;
using mug::testing::audited;

namespace
{

classification_verdict classify(const char *text)
{
    return classify_three_fixed_points(parse_fixed_point_data(text));
}

fixed_point_data negated(fixed_point_data d)
{
    for (auto &p : d.points) {
        for (auto &w : p) w = -w;
    }
    return d;
}

} // namespace

TEST(FixedPointData, Parsing)
{
    const fixed_point_data d = parse_fixed_point_data("1,2\n -1, 1 ;-2,-1\n\n");
    ASSERT_EQ(d.points.size(), 3u);
    EXPECT_EQ(d.points[1], (std::vector<long>{-1, 1}));
    EXPECT_EQ(to_string(d), "1,2; -1,1; -2,-1");
    EXPECT_THROW(parse_fixed_point_data("1,x"), parse_error);
    EXPECT_THROW(parse_fixed_point_data("1,"), parse_error);
    EXPECT_THROW(parse_fixed_point_data(" ; "), parse_error);
}

TEST(Classifier, Examples)
{
    const auto v = classify("1,2; -1,1; -2,-1");
    EXPECT_EQ(v.headline(), "REALIZABLE 1 2");
    EXPECT_TRUE(v.recheck_passed);
    EXPECT_EQ(v.trace.size(), 5u);
    EXPECT_EQ(classify("1,3; -1,2; -3,-2").headline(), "REALIZABLE 1 3");
    const auto bad = classify("1,1; 1,1; 1,1");
    EXPECT_FALSE(bad.realizable);
    EXPECT_EQ(bad.failed_constraint, "C_EQ_NEG_A");
    EXPECT_EQ(bad.headline(), "NOT_REALIZABLE C_EQ_NEG_A");
}

TEST(Classifier, Errors)
{
    EXPECT_THROW(classify("1,2; -1,-2"), arity_error);
    EXPECT_THROW(classify("1,2,3; -1,1; -2,-1"), arity_error);
    EXPECT_THROW(classify("1,0; -1,1; -2,-1"), invariant_error);
}

TEST(Classifier, EveryProjectivePlaneInRange)
{
    for (long a = -2; a <= 2; ++a) {
        for (long b = -2; b <= 2; ++b) {
            if (a == 0 || b == 0 || a == b) continue;
            const fixed_point_data d = projective_plane_fixed_points(a, b);
            const auto v = classify_three_fixed_points(d);
            ASSERT_TRUE(v.realizable) << a << "," << b;
            EXPECT_TRUE(v.recheck_passed);
            EXPECT_EQ(fixed_point_lambda(projective_plane_fixed_points(v.a, v.b)), fixed_point_lambda(d));
            const auto pairs = mug::testing::realizing_pairs(d, 4);
            EXPECT_NE(std::find(pairs.begin(), pairs.end(), std::make_pair(v.a, v.b)), pairs.end()) << a << "," << b;
        }
    }
}

// Exhaustive comparison with the brute-force oracle over all weights in
// [-2,2] \ {0}, plus invariance under reordering and negation.
TEST(Classifier, AgreesWithBruteForce)
{
    const long W[] = {-2, -1, 1, 2};
    std::size_t realizable = 0;
    for (long w0 : W)
        for (long w1 : W)
            for (long w2 : W)
                for (long w3 : W)
                    for (long w4 : W)
                        for (long w5 : W) {
                            const fixed_point_data d{{{w0, w1}, {w2, w3}, {w4, w5}}};
                            const auto v = classify_three_fixed_points(d);
                            const auto pairs = mug::testing::realizing_pairs(d, 4);
                            ASSERT_EQ(v.realizable, !pairs.empty()) << to_string(d);
                            if (!v.realizable) continue;
                            ++realizable;
                            EXPECT_TRUE(v.recheck_passed);
                            const fixed_point_data rotated{{d.points[2], d.points[0], d.points[1]}};
                            const auto r = classify_three_fixed_points(rotated);
                            EXPECT_EQ(r.headline(), v.headline()) << to_string(d);
                            const auto n = classify_three_fixed_points(negated(d));
                            EXPECT_EQ(n.headline(), v.headline()) << to_string(d);
                        }
    EXPECT_GT(realizable, 0u);
}

TEST(TwoFixedPoints, Duality)
{
    EXPECT_TRUE(check_two_fixed_points(parse_fixed_point_data("1,2; -1,-2")));
    EXPECT_FALSE(check_two_fixed_points(parse_fixed_point_data("1,2; -1,2")));
    EXPECT_TRUE(check_two_fixed_points(parse_fixed_point_data("2,5; -5,-2")));
    EXPECT_THROW(check_two_fixed_points(parse_fixed_point_data("1,2")), arity_error);
    EXPECT_THROW(check_two_fixed_points(parse_fixed_point_data("1,0; -1,0")), invariant_error);
}

TEST(Spheres, ExamplesAndResidual)
{
    const auto eq = [](const std::vector<graded_rational> &a, std::vector<long> b) {
        if (a.size() != b.size()) return false;
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (!(a[j] == graded_rational(b[j]))) return false;
        }
        return true;
    };
    EXPECT_TRUE(eq(sphere_basis_change(1, 5, 3, 6), {1, 0, 0}));
    EXPECT_TRUE(eq(sphere_basis_change(3, 2, 2, 6), {1, 0}));
    EXPECT_TRUE(eq(sphere_basis_change(2, 3, 1, 6), {2}));
    for (auto [m, n] : std::array<std::pair<long, long>, 4>{{{1, 5}, {3, 2}, {2, 3}, {5, 3}}}) {
        const formal_series Q = quotient_mod_n_series(m, n, 6);
        const formal_series res = reduce_mod_n_series(Q * n_series(m, 6) - formal_series::variable(6), n);
        EXPECT_TRUE(res.is_zero()) << m << "," << n;
        for (unsigned k = 1; k <= 3; ++k) {
            const auto a = sphere_basis_change(m, n, k, 6);
            ASSERT_EQ(a.size(), k);
            // Q^k minus the returned prefix vanishes through x^{k-1}.
            const formal_series Qk = reduce_mod_n_series(Q.pow(k), n);
            for (unsigned j = 0; j < k; ++j) EXPECT_EQ(Qk[j], a[j]);
        }
    }
    for (long n : {2, 3, 5, 7}) {
        const auto a = sphere_basis_change(1, n, 3, 6);
        EXPECT_TRUE(eq(a, {1, 0, 0})) << n;
    }
    EXPECT_THROW(sphere_basis_change(2, 4, 1, 6), no_solution);
    EXPECT_THROW(sphere_basis_change(1, 5, 0, 6), invalid_argument);
}

TEST(ChernOracle, SurfacesInDegreeFour)
{
    using mug::testing::toric_surface_chern_numbers;
    const auto f1 = toric_surface_chern_numbers(mug::testing::hirzebruch_rays(1));
    const auto p1p1 = toric_surface_chern_numbers(mug::testing::hirzebruch_rays(0));
    const auto p2 = toric_surface_chern_numbers(mug::testing::projective_plane_rays());
    EXPECT_EQ(f1.c1_squared, 8);
    EXPECT_EQ(f1.c2, 4);
    EXPECT_EQ(p1p1.c1_squared, 8);
    EXPECT_EQ(p1p1.c2, 4);
    EXPECT_EQ(p2.c1_squared, 9);
    EXPECT_EQ(p2.c2, 3);
    // A different generic subgroup gives the same numbers.
    EXPECT_EQ(toric_surface_chern_numbers(mug::testing::hirzebruch_rays(1), {3, -5}).c1_squared, 8);
    EXPECT_EQ(mug::testing::mu4_class(p2), cp_class(2));
    EXPECT_EQ(mug::testing::mu4_class(p1p1), cp_class(1) * cp_class(1));
    const graded_rational diff = mug::testing::mu4_class(f1) - mug::testing::mu4_class(p1p1);
    EXPECT_TRUE(diff.is_zero());
    EXPECT_EQ(ytable(8).find(1, 1)->value, diff);
}

TEST(Rigidity, ToddOnProjectiveLine)
{
    const auto r = rigidity_check(todd_genus(8), proj(1, 1), 8);
    EXPECT_EQ(r.verdict, rigidity::rigid);
    EXPECT_EQ(r.value, graded_rational(1));
    ASSERT_FALSE(r.verified.empty());
    EXPECT_EQ(r.verified.front(), 1u);
    EXPECT_FALSE(r.unknown.empty());
    const completion_image c = audited(complete(proj(1, 1), 8));
    EXPECT_TRUE(genus_eval(todd_genus(8), *c.coefficient(1)).is_zero());
}

TEST(Rigidity, OtherVerdicts)
{
    EXPECT_EQ(rigidity_check(todd_genus(8), parse_expr("CP(1)"), 8).verdict, rigidity::rigid);
    const auto aug = rigidity_check(augmentation_genus(8), proj(1, 1), 8);
    EXPECT_EQ(aug.verdict, rigidity::rigid);
    EXPECT_TRUE(aug.unknown.empty());
    EXPECT_EQ(rigidity_check(todd_genus(8), proj(2, 1), 8).verdict, rigidity::indeterminate);
    EXPECT_EQ(to_string(rigidity::indeterminate), "indeterminate");
}

TEST(Rigidity, Preconditions)
{
    EXPECT_THROW(rigidity_check(todd_genus(8), euler(1), 8), precondition_error);
    EXPECT_THROW(rigidity_check(todd_genus(8), parse_expr("G(1;P(1,1))"), 8), precondition_error);
    genus plain = todd_genus(8);
    plain.strongly_multiplicative = false;
    EXPECT_THROW(rigidity_check(plain, proj(1, 1), 8), precondition_error);
}

TEST(Evenness, ApplicationValues)
{
    for (const auto &[a, b] : std::array<std::pair<long, long>, 3>{{{1, 2}, {-1, 2}, {2, -1}}}) {
        audited(fixed_point_lambda(projective_plane_fixed_points(a, b)));
    }
    for (const auto &g : sphere_basis_change(2, 3, 3, 6)) audited(g);
    const auto &a = mug::testing::evenness_audit::global();
    EXPECT_TRUE(a.odd.empty()) << a.odd.front();
}
