// Independent oracles and audit helpers shared by the unit tests and the
// acceptance binary. Nothing here calls the code path it is used to check.

#ifndef MUG_TESTS_SUPPORT_HPP
#define MUG_TESTS_SUPPORT_HPP

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <mug/mug.hpp>

namespace mug::testing
{

// Evenness audit: every homogeneous piece of every value passed in must
// have even total degree.
struct evenness_audit {
    std::size_t values = 0;
    std::size_t components = 0;
    std::vector<std::string> odd;

    static evenness_audit &global()
    {
        static evenness_audit a;
        return a;
    }

    void record(int degree, const std::string &what)
    {
        ++components;
        if (degree % 2 != 0) odd.push_back(what + " has a component of degree " + std::to_string(degree));
    }
    void check(const graded_rational &v)
    {
        ++values;
        for (const auto &[m, c] : v.terms()) record(m.degree(), v.to_string());
    }
    void check(const loc_elem &v)
    {
        ++values;
        for (const auto &[m, c] : v.terms()) {
            for (const auto &[cm, q] : c.terms()) record(m.degree() + cm.degree(), v.to_string());
        }
    }
    // Coefficient of x^j carries degree (its own) + 2j in the graded ring
    // MU_*[[x]] with |x| = -2; both parts must be even.
    void check(const formal_series &f)
    {
        for (unsigned j = 0; j <= f.truncation(); ++j) check(f[j]);
    }
    void check(const completion_image &f)
    {
        for (unsigned j = 0; j <= f.truncation(); ++j) {
            if (auto c = f.coefficient(j)) check(*c);
        }
    }
    void check(const normal_form &x)
    {
        ++values;
        for (int d : x.term_degrees()) record(d, to_string(x));
    }
};

template <typename T>
const T &audited(const T &v)
{
    evenness_audit::global().check(v);
    return v;
}

// exp_F by Lagrange inversion: [x^n] exp = (1/n) [u^{n-1}] (u / log u)^n.
inline formal_series lagrange_exp(unsigned D)
{
    formal_series lg(D + 1u);
    lg[1] = graded_rational(1);
    for (unsigned n = 1; n + 1u <= D + 1u; ++n) lg[n + 1u] = graded_rational::generator(n);
    // log(u)/u has constant term 1, so its reciprocal exists.
    formal_series ratio(D);
    for (unsigned j = 0; j <= D; ++j) ratio[j] = lg[j + 1u];
    const formal_series h = ratio.inverse();
    formal_series e(D);
    for (unsigned n = 1; n <= D; ++n) {
        e[n] = h.pow(n)[n - 1u].scaled(make_rational(1, static_cast<long>(n)));
    }
    return e;
}

// Coefficient of x^p y^q in a bivariate series.
inline graded_rational coeff2(const multi_series &f, unsigned p, unsigned q)
{
    return f.coefficient({p, q});
}

// Chern numbers (c1^2, c2) of a smooth complete toric surface by the
// Atiyah-Bott formula for a generic one-parameter subgroup. The fan is
// given by its rays in cyclic order.
struct chern_numbers {
    rational c1_squared, c2;
};

inline chern_numbers toric_surface_chern_numbers(const std::vector<std::array<long, 2>> &rays,
                                                 std::array<long, 2> xi = {7, 11})
{
    chern_numbers out{rational(0), rational(0)};
    const std::size_t r = rays.size();
    for (std::size_t k = 0; k < r; ++k) {
        const auto &v = rays[k];
        const auto &w = rays[(k + 1u) % r];
        const long det = v[0] * w[1] - v[1] * w[0];
        if (det != 1 && det != -1) throw invalid_argument("cone is not smooth");
        // Dual basis u_v, u_w with <u_v, v> = 1, <u_v, w> = 0 and vice versa.
        const std::array<long, 2> uv = {w[1] * det, -w[0] * det};
        const std::array<long, 2> uw = {-v[1] * det, v[0] * det};
        const long a = uv[0] * xi[0] + uv[1] * xi[1];
        const long b = uw[0] * xi[0] + uw[1] * xi[1];
        if (a == 0 || b == 0) throw invalid_argument("subgroup is not generic for this fan");
        out.c1_squared += make_rational((a + b) * (a + b), a * b);
        out.c2 += make_rational(a * b, a * b);
    }
    return out;
}

inline std::vector<std::array<long, 2>> hirzebruch_rays(long k)
{
    return {{{1, 0}, {0, 1}, {-1, k}, {0, -1}}};
}

inline std::vector<std::array<long, 2>> projective_plane_rays()
{
    return {{{1, 0}, {0, 1}, {-1, -1}}};
}

// Express a class in MU_4 (x) Q through Chern numbers, using CP^1 x CP^1
// = 4 m1^2 with (8,4) and CP^2 = 3 m2 with (9,3) as the basis.
inline graded_rational mu4_class(const chern_numbers &c)
{
    // alpha (8,4) + beta (9,3) = (c1^2, c2).
    const rational det = rational(8 * 3 - 9 * 4);
    const rational alpha = (c.c1_squared * 3 - c.c2 * 9) / det;
    const rational beta = (c.c2 * 8 - c.c1_squared * 4) / det;
    graded_rational m1sq(mu_monomial::generator(1, 2), rational(4));
    graded_rational m2(mu_monomial::generator(2), rational(3));
    return m1sq.scaled(alpha) + m2.scaled(beta);
}

// Brute-force realizability: the datum is realizable when some
// P(1 + rho^a + rho^b) with |a|,|b| <= bound has the same Laurent image.
inline std::vector<std::pair<long, long>> realizing_pairs(const fixed_point_data &d, long bound)
{
    std::vector<std::pair<long, long>> out;
    const loc_elem target = fixed_point_lambda(d);
    for (long a = 1; a <= bound; ++a) {
        for (long b = a + 1; b <= bound; ++b) {
            if (fixed_point_lambda(projective_plane_fixed_points(a, b)) == target) out.emplace_back(a, b);
        }
    }
    return out;
}

// Another valid section: beta'_d(v) = beta_d(v) + e_d * m1 * c, with c the
// coefficient of the unit monomial of beta_d(v). It still satisfies the
// section axioms, so relations 1-4 must keep holding.
inline loc_elem perturbed_section(long n, const loc_elem &x)
{
    const loc_elem b = beta_value(n, x);
    graded_rational c;
    if (auto it = b.terms().find(loc_monomial{}); it != b.terms().end()) c = it->second;
    return b + loc_elem(group_tag::circle(), loc_monomial::euler(n, 1), c * graded_rational::generator(1));
}

} // namespace mug::testing

#endif
