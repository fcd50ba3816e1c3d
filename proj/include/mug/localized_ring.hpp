#ifndef MUG_LOCALIZED_RING_HPP
#define MUG_LOCALIZED_RING_HPP

#include <cstdlib>
#include <string>
#include <vector>

#include <mug/errors.hpp>
#include <mug/expr.hpp>
#include <mug/fgl.hpp>
#include <mug/loc_elem.hpp>

namespace mug
{

// lambda(P(i,n)) = Y_{i,n} + e_{n*}^{-i}, with n* the dual character.
inline loc_elem lambda_projective(group_tag g, unsigned i, long n)
{
    g.check_character(n);
    return loc_elem::y(g, i, n) + loc_elem::euler(g, g.dual(n), -static_cast<long>(i));
}

// Ring map from R0 expressions to the Laurent model of the group.
inline loc_elem lambda_image(const expr &x, group_tag g = group_tag::circle())
{
    switch (x->kind) {
    case expr_kind::euler:
        return loc_elem::euler(g, x->n);
    case expr_kind::proj:
        return lambda_projective(g, x->i, x->n);
    case expr_kind::scalar:
        return loc_elem(g, x->value);
    case expr_kind::sum: {
        loc_elem r(g);
        for (const auto &k : x->kids) r += lambda_image(k, g);
        return r;
    }
    case expr_kind::prod: {
        loc_elem r(g, graded_rational(1));
        for (const auto &k : x->kids) r *= lambda_image(k, g);
        return r;
    }
    case expr_kind::gamma:
    case expr_kind::beta:
        break;
    }
    throw invalid_argument("lambda_image takes R0 expressions (no G/B nodes): " + to_text(x));
}

inline long positive_mod(long n, long d)
{
    const long r = n % d;
    return r < 0 ? r + d : r;
}

// Restriction from the circle to Z/d: e(n) -> e(n mod d) (zero when d | n),
// P(i,n) -> P(i, n mod d), or the scalar [CP^i] when d | n.
inline expr restrict_r0(const expr &x, unsigned d, unsigned D = default_degree)
{
    if (d == 0u) throw invalid_argument("restriction target Z/d needs d >= 1");
    const long dd = static_cast<long>(d);
    switch (x->kind) {
    case expr_kind::euler: {
        const long r = positive_mod(x->n, dd);
        return r == 0 ? scalar(graded_rational{}) : euler(r);
    }
    case expr_kind::proj: {
        const long r = positive_mod(x->n, dd);
        return r == 0 ? scalar(cp_class(x->i, D)) : proj(x->i, r);
    }
    case expr_kind::scalar:
        return x;
    case expr_kind::sum:
    case expr_kind::prod: {
        std::vector<expr> kids;
        for (const auto &k : x->kids) kids.push_back(restrict_r0(k, d, D));
        return x->kind == expr_kind::sum ? sum_of(kids) : prod_of(kids);
    }
    case expr_kind::gamma:
    case expr_kind::beta:
        break;
    }
    throw invalid_argument("restrict_r0 takes R0 expressions (no G/B nodes): " + to_text(x));
}

// x is divisible by e_n iff its restriction to Z/|n| vanishes.
inline bool euler_divisibility(const expr &x, long n, unsigned D = default_degree)
{
    if (n == 0) throw index_error("divisibility by e_0 is undefined");
    const unsigned d = static_cast<unsigned>(std::labs(n));
    return is_zero(lambda_image(restrict_r0(x, d, D), group_tag::cyclic(d)));
}

// The Laurent quotient lambda(x) e_n^{-1}; only meaningful when divisible.
inline loc_elem euler_quotient(const expr &x, long n)
{
    return lambda_image(x).times_monomial(loc_monomial::euler(n, -1));
}

} // namespace mug

#endif
