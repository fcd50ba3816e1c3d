#ifndef MUG_EXPR_HPP
#define MUG_EXPR_HPP

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <mug/errors.hpp>
#include <mug/graded_rational.hpp>

namespace mug
{

enum class expr_kind { euler, proj, scalar, sum, prod, gamma, beta };

struct expr_node;
using expr = std::shared_ptr<const expr_node>;

// Syntax tree over e(n), P(i,n), scalars, sums, products, Gamma_n, Beta_n.
// Trees built through the functions below are kept in a folded shape:
// sums and products are flat, scalar factors/summands are merged into one
// leading Scalar, and trivial wrappers collapse.
struct expr_node {
    expr_kind kind;
    long n = 0;
    unsigned i = 0;
    graded_rational value;
    std::vector<expr> kids;
};

namespace detail
{

inline expr make_node(expr_node node)
{
    return std::make_shared<const expr_node>(std::move(node));
}

} // namespace detail

inline expr scalar(const graded_rational &g)
{
    return detail::make_node({expr_kind::scalar, 0, 0, g, {}});
}

inline expr euler(long n)
{
    if (n == 0) throw index_error("e(0) is not an Euler class of a nontrivial character");
    return detail::make_node({expr_kind::euler, n, 0, {}, {}});
}

inline expr proj(unsigned i, long n)
{
    if (i == 0u) throw index_error("P(i,n) needs i >= 1");
    if (n == 0) throw index_error("P(i,0) is not a projective generator of a nontrivial character");
    return detail::make_node({expr_kind::proj, n, i, {}, {}});
}

inline expr gamma_of(long n, expr x)
{
    if (n == 0) throw index_error("Gamma_0 is undefined");
    return detail::make_node({expr_kind::gamma, n, 0, {}, {std::move(x)}});
}

inline expr beta_of(long n, expr x)
{
    if (n == 0) throw index_error("Beta_0 is undefined");
    return detail::make_node({expr_kind::beta, n, 0, {}, {std::move(x)}});
}

inline expr sum_of(const std::vector<expr> &parts)
{
    graded_rational c;
    std::vector<expr> rest;
    auto absorb = [&](const expr &p) {
        if (p->kind == expr_kind::scalar) {
            c += p->value;
        } else {
            rest.push_back(p);
        }
    };
    for (const auto &p : parts) {
        if (p->kind == expr_kind::sum) {
            for (const auto &q : p->kids) absorb(q);
        } else {
            absorb(p);
        }
    }
    if (rest.empty()) return scalar(c);
    if (c.is_zero() && rest.size() == 1u) return rest.front();
    std::vector<expr> kids;
    if (!c.is_zero()) kids.push_back(scalar(c));
    kids.insert(kids.end(), rest.begin(), rest.end());
    return detail::make_node({expr_kind::sum, 0, 0, {}, std::move(kids)});
}

inline expr prod_of(const std::vector<expr> &parts)
{
    graded_rational c(1);
    std::vector<expr> rest;
    auto absorb = [&](const expr &p) {
        if (p->kind == expr_kind::scalar) {
            c *= p->value;
        } else {
            rest.push_back(p);
        }
    };
    for (const auto &p : parts) {
        if (p->kind == expr_kind::prod) {
            for (const auto &q : p->kids) absorb(q);
        } else {
            absorb(p);
        }
    }
    if (c.is_zero()) return scalar(c);
    if (rest.empty()) return scalar(c);
    if (c == graded_rational(1) && rest.size() == 1u) return rest.front();
    std::vector<expr> kids;
    if (!(c == graded_rational(1))) kids.push_back(scalar(c));
    kids.insert(kids.end(), rest.begin(), rest.end());
    return detail::make_node({expr_kind::prod, 0, 0, {}, std::move(kids)});
}

inline expr operator+(const expr &a, const expr &b)
{
    return sum_of({a, b});
}
inline expr operator*(const expr &a, const expr &b)
{
    return prod_of({a, b});
}
inline expr operator-(const expr &a)
{
    return prod_of({scalar(graded_rational(-1)), a});
}
inline expr operator-(const expr &a, const expr &b)
{
    return a + (-b);
}

inline bool structurally_equal(const expr &a, const expr &b)
{
    if (a == b) return true;
    if (a->kind != b->kind || a->n != b->n || a->i != b->i || !(a->value == b->value) ||
        a->kids.size() != b->kids.size()) {
        return false;
    }
    for (std::size_t k = 0; k < a->kids.size(); ++k) {
        if (!structurally_equal(a->kids[k], b->kids[k])) return false;
    }
    return true;
}

// True for trees without Gamma/Beta nodes.
inline bool is_r0(const expr &x)
{
    if (x->kind == expr_kind::gamma || x->kind == expr_kind::beta) return false;
    for (const auto &k : x->kids) {
        if (!is_r0(k)) return false;
    }
    return true;
}

// True for trees built from P(i,n), scalars, sums and products only.
inline bool is_geometric(const expr &x)
{
    switch (x->kind) {
    case expr_kind::euler:
    case expr_kind::gamma:
    case expr_kind::beta:
        return false;
    default:
        break;
    }
    for (const auto &k : x->kids) {
        if (!is_geometric(k)) return false;
    }
    return true;
}

inline std::size_t depth(const expr &x)
{
    std::size_t d = 0;
    for (const auto &k : x->kids) d = std::max(d, depth(k));
    return x->kids.empty() ? 0u : d + 1u;
}

namespace detail
{

// m_i = CP(i)/(i+1), so a scalar prints in the CP(n) vocabulary.
inline std::string scalar_term_text(const mu_monomial &m, rational c)
{
    std::string gens;
    for (unsigned i = 1; i <= m.max_index(); ++i) {
        for (unsigned k = 0; k < m.exponent(i); ++k) {
            c /= rational(i + 1u);
            gens += "*CP(" + std::to_string(i) + ")";
        }
    }
    return c.get_str() + gens;
}

inline std::string scalar_text(const graded_rational &g, bool as_factor)
{
    if (g.is_zero()) return "0";
    std::string s;
    for (const auto &[m, c] : g.terms()) {
        if (!s.empty()) s += " + ";
        s += scalar_term_text(m, c);
    }
    return (as_factor && g.size() > 1u) ? "(" + s + ")" : s;
}

} // namespace detail

// Text in the expression grammar; parse(to_text(x)) rebuilds x.
inline std::string to_text(const expr &x)
{
    switch (x->kind) {
    case expr_kind::euler:
        return "e(" + std::to_string(x->n) + ")";
    case expr_kind::proj:
        return "P(" + std::to_string(x->i) + "," + std::to_string(x->n) + ")";
    case expr_kind::scalar:
        return detail::scalar_text(x->value, false);
    case expr_kind::gamma:
        return "G(" + std::to_string(x->n) + "; " + to_text(x->kids[0]) + ")";
    case expr_kind::beta:
        return "B(" + std::to_string(x->n) + "; " + to_text(x->kids[0]) + ")";
    case expr_kind::sum: {
        std::string s;
        for (const auto &k : x->kids) {
            if (!s.empty()) s += " + ";
            s += to_text(k);
        }
        return s;
    }
    case expr_kind::prod: {
        std::string s;
        for (const auto &k : x->kids) {
            if (!s.empty()) s += "*";
            if (k->kind == expr_kind::sum) {
                s += "(" + to_text(k) + ")";
            } else if (k->kind == expr_kind::scalar) {
                s += detail::scalar_text(k->value, true);
            } else {
                s += to_text(k);
            }
        }
        return s;
    }
    }
    return {};
}

} // namespace mug

#endif
