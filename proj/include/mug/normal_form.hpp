#ifndef MUG_NORMAL_FORM_HPP
#define MUG_NORMAL_FORM_HPP

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <mug/errors.hpp>
#include <mug/expr.hpp>
#include <mug/loc_elem.hpp>
#include <mug/localized_ring.hpp>
#include <mug/splitting.hpp>

namespace mug
{

// R0 generator e(n) or P(i,n). Order: every e before every P, then by
// character order, then P by i.
struct generator {
    bool is_proj = false;
    long n = 0;
    unsigned i = 0;

    static generator euler(long n)
    {
        return {false, n, 0u};
    }
    static generator proj(unsigned i, long n)
    {
        return {true, n, i};
    }
    int degree() const noexcept
    {
        return is_proj ? 2 * static_cast<int>(i) : -2;
    }
    friend bool operator==(const generator &, const generator &) = default;
};

struct generator_order {
    bool operator()(const generator &a, const generator &b) const noexcept
    {
        if (a.is_proj != b.is_proj) return !a.is_proj;
        if (a.n != b.n) return character_less(a.n, b.n);
        return a.i < b.i;
    }
};

struct nf_monomial;

// Gamma_n(M) or B_n(M) applied to a coefficient-free monomial M.
struct nf_atom {
    bool is_beta = false;
    long n = 0;
    std::shared_ptr<const nf_monomial> arg;
};

// prod r_i^{k_i} * prod atoms; atoms are kept sorted.
struct nf_monomial {
    std::map<generator, unsigned, generator_order> gens;
    std::vector<nf_atom> atoms;

    bool is_unit() const noexcept
    {
        return gens.empty() && atoms.empty();
    }
    unsigned exponent(const generator &g) const
    {
        auto it = gens.find(g);
        return it == gens.end() ? 0u : it->second;
    }
    int degree() const;
};

int compare(const nf_monomial &a, const nf_monomial &b);

inline int compare(const nf_atom &a, const nf_atom &b)
{
    if (a.is_beta != b.is_beta) return a.is_beta ? 1 : -1;
    if (a.n != b.n) return character_less(a.n, b.n) ? -1 : 1;
    return compare(*a.arg, *b.arg);
}

inline int compare(const nf_monomial &a, const nf_monomial &b)
{
    auto ia = a.gens.begin(), ib = b.gens.begin();
    for (; ia != a.gens.end() && ib != b.gens.end(); ++ia, ++ib) {
        if (!(ia->first == ib->first)) return generator_order{}(ia->first, ib->first) ? -1 : 1;
        if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
    }
    if (ia != a.gens.end()) return 1;
    if (ib != b.gens.end()) return -1;
    if (a.atoms.size() != b.atoms.size()) return a.atoms.size() < b.atoms.size() ? -1 : 1;
    for (std::size_t k = 0; k < a.atoms.size(); ++k) {
        if (int c = compare(a.atoms[k], b.atoms[k]); c != 0) return c;
    }
    return 0;
}

inline bool operator<(const nf_monomial &a, const nf_monomial &b)
{
    return compare(a, b) < 0;
}
inline bool operator==(const nf_monomial &a, const nf_monomial &b)
{
    return compare(a, b) == 0;
}

inline int nf_monomial::degree() const
{
    int d = 0;
    for (const auto &[g, k] : gens) d += g.degree() * static_cast<int>(k);
    for (const auto &a : atoms) d += a.arg->degree() + (a.is_beta ? 0 : 2);
    return d;
}

inline nf_monomial operator*(const nf_monomial &a, const nf_monomial &b)
{
    nf_monomial r(a);
    for (const auto &[g, k] : b.gens) r.gens[g] += k;
    r.atoms.insert(r.atoms.end(), b.atoms.begin(), b.atoms.end());
    std::sort(r.atoms.begin(), r.atoms.end(), [](const nf_atom &x, const nf_atom &y) { return compare(x, y) < 0; });
    return r;
}

// Finite MU_* (x) Q-combination of basis monomials.
class normal_form
{
public:
    using term_map = std::map<nf_monomial, graded_rational>;

    normal_form() = default;
    explicit normal_form(const graded_rational &c)
    {
        add_term(nf_monomial{}, c);
    }
    normal_form(const nf_monomial &m, const graded_rational &c)
    {
        add_term(m, c);
    }

    const term_map &terms() const noexcept
    {
        return terms_;
    }
    bool is_zero() const noexcept
    {
        return terms_.empty();
    }
    void add_term(const nf_monomial &m, const graded_rational &c)
    {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    normal_form &operator+=(const normal_form &o)
    {
        for (const auto &[m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    normal_form &operator-=(const normal_form &o)
    {
        for (const auto &[m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    normal_form scaled(const graded_rational &g) const
    {
        normal_form r;
        for (const auto &[m, c] : terms_) r.add_term(m, c * g);
        return r;
    }
    friend bool operator==(const normal_form &a, const normal_form &b)
    {
        return a.terms_ == b.terms_;
    }

    // Total degrees of every (coefficient term, monomial) pair.
    std::vector<int> term_degrees() const
    {
        std::vector<int> out;
        for (const auto &[m, c] : terms_) {
            for (const auto &[mm, q] : c.terms()) out.push_back(mm.degree() + m.degree());
        }
        return out;
    }

private:
    term_map terms_;
};

inline expr to_expr(const nf_monomial &m)
{
    std::vector<expr> f;
    for (const auto &[g, k] : m.gens) {
        for (unsigned j = 0; j < k; ++j) f.push_back(g.is_proj ? proj(g.i, g.n) : euler(g.n));
    }
    for (const auto &a : m.atoms) f.push_back(a.is_beta ? beta_of(a.n, to_expr(*a.arg)) : gamma_of(a.n, to_expr(*a.arg)));
    return prod_of(f);
}

inline expr to_expr(const normal_form &x)
{
    std::vector<expr> parts;
    for (const auto &[m, c] : x.terms()) parts.push_back(prod_of({scalar(c), to_expr(m)}));
    return sum_of(parts);
}

inline std::string to_string(const normal_form &x)
{
    return to_text(to_expr(x));
}

namespace detail
{

inline bool hits(const generator &g, long n)
{
    return !g.is_proj && g.n % n == 0;
}

} // namespace detail

// Syntactic constraints on normal-form monomials:
//  - no e(n) next to a Gamma_n atom;
//  - a Gamma_n argument carries no e(n); if it carries any e(m) with n | m,
//    it is exactly e(m);
//  - a B_n atom has n > 0, an argument with atoms and no e(m) with n | m;
//  - arguments are themselves normal.
inline bool is_normal(const nf_monomial &m)
{
    for (const auto &a : m.atoms) {
        const nf_monomial &arg = *a.arg;
        if (!is_normal(arg)) return false;
        if (a.is_beta) {
            if (a.n <= 0 || arg.atoms.empty()) return false;
            for (const auto &[g, k] : arg.gens) {
                if (detail::hits(g, a.n)) return false;
            }
            continue;
        }
        if (m.exponent(generator::euler(a.n)) > 0u) return false;
        if (arg.exponent(generator::euler(a.n)) > 0u) return false;
        for (const auto &[g, k] : arg.gens) {
            if (detail::hits(g, a.n) && !(arg.atoms.empty() && arg.gens.size() == 1u && k == 1u)) return false;
        }
    }
    return true;
}

inline bool is_normal(const normal_form &x)
{
    for (const auto &[m, c] : x.terms()) {
        if (c.is_zero() || !is_normal(m)) return false;
    }
    return true;
}

// A section on Laurent values: beta_n(x) for n != 0.
using section_fn = std::function<loc_elem(long, const loc_elem &)>;

// Values of expressions and normal forms in the Laurent model over the
// circle. Monomial values and beta images are memoized per instance.
class evaluator
{
public:
    evaluator() = default;
    explicit evaluator(section_fn section) : section_(std::move(section)) {}

    loc_elem eval(const expr &x)
    {
        switch (x->kind) {
        case expr_kind::euler:
        case expr_kind::proj:
        case expr_kind::scalar:
            return lambda_image(x);
        case expr_kind::sum: {
            loc_elem r(group_tag::circle());
            for (const auto &k : x->kids) r += eval(k);
            return r;
        }
        case expr_kind::prod: {
            loc_elem r(group_tag::circle(), graded_rational(1));
            for (const auto &k : x->kids) r *= eval(k);
            return r;
        }
        case expr_kind::gamma: {
            const loc_elem v = eval(x->kids[0]);
            return gamma_value(x->n, v, section_(x->n, v));
        }
        case expr_kind::beta:
            return section_(x->n, eval(x->kids[0]));
        }
        return loc_elem(group_tag::circle());
    }

    loc_elem eval(const normal_form &x)
    {
        loc_elem r(group_tag::circle());
        for (const auto &[m, c] : x.terms()) r += value(m).scaled(c);
        return r;
    }

    const loc_elem &value(const nf_monomial &m)
    {
        if (auto it = values_.find(m); it != values_.end()) return it->second;
        loc_elem r(group_tag::circle(), graded_rational(1));
        for (const auto &[g, k] : m.gens) {
            const expr e = g.is_proj ? proj(g.i, g.n) : euler(g.n);
            r *= lambda_image(e).pow(k);
        }
        for (const auto &a : m.atoms) {
            if (a.is_beta) {
                r *= beta_of_value(a.n, *a.arg);
            } else {
                r *= gamma_value(a.n, value(*a.arg), beta_of_value(a.n, *a.arg));
            }
        }
        return values_.emplace(m, std::move(r)).first->second;
    }

    const loc_elem &beta_of_value(long n, const nf_monomial &m)
    {
        const auto key = std::make_pair(std::labs(n), m);
        if (auto it = betas_.find(key); it != betas_.end()) return it->second;
        loc_elem b = section_(n, value(m));
        return betas_.emplace(key, std::move(b)).first->second;
    }

private:
    section_fn section_ = beta_value;
    std::map<nf_monomial, loc_elem> values_;
    std::map<std::pair<long, nf_monomial>, loc_elem> betas_;
};

// Innermost-first rewriting to normal form. Rules, in the order tried:
//   e(n) * Gamma_n(A)          -> A - B_n(A)
//   Gamma_n(e(n) M)            -> M
//   Gamma_n(e(m) M), n | m     -> Gamma_n(e(m)) * M
//   Gamma_n(M), M in R0        -> 0
//   Gamma_n(B_n(M))            -> 0
//   B_n(e(m) M), n | m         -> 0
//   B_n(M), M in R0            -> M
//   B_n(B_n(M))                -> B_n(M)
// Anything left is decided on values: an atom whose value vanishes is 0 and
// a B_n(M) with beta_n(M) = M collapses to M.
class normalizer
{
public:
    static constexpr std::size_t default_budget = 10000;

    explicit normalizer(std::size_t budget = default_budget) : budget_(budget) {}

    normal_form normalize(const expr &x)
    {
        start(x);
        return run(x);
    }

    normal_form gamma(long n, const expr &x)
    {
        start(gamma_of(n, x));
        return apply_gamma(n, run(x));
    }

    normal_form beta(long n, const expr &x)
    {
        start(beta_of(n, x));
        const normal_form nx = run(x);
        normal_form b = apply_beta(n, nx);
        check_beta_contract(n, nx, b);
        return b;
    }

    evaluator &values() noexcept
    {
        return ev_;
    }
    std::size_t steps() const noexcept
    {
        return steps_;
    }

private:
    void start(const expr &x)
    {
        steps_ = 0;
        current_ = x;
    }

    void tick()
    {
        if (++steps_ > budget_) {
            throw non_termination("rewriting exceeded " + std::to_string(budget_) +
                                  " steps on: " + (current_ ? to_text(current_) : std::string("?")));
        }
    }

    normal_form run(const expr &x)
    {
        switch (x->kind) {
        case expr_kind::euler: {
            nf_monomial m;
            m.gens[generator::euler(x->n)] = 1u;
            return normal_form(m, graded_rational(1));
        }
        case expr_kind::proj: {
            nf_monomial m;
            m.gens[generator::proj(x->i, x->n)] = 1u;
            return normal_form(m, graded_rational(1));
        }
        case expr_kind::scalar:
            return normal_form(x->value);
        case expr_kind::sum: {
            normal_form r;
            for (const auto &k : x->kids) r += run(k);
            return r;
        }
        case expr_kind::prod: {
            normal_form r(graded_rational(1));
            for (const auto &k : x->kids) r = multiply(r, run(k));
            return r;
        }
        case expr_kind::gamma:
            return apply_gamma(x->n, run(x->kids[0]));
        case expr_kind::beta:
            return apply_beta(x->n, run(x->kids[0]));
        }
        return {};
    }

    normal_form multiply(const normal_form &a, const normal_form &b)
    {
        normal_form r;
        for (const auto &[ma, ca] : a.terms()) {
            for (const auto &[mb, cb] : b.terms()) r += reduce(ma * mb).scaled(ca * cb);
        }
        return r;
    }

    normal_form reduce(const nf_monomial &m)
    {
        for (std::size_t k = 0; k < m.atoms.size(); ++k) {
            const nf_atom &a = m.atoms[k];
            if (a.is_beta || m.exponent(generator::euler(a.n)) == 0u) continue;
            tick();
            nf_monomial rest(m);
            rest.atoms.erase(rest.atoms.begin() + static_cast<std::ptrdiff_t>(k));
            auto it = rest.gens.find(generator::euler(a.n));
            if (--it->second == 0u) rest.gens.erase(it);
            normal_form cancelled(*a.arg, graded_rational(1));
            cancelled -= beta_monomial(a.n, *a.arg);
            return multiply(normal_form(rest, graded_rational(1)), cancelled);
        }
        return normal_form(m, graded_rational(1));
    }

    normal_form apply_gamma(long n, const normal_form &x)
    {
        normal_form r;
        for (const auto &[m, c] : x.terms()) r += gamma_monomial(n, m).scaled(c);
        return r;
    }

    normal_form apply_beta(long n, const normal_form &x)
    {
        normal_form r;
        for (const auto &[m, c] : x.terms()) r += beta_monomial(n, m).scaled(c);
        return r;
    }

    normal_form gamma_monomial(long n, const nf_monomial &m)
    {
        tick();
        const generator en = generator::euler(n);
        if (m.exponent(en) > 0u) {
            nf_monomial rest(m);
            if (--rest.gens[en] == 0u) rest.gens.erase(en);
            return normal_form(rest, graded_rational(1));
        }
        for (const auto &[g, k] : m.gens) {
            if (!detail::hits(g, n)) continue;
            nf_monomial rest(m);
            if (--rest.gens[g] == 0u) rest.gens.erase(g);
            nf_monomial single;
            single.gens[g] = 1u;
            nf_monomial atom;
            atom.atoms.push_back({false, n, std::make_shared<const nf_monomial>(single)});
            return multiply(normal_form(atom, graded_rational(1)), normal_form(rest, graded_rational(1)));
        }
        if (m.atoms.empty()) return {};
        if (m.gens.empty() && m.atoms.size() == 1u && m.atoms[0].is_beta && m.atoms[0].n == std::labs(n)) return {};
        nf_monomial atom;
        atom.atoms.push_back({false, n, std::make_shared<const nf_monomial>(m)});
        if (ev_.value(atom).is_zero()) return {};
        return normal_form(atom, graded_rational(1));
    }

    normal_form beta_monomial(long n, const nf_monomial &m)
    {
        tick();
        const long d = std::labs(n);
        for (const auto &[g, k] : m.gens) {
            if (detail::hits(g, d)) return {};
        }
        if (m.atoms.empty()) return normal_form(m, graded_rational(1));
        if (m.gens.empty() && m.atoms.size() == 1u && m.atoms[0].is_beta && m.atoms[0].n == d) {
            return normal_form(m, graded_rational(1));
        }
        const loc_elem &b = ev_.beta_of_value(d, m);
        if (b.is_zero()) return {};
        if (b == ev_.value(m)) return normal_form(m, graded_rational(1));
        nf_monomial atom;
        atom.atoms.push_back({true, d, std::make_shared<const nf_monomial>(m)});
        return normal_form(atom, graded_rational(1));
    }

    // x - beta_n(x) must restrict to zero on Z/|n|, i.e. be killed by every
    // sigma_c with c dividing |n|.
    void check_beta_contract(long n, const normal_form &x, const normal_form &b)
    {
        const loc_elem diff = to_p_coordinates(ev_.eval(x) - ev_.eval(b));
        const long d = std::labs(n);
        for (long c = 1; c <= d; ++c) {
            if (d % c == 0 && !sigma(diff, c).is_zero()) {
                throw splitting_violation("beta_" + std::to_string(n) + " fails the restriction check on " +
                                          to_text(current_));
            }
        }
    }

    std::size_t budget_;
    std::size_t steps_ = 0;
    expr current_;
    evaluator ev_;
};

inline normal_form normalize(const expr &x)
{
    return normalizer{}.normalize(x);
}

inline normal_form gamma(long n, const expr &x)
{
    return normalizer{}.gamma(n, x);
}

inline normal_form beta(long n, const expr &x)
{
    return normalizer{}.beta(n, x);
}

inline loc_elem eval_loc(const expr &x)
{
    return evaluator{}.eval(x);
}

inline loc_elem eval_loc(const normal_form &x)
{
    return evaluator{}.eval(x);
}

// R0 monomials of MU^{S^1}_* in the degree window, read modulo (e(d)):
// products of at most `max_factors` generators among e(1..d-1) and
// P(i, 1..d-1). Multiples of e(d) vanish, and P(i,d) restricts to the
// scalar [CP^i], so neither appears.
inline std::vector<nf_monomial> quotient_presentation(unsigned d, int lo, int hi, unsigned max_factors = 2)
{
    if (d == 0u) throw invalid_argument("quotient_presentation needs d >= 1");
    std::vector<nf_monomial> out;
    if (lo > hi) return out;
    std::vector<generator> gens;
    for (long n = 1; n < static_cast<long>(d); ++n) gens.push_back(generator::euler(n));
    const int top_i = std::max(0, hi + 2 * static_cast<int>(max_factors));
    for (long n = 1; n < static_cast<long>(d); ++n) {
        for (int i = 1; 2 * i <= top_i; ++i) gens.push_back(generator::proj(static_cast<unsigned>(i), n));
    }
    std::vector<nf_monomial> layer{nf_monomial{}};
    std::map<nf_monomial, bool> seen;
    for (unsigned f = 0; f <= max_factors; ++f) {
        std::vector<nf_monomial> next;
        for (const auto &m : layer) {
            if (!seen.emplace(m, true).second) continue;
            const int deg = m.degree();
            if (deg >= lo && deg <= hi) out.push_back(m);
            if (f == max_factors) continue;
            for (const auto &g : gens) {
                nf_monomial n2(m);
                n2.gens[g] += 1u;
                next.push_back(std::move(n2));
            }
        }
        layer = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace mug

#endif
