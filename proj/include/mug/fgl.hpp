#ifndef MUG_FGL_HPP
#define MUG_FGL_HPP

#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <mug/errors.hpp>
#include <mug/graded_rational.hpp>
#include <mug/series.hpp>

namespace mug
{

inline constexpr unsigned default_degree = 8;

namespace detail
{

inline void require_degree(unsigned D)
{
    if (D == 0u) throw invalid_degree("truncation degree must be at least 1");
}

// Memo of exp/log series per truncation degree. Guarded so callers observe
// pure behaviour from any thread.
class series_cache
{
public:
    static series_cache &instance()
    {
        static series_cache c;
        return c;
    }
    template <typename F>
    formal_series get(std::map<unsigned, formal_series> series_cache::*table, unsigned D, F &&make)
    {
        {
            std::lock_guard<std::mutex> lk(m_);
            auto it = (this->*table).find(D);
            if (it != (this->*table).end()) return it->second;
        }
        formal_series s = make();
        std::lock_guard<std::mutex> lk(m_);
        return (this->*table).emplace(D, std::move(s)).first->second;
    }
    std::map<unsigned, formal_series> log_table, exp_table;
    std::map<std::pair<long, unsigned>, formal_series> nseries_table;
    std::mutex m_;
};

} // namespace detail

// [CP^n] = (n+1) m_n under the logarithm x + sum m_n x^{n+1}.
inline graded_rational cp_class(unsigned n, unsigned D = default_degree)
{
    if (n == 0u) return graded_rational(1);
    if (n + 1u > D) {
        throw truncation_error("cp_class(" + std::to_string(n) + ") needs m" + std::to_string(n) +
                               ", beyond truncation D=" + std::to_string(D));
    }
    return graded_rational::generator(n).scaled(rational(n + 1u));
}

// x + m1 x^2 + ... + m_{D-1} x^D.
inline formal_series log_series(unsigned D)
{
    detail::require_degree(D);
    auto &c = detail::series_cache::instance();
    return c.get(&detail::series_cache::log_table, D, [D] {
        formal_series s = formal_series::variable(D);
        for (unsigned n = 1; n + 1u <= D; ++n) s[n + 1u] = graded_rational::generator(n);
        return s;
    });
}

// Compositional inverse of log_series(D), solved one degree at a time:
// with e = x + e_2 x^2 + ... + e_{j-1} x^{j-1}, the x^j coefficient of
// log(e) is exactly what e_j has to cancel.
inline formal_series exp_series(unsigned D)
{
    detail::require_degree(D);
    auto &c = detail::series_cache::instance();
    return c.get(&detail::series_cache::exp_table, D, [D] {
        const formal_series lg = log_series(D);
        formal_series e = formal_series::variable(D);
        for (unsigned j = 2; j <= D; ++j) {
            const formal_series le = compose(lg, e);
            e[j] = -le[j];
        }
        return e;
    });
}

// F(f, g) = exp(log f + log g).
template <typename S>
S fgl_add(const S &f, const S &g, unsigned D)
{
    detail::require_degree(D);
    if (detail::has_constant_term(f) || detail::has_constant_term(g)) {
        throw invalid_argument("fgl_add arguments must have zero constant term");
    }
    const formal_series lg = log_series(D), ex = exp_series(D);
    return compose(ex, compose(lg, f) + compose(lg, g));
}

// [n]_F x = exp(n log x).
inline formal_series n_series(long n, unsigned D)
{
    detail::require_degree(D);
    auto &c = detail::series_cache::instance();
    {
        std::lock_guard<std::mutex> lk(c.m_);
        auto it = c.nseries_table.find({n, D});
        if (it != c.nseries_table.end()) return it->second;
    }
    formal_series r(D);
    if (n != 0) {
        const formal_series nl = log_series(D).scaled(graded_rational(n));
        r = compose(exp_series(D), nl);
    }
    std::lock_guard<std::mutex> lk(c.m_);
    return c.nseries_table.emplace(std::make_pair(n, D), r).first->second;
}

// Reduction modulo the ideal ([n]_F x). The constant term is untouched; in
// higher coefficients the degree-0 rational part is replaced by its residue
// in [0, n) and positive-degree parts are absorbed by rational multiples of
// x^{j-1} [n]_F x.
inline formal_series reduce_mod_n_series(formal_series f, long n)
{
    if (n < 1) throw invalid_argument("reduction modulus must be positive");
    const unsigned D = f.truncation();
    if (D == 0u) return f;
    const formal_series nx = n_series(n, D);
    const rational inv_n(1, n);
    for (unsigned j = 1; j <= D; ++j) {
        const graded_rational c = f[j];
        if (c.is_zero()) continue;
        const rational c0 = c.constant_term();
        const graded_rational t = (c - graded_rational(c0)).scaled(inv_n) + graded_rational(rational(floor(c0 * inv_n)));
        if (t.is_zero()) continue;
        f -= nx.shifted(j - 1u).scaled(t);
    }
    return f;
}

// Q with Q [m]_F x = x modulo ([n]_F x). The degree-0 part must be an
// integer q0 with m q0 = 1 (mod n); the smallest positive one is taken.
// Every higher coefficient of the residual has positive degree and is
// absorbed, so q_j = 0 for j >= 1 gives the minimal support.
inline formal_series quotient_mod_n_series(long m, long n, unsigned D)
{
    detail::require_degree(D);
    if (n < 1) throw invalid_argument("modulus n must be at least 1");
    if (std::gcd(m, n) != 1) {
        throw no_solution("gcd(" + std::to_string(m) + ", " + std::to_string(n) + ") != 1");
    }
    long q0 = 1;
    while (((m % n) * q0 - 1) % n != 0) ++q0;

    formal_series Q = formal_series::constant(D, graded_rational(q0));
    const formal_series mx = n_series(m, D), x = formal_series::variable(D);
    const formal_series residual = reduce_mod_n_series(Q * mx - x, n);
    for (unsigned j = 0; j <= D; ++j) {
        if (!residual[j].is_zero()) {
            throw truncation_error("quotient residual does not close at x^" + std::to_string(j));
        }
    }
    return Q;
}

} // namespace mug

#endif
