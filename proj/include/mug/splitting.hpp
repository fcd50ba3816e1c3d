#ifndef MUG_SPLITTING_HPP
#define MUG_SPLITTING_HPP

#include <cstdlib>
#include <map>
#include <mutex>
#include <set>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include <mug/errors.hpp>
#include <mug/fgl.hpp>
#include <mug/loc_elem.hpp>
#include <mug/localized_ring.hpp>

// Value-level section used for beta_n and Gamma_n.
//
// Work happens in "P-coordinates": the Y(i,n) slots of a loc_elem stand for
// lambda(P(i,n)) = Y_{i,n} + e_{-n}^{-i}, so that P(i,n) is a plain variable.
// For c >= 1, rho_c substitutes e_{ck} -> [k]_F(y) and leaves every other
// e_j and every P(i,n) alone. An element is c-regular when rho_c of it has
// no negative powers of y, and sigma_c is then its y^0 coefficient. sigma_c
// is a ring map that kills e_c and fixes its own image.
//
// beta_d (d = |n|) agrees with sigma_c for every divisor c of d: start from
// sigma_d and correct the c-component for each proper divisor, largest
// first, using u = (c/d) e_d e_c^{-1} (sigma_c(u) = 1, and sigma_{c'}(u) = 0
// for every divisor c' of d not dividing c). Hence beta_d = s o q with q the
// ring map (sigma_c)_{c | d}, and e_d Gamma_d(x) = x - beta_d(x) is e_d-
// divisible in the regular subring.

namespace mug
{

namespace detail
{

inline loc_elem p_variable(unsigned i, long n)
{
    return loc_elem(group_tag::circle(), loc_monomial::y(i, n), graded_rational(1));
}

inline loc_elem e_power(long n, long k)
{
    return loc_elem(group_tag::circle(), loc_monomial::euler(n, k), graded_rational(1));
}

// Substitute Y_{i,n} -> P_{i,n} + sign * e_{-n}^{-i} in every term.
inline loc_elem shift_y(const loc_elem &x, int sign)
{
    const group_tag g = x.group();
    if (!g.is_circle()) throw invalid_argument("P-coordinates are defined for the circle only");
    loc_elem out(g);
    for (const auto &[m, c] : x.terms()) {
        loc_elem t(g, loc_monomial{}, c);
        loc_monomial emono;
        for (const auto &[n, k] : m.e()) emono = emono * loc_monomial::euler(n, k);
        t = t.times_monomial(emono);
        for (const auto &[idx, k] : m.ys()) {
            loc_elem f = p_variable(idx.i, idx.n);
            f += e_power(-idx.n, -static_cast<long>(idx.i)).scaled(graded_rational(sign));
            t *= f.pow(k);
        }
        out += t;
    }
    return out;
}

} // namespace detail

inline loc_elem to_p_coordinates(const loc_elem &x)
{
    return detail::shift_y(x, -1);
}

inline loc_elem from_p_coordinates(const loc_elem &x)
{
    return detail::shift_y(x, +1);
}

namespace detail
{

// ([k]_F y / y)^a to the requested precision.
inline formal_series unit_power(long k, long a, unsigned prec)
{
    static std::mutex mtx;
    static std::map<std::tuple<long, long, unsigned>, formal_series> cache;
    const auto key = std::make_tuple(k, a, prec);
    {
        std::lock_guard<std::mutex> lk(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const formal_series u = n_series(k, prec + 1u).tail_shift();
    formal_series r = a >= 0 ? u.pow(static_cast<unsigned>(a)) : u.inverse().pow(static_cast<unsigned>(-a));
    std::lock_guard<std::mutex> lk(mtx);
    return cache.emplace(key, r).first->second;
}

} // namespace detail

// Laurent expansion of rho_c(x) for x in P-coordinates, powers of y up to
// `top`. Keys are powers of y, values have no e_{ck} left.
inline std::map<long, loc_elem> rho_expand(const loc_elem &xp, long c, long top)
{
    std::map<long, loc_elem> out;
    for (const auto &[m, coef] : xp.terms()) {
        loc_monomial keep;
        long v = 0;
        std::vector<std::pair<long, long>> hit;
        for (const auto &[n, k] : m.e()) {
            if (n % c == 0) {
                hit.emplace_back(n / c, k);
                v += k;
            } else {
                keep = keep * loc_monomial::euler(n, k);
            }
        }
        for (const auto &[idx, k] : m.ys()) keep = keep * loc_monomial::y(idx.i, idx.n, k);
        if (v > top) continue;
        const unsigned prec = static_cast<unsigned>(top - v);
        formal_series s = formal_series::constant(prec, graded_rational(1));
        for (const auto &[k, a] : hit) s *= detail::unit_power(k, a, prec);
        for (unsigned t = 0; t <= prec; ++t) {
            if (s[t].is_zero()) continue;
            auto it = out.try_emplace(v + static_cast<long>(t), loc_elem(group_tag::circle())).first;
            it->second.add_term(keep, coef * s[t]);
        }
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

// sigma_c in P-coordinates; throws splitting_violation when x is not c-regular.
inline loc_elem sigma(const loc_elem &xp, long c)
{
    const auto ex = rho_expand(xp, c, 0);
    if (!ex.empty() && ex.begin()->first < 0) {
        throw splitting_violation("element is not regular along e_" + std::to_string(c) + "-multiples: " +
                                  from_p_coordinates(xp).to_string());
    }
    auto it = ex.find(0);
    return it == ex.end() ? loc_elem(group_tag::circle()) : it->second;
}

// Every c that could make xp irregular: divisors of indices carrying a
// negative exponent somewhere.
inline std::set<long> regularity_probes(const loc_elem &xp)
{
    std::set<long> idx;
    for (const auto &[m, c] : xp.terms()) {
        for (const auto &[n, k] : m.e()) {
            if (k < 0) idx.insert(std::labs(n));
        }
    }
    std::set<long> probes;
    for (long n : idx) {
        for (long c = 1; c <= n; ++c) {
            if (n % c == 0) probes.insert(c);
        }
    }
    return probes;
}

inline bool is_regular(const loc_elem &xp)
{
    for (long c : regularity_probes(xp)) {
        const auto ex = rho_expand(xp, c, 0);
        if (!ex.empty() && ex.begin()->first < 0) return false;
    }
    return true;
}

// beta_d on a Laurent value (ordinary Y-coordinates in and out).
inline loc_elem beta_value(long n, const loc_elem &x)
{
    if (n == 0) throw index_error("beta_0 is undefined");
    const long d = std::labs(n);
    const loc_elem xp = to_p_coordinates(x);
    loc_elem w = sigma(xp, d);
    for (long c = d - 1; c >= 1; --c) {
        if (d % c != 0) continue;
        const loc_elem gap = sigma(xp, c) - sigma(w, c);
        if (gap.is_zero()) continue;
        const loc_elem u = detail::e_power(d, 1).times_monomial(loc_monomial::euler(c, -1)).scaled(make_rational(c, d));
        w += gap * u;
    }
    return from_p_coordinates(w);
}

// Gamma_n on a Laurent value, with the per-call checks: x - beta(x) is
// killed by every sigma_c (c | |n|), and the quotient by e_n stays regular.
inline loc_elem gamma_value(long n, const loc_elem &x, const loc_elem &beta_x)
{
    const long d = std::labs(n);
    const loc_elem diff = x - beta_x;
    const loc_elem diffp = to_p_coordinates(diff);
    for (long c = 1; c <= d; ++c) {
        if (d % c == 0 && !sigma(diffp, c).is_zero()) {
            throw splitting_violation("x - beta_" + std::to_string(n) + "(x) survives restriction: " + diff.to_string());
        }
    }
    const loc_elem q = diff.times_monomial(loc_monomial::euler(n, -1));
    if (!is_regular(to_p_coordinates(q))) {
        throw splitting_violation("Gamma_" + std::to_string(n) + " leaves the regular subring: " + q.to_string());
    }
    return q;
}

} // namespace mug

#endif
