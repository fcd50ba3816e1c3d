#ifndef MUG_COMPLETION_HPP
#define MUG_COMPLETION_HPP

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <mug/errors.hpp>
#include <mug/expr.hpp>
#include <mug/fgl.hpp>
#include <mug/normal_form.hpp>
#include <mug/series.hpp>
#include <mug/splitting.hpp>

namespace mug
{

// Unknown coefficient j of Y_i(x).
struct y_label {
    unsigned i = 0;
    unsigned j = 0;
    friend auto operator<=>(const y_label &, const y_label &) = default;
};

using taint_set = std::set<y_label>;

// Power series whose coefficients may depend on unknown Y_i coefficients.
// A tainted coefficient stores only the part computed from known data and
// is never reported as a value.
class completion_image
{
public:
    completion_image() : taint_(1) {}
    explicit completion_image(formal_series s) : s_(std::move(s)), taint_(s_.truncation() + 1u) {}
    completion_image(formal_series s, std::vector<taint_set> taint) : s_(std::move(s)), taint_(std::move(taint))
    {
        taint_.resize(s_.truncation() + 1u);
    }

    static completion_image constant(unsigned D, const graded_rational &c)
    {
        return completion_image(formal_series::constant(D, c));
    }

    unsigned truncation() const noexcept
    {
        return s_.truncation();
    }
    const formal_series &series() const noexcept
    {
        return s_;
    }
    bool tainted(unsigned j) const
    {
        return j < taint_.size() && !taint_[j].empty();
    }
    const taint_set &taint(unsigned j) const
    {
        return taint_.at(j);
    }
    // Coefficient of x^j, or nothing when it depends on unknown data.
    std::optional<graded_rational> coefficient(unsigned j) const
    {
        if (j > truncation() || tainted(j)) return std::nullopt;
        return s_[j];
    }
    // Largest J with every coefficient of x^0..x^J known; nullopt if x^0 is not.
    std::optional<unsigned> exact_through() const
    {
        std::optional<unsigned> r;
        for (unsigned j = 0; j <= truncation() && !tainted(j); ++j) r = j;
        return r;
    }

    completion_image truncated(unsigned D) const
    {
        const unsigned t = std::min(D, truncation());
        std::vector<taint_set> tt(taint_.begin(), taint_.begin() + t + 1);
        return completion_image(s_.truncated(t), std::move(tt));
    }

    friend completion_image operator+(const completion_image &a, const completion_image &b)
    {
        return combine(a, b, 1);
    }
    friend completion_image operator-(const completion_image &a, const completion_image &b)
    {
        return combine(a, b, -1);
    }
    friend completion_image operator*(const completion_image &a, const completion_image &b)
    {
        const unsigned D = std::min(a.truncation(), b.truncation());
        std::vector<taint_set> tt(D + 1u);
        for (unsigned i = 0; i <= D; ++i) {
            for (unsigned j = 0; i + j <= D; ++j) {
                const bool ta = a.tainted(i), tb = b.tainted(j);
                if (!ta && !tb) continue;
                if ((ta && !tb && b.s_[j].is_zero()) || (tb && !ta && a.s_[i].is_zero())) continue;
                if (ta) tt[i + j].insert(a.taint_[i].begin(), a.taint_[i].end());
                if (tb) tt[i + j].insert(b.taint_[j].begin(), b.taint_[j].end());
            }
        }
        return completion_image(a.s_.truncated(D) * b.s_.truncated(D), std::move(tt));
    }
    completion_image scaled(const graded_rational &c) const
    {
        if (c.is_zero()) return completion_image(formal_series(truncation()));
        return completion_image(s_.scaled(c), taint_);
    }
    completion_image pow(unsigned k) const
    {
        completion_image r = constant(truncation(), graded_rational(1));
        for (unsigned t = 0; t < k; ++t) r = r * *this;
        return r;
    }

    // Exact quotient by g = [n]_F x (valuation 1). The constant term must
    // vanish; the result loses one order of precision.
    completion_image divide_by_valuation_one(const formal_series &g) const
    {
        if (tainted(0)) throw consistency_error("cannot verify divisibility: constant term is not known");
        if (!s_[0].is_zero()) {
            throw consistency_error("series division leaves a remainder: constant term " + s_[0].to_string());
        }
        if (g.truncation() < 1u || !g[0].is_zero() || !g[1].is_rational() || g[1].is_zero()) {
            throw invalid_argument("divisor must start with a nonzero rational multiple of x");
        }
        const unsigned T = std::min(truncation(), g.truncation());
        if (T == 0u) return completion_image(formal_series(0));
        const rational lead = g[1].constant_term();
        formal_series q(T - 1u);
        std::vector<taint_set> tt(T);
        for (unsigned k = 0; k + 1u <= T; ++k) {
            graded_rational acc = s_[k + 1u];
            tt[k] = taint_[k + 1u];
            for (unsigned j = 0; j < k; ++j) {
                const graded_rational &gc = g[k + 1u - j];
                if (gc.is_zero()) continue;
                acc -= q[j] * gc;
                tt[k].insert(tt[j].begin(), tt[j].end());
            }
            q[k] = acc.scaled(1 / lead);
        }
        return completion_image(std::move(q), std::move(tt));
    }

    // (f - f(0)) / x.
    completion_image tail_shift() const
    {
        std::vector<taint_set> tt(taint_.begin() + (truncation() > 0u ? 1 : 0), taint_.end());
        if (truncation() == 0u) return completion_image(formal_series(0));
        return completion_image(s_.tail_shift(), std::move(tt));
    }

    // Cut the precision back so no coefficient exceeds degree 2D. For a
    // homogeneous series the degree of x^j is read off any known nonzero
    // coefficient, so tainted coefficients are bounded too.
    completion_image bounded(unsigned D) const
    {
        const int cap = 2 * static_cast<int>(D);
        for (unsigned j = 0; j <= truncation(); ++j) {
            if (tainted(j) || s_[j].is_zero() || !s_[j].is_homogeneous()) continue;
            const int total = s_[j].max_degree() - 2 * static_cast<int>(j);
            if (total > cap) throw truncation_error("series degree exceeds " + std::to_string(cap));
            return truncated(static_cast<unsigned>((cap - total) / 2));
        }
        for (unsigned j = 0; j <= truncation(); ++j) {
            if (!s_[j].is_zero() && s_[j].max_degree() > cap) {
                if (j == 0u) throw truncation_error("constant term exceeds degree " + std::to_string(cap));
                return truncated(j - 1u);
            }
        }
        return *this;
    }

    // Agreement on every coefficient known in both.
    bool agrees_with(const completion_image &o) const
    {
        const unsigned D = std::min(truncation(), o.truncation());
        for (unsigned j = 0; j <= D; ++j) {
            if (tainted(j) || o.tainted(j)) continue;
            if (!(s_[j] == o.s_[j])) return false;
        }
        return true;
    }

    std::string to_string() const
    {
        std::string s;
        for (unsigned j = 0; j <= truncation(); ++j) {
            std::string c;
            if (tainted(j)) {
                const y_label &l = *taint_[j].begin();
                c = "?[Y_" + std::to_string(l.i) + ":" + std::to_string(l.j) + "]";
            } else if (s_[j].is_zero()) {
                continue;
            } else {
                c = detail::coefficient_text(s_[j]);
            }
            if (!s.empty()) s += " + ";
            s += c;
            if (j > 0u) s += "*" + detail::power_text("x", j);
        }
        if (s.empty()) s = "0";
        return s + " + O(" + detail::power_text("x", truncation() + 1u) + ")";
    }

private:
    static completion_image combine(const completion_image &a, const completion_image &b, int sign)
    {
        const unsigned D = std::min(a.truncation(), b.truncation());
        std::vector<taint_set> tt(D + 1u);
        for (unsigned j = 0; j <= D; ++j) {
            tt[j] = a.taint_[j];
            tt[j].insert(b.taint_[j].begin(), b.taint_[j].end());
        }
        formal_series s = sign > 0 ? a.s_.truncated(D) + b.s_.truncated(D) : a.s_.truncated(D) - b.s_.truncated(D);
        return completion_image(std::move(s), std::move(tt));
    }

    formal_series s_;
    std::vector<taint_set> taint_;
};

// Known low-order coefficients of Y_i(x), the completion of P(i,1).
//  - Y_i(0) = [CP^i] for every i: the constant term of a completion is
//    the underlying nonequivariant class.
//  - the x-coefficient of Y_1 is [F_1] - [CP^1 x CP^1], and both surfaces
//    have Chern numbers (c1^2, c2) = (8, 4), so it is 0 in MU_4 (x) Q.
// Everything else is unknown.
class ytable
{
public:
    struct entry {
        graded_rational value;
        std::string provenance;
    };

    explicit ytable(unsigned D = default_degree) : D_(D)
    {
        detail::require_degree(D);
        for (unsigned i = 1; i < D; ++i) {
            known_[{i, 0u}] = {cp_class(i, D), "constant term: underlying class [CP^" + std::to_string(i) + "]"};
        }
        if (D >= 2u) {
            known_[{1u, 1u}] = {graded_rational{}, "[F_1] - [CP^1 x CP^1]; Chern numbers (8,4) for both"};
        }
    }

    unsigned degree() const noexcept
    {
        return D_;
    }
    const entry *find(unsigned i, unsigned j) const
    {
        auto it = known_.find({i, j});
        return it == known_.end() ? nullptr : &it->second;
    }
    const std::map<y_label, entry> &entries() const noexcept
    {
        return known_;
    }

    // Y_i(x) through x^prec, unknown coefficients tainted.
    completion_image series(unsigned i, unsigned prec) const
    {
        if (i == 0u) throw index_error("Y_i needs i >= 1");
        if (i >= D_) {
            throw truncation_error("Y_" + std::to_string(i) + " needs m" + std::to_string(i) + ", beyond degree bound " +
                                   std::to_string(D_));
        }
        formal_series s(prec);
        std::vector<taint_set> tt(prec + 1u);
        for (unsigned j = 0; j <= prec; ++j) {
            if (const entry *e = find(i, j)) {
                s[j] = e->value;
            } else {
                tt[j].insert({i, j});
            }
        }
        return completion_image(std::move(s), std::move(tt));
    }

    // Y_i([n]_F x) through x^prec.
    completion_image composed(unsigned i, long n, unsigned prec) const
    {
        const completion_image y = series(i, prec);
        const completion_image f(n_series(n, prec));
        completion_image acc = completion_image::constant(prec, graded_rational{});
        completion_image power = completion_image::constant(prec, graded_rational(1));
        for (unsigned j = 0; j <= prec; ++j) {
            std::vector<taint_set> tt(prec + 1u);
            if (y.tainted(j)) {
                for (unsigned k = j; k <= prec; ++k) tt[k] = y.taint(j);
            }
            acc = acc + completion_image(power.series().scaled(y.series()[j]), std::move(tt));
            power = power * f;
        }
        return acc;
    }

private:
    unsigned D_;
    std::map<y_label, entry> known_;
};

// Completion MU^{S^1}_* -> MU_*[[x]], evaluated through the Laurent model
// where needed. One instance shares memo tables across calls.
class completer
{
public:
    explicit completer(unsigned D = default_degree) : D_(D), table_(D) {}
    completer(unsigned D, ytable table) : D_(D), table_(std::move(table)) {}

    const ytable &table() const noexcept
    {
        return table_;
    }

    completion_image complete(const expr &x)
    {
        return run(x, D_).bounded(D_);
    }

    // Completion of a regular Laurent value: rho_1 in P-coordinates, then
    // P(i,n) -> Y_i([n]_F x).
    completion_image complete_value(const loc_elem &v, unsigned prec)
    {
        const auto ex = rho_expand(to_p_coordinates(v), 1, static_cast<long>(prec));
        if (!ex.empty() && ex.begin()->first < 0) {
            throw consistency_error("value is not regular at the augmentation ideal: " + v.to_string());
        }
        completion_image out = completion_image::constant(prec, graded_rational{});
        for (const auto &[t, part] : ex) {
            for (const auto &[m, c] : part.terms()) {
                completion_image term = completion_image::constant(prec, c);
                for (const auto &[idx, k] : m.ys()) term = term * table_.composed(idx.i, idx.n, prec).pow(k);
                out = out + shift(term, static_cast<unsigned>(t));
            }
        }
        return out;
    }

private:
    static completion_image shift(const completion_image &f, unsigned t)
    {
        if (t == 0u) return f;
        std::vector<taint_set> tt(f.truncation() + 1u);
        for (unsigned j = 0; j + t <= f.truncation(); ++j) tt[j + t] = f.taint(j);
        return completion_image(f.series().shifted(t), std::move(tt));
    }

    completion_image run(const expr &x, unsigned prec)
    {
        switch (x->kind) {
        case expr_kind::euler:
            return completion_image(n_series(x->n, prec));
        case expr_kind::proj:
            return table_.composed(x->i, x->n, prec);
        case expr_kind::scalar:
            return completion_image::constant(prec, x->value);
        case expr_kind::sum: {
            completion_image r = completion_image::constant(prec, graded_rational{});
            for (const auto &k : x->kids) r = r + run(k, prec);
            return r;
        }
        case expr_kind::prod: {
            completion_image r = completion_image::constant(prec, graded_rational(1));
            for (const auto &k : x->kids) r = r * run(k, prec);
            return r;
        }
        case expr_kind::gamma: {
            const expr &y = x->kids[0];
            const loc_elem b = beta_value(x->n, ev_.eval(y));
            const completion_image num = run(y, prec + 1u) - complete_value(b, prec + 1u);
            return num.divide_by_valuation_one(n_series(x->n, prec + 1u));
        }
        case expr_kind::beta:
            return complete_value(beta_value(x->n, ev_.eval(x->kids[0])), prec);
        }
        return completion_image::constant(prec, graded_rational{});
    }

    unsigned D_;
    ytable table_;
    evaluator ev_;
};

inline completion_image complete(const expr &x, unsigned D = default_degree)
{
    return completer(D).complete(x);
}

inline completion_image tail_shift(const completion_image &f)
{
    return f.tail_shift();
}

// One generator of the subring A with how it was obtained.
struct a_generator {
    multi_series series;
    std::string origin;
};

namespace detail
{

inline multi_series e_set_member(const std::vector<long> &m, unsigned D)
{
    const unsigned k = static_cast<unsigned>(m.size());
    multi_series acc(k, D);
    for (unsigned i = 0; i < k; ++i) {
        if (m[i] == 0) continue;
        const multi_series t = multi_series::from_univariate(k, i, n_series(m[i], D));
        acc = acc.terms().empty() ? t : fgl_add(acc, t, D);
    }
    return acc;
}

// g / ([m]_F x_i) when g vanishes on x_i = 0.
inline std::optional<multi_series> divide_by_single(const multi_series &g, unsigned i, long m, unsigned D)
{
    const unsigned k = g.variables();
    multi_series::term_map lowered_terms;
    for (const auto &[e, c] : g.terms()) {
        if (e[i] == 0u) return std::nullopt;
        auto f = e;
        f[i] -= 1u;
        lowered_terms.emplace(std::move(f), c);
    }
    const multi_series lowered = multi_series::from_terms(k, D - 1u, lowered_terms);
    // [m]x = x * u(x) with u(0) = m; divide by the unit u.
    const formal_series u = n_series(m, D).tail_shift().inverse();
    return lowered * multi_series::from_univariate(k, i, u.truncated(lowered.truncation()));
}

inline bool same_series(const multi_series &a, const multi_series &b)
{
    return a.truncation() == b.truncation() && a.terms() == b.terms();
}

} // namespace detail

// Generators of the minimal subring A of MU_*[[x_1..x_k]], to total degree
// D: the set E of sums [m_1]x_1 +_F ... +_F [m_k]x_k with |m_i| <= bound,
// the series Y_i(f) for f in E cut to their known range, and `depth`
// rounds of quotients alpha = g / f with g already listed and f in E.
// Quotients are taken only by members of E in a single variable.
inline std::vector<a_generator> subring_A_generators(unsigned k, unsigned D, unsigned depth, long bound = 2)
{
    if (k == 0u) throw invalid_argument("subring_A_generators needs rank k >= 1");
    detail::require_degree(D);
    std::vector<a_generator> out;
    struct e_member {
        std::vector<long> m;
        multi_series f;
        std::string name;
    };
    std::vector<e_member> e_set;
    std::vector<long> m(k, -bound);
    for (;;) {
        if (std::any_of(m.begin(), m.end(), [](long v) { return v != 0; })) {
            std::string name = "[";
            for (unsigned i = 0; i < k; ++i) name += (i ? "," : "") + std::to_string(m[i]);
            name += "]";
            e_set.push_back({m, detail::e_set_member(m, D), "E" + name});
        }
        unsigned i = 0;
        while (i < k && m[i] == bound) m[i++] = -bound;
        if (i == k) break;
        ++m[i];
    }
    for (const auto &e : e_set) out.push_back({e.f, e.name});

    const ytable table(D);
    for (const auto &e : e_set) {
        for (unsigned i = 1; i < D; ++i) {
            unsigned known = 0;
            while (table.find(i, known) != nullptr) ++known;
            const unsigned t = std::min(D, known - 1u);
            formal_series y(t);
            for (unsigned j = 0; j <= t; ++j) y[j] = table.find(i, j)->value;
            // Y_i(f) with f of zero constant term, through the known range.
            multi_series acc = multi_series::constant(k, t, y[t]);
            for (unsigned j = t; j-- > 0u;) acc = acc * e.f.truncated(t) + multi_series::constant(k, t, y[j]);
            out.push_back({std::move(acc), "Y_" + std::to_string(i) + "(" + e.name + ")"});
        }
    }

    // Quotients are kept only when they are new.
    auto add = [&](multi_series q, std::string origin) {
        for (const auto &g : out) {
            if (detail::same_series(g.series, q)) return;
        }
        out.push_back({std::move(q), std::move(origin)});
    };
    for (unsigned round = 0; round < depth; ++round) {
        const std::size_t n = out.size();
        for (std::size_t g = 0; g < n; ++g) {
            for (const auto &e : e_set) {
                const auto nz = std::count_if(e.m.begin(), e.m.end(), [](long v) { return v != 0; });
                if (nz != 1) continue;
                const unsigned i = static_cast<unsigned>(
                    std::find_if(e.m.begin(), e.m.end(), [](long v) { return v != 0; }) - e.m.begin());
                if (out[g].series.truncation() == 0u) continue;
                auto q = detail::divide_by_single(out[g].series, i, e.m[i], out[g].series.truncation());
                if (q) add(std::move(*q), out[g].origin + " / " + e.name);
            }
        }
    }
    return out;
}

} // namespace mug

#endif
