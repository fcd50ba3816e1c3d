#ifndef MUG_SERIES_HPP
#define MUG_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <mug/errors.hpp>
#include <mug/graded_rational.hpp>

namespace mug
{

namespace detail
{

inline std::string coefficient_text(const graded_rational &c)
{
    return c.size() > 1u ? "(" + c.to_string() + ")" : c.to_string();
}

inline std::string power_text(const std::string &var, unsigned j)
{
    return j == 1u ? var : var + "^" + std::to_string(j);
}

} // namespace detail

// Truncated power series in one variable x, coefficients in MU_* (x) Q.
// Coefficients of x^0..x^D are stored; anything beyond is unknown.
class formal_series
{
public:
    formal_series() : coeffs_(1) {}
    explicit formal_series(unsigned D) : coeffs_(D + 1u) {}
    formal_series(unsigned D, std::vector<graded_rational> c) : coeffs_(std::move(c))
    {
        coeffs_.resize(D + 1u);
    }

    static formal_series constant(unsigned D, const graded_rational &c)
    {
        formal_series s(D);
        s.coeffs_[0] = c;
        return s;
    }
    static formal_series variable(unsigned D)
    {
        formal_series s(D);
        if (D >= 1u) s.coeffs_[1] = graded_rational(1);
        return s;
    }

    unsigned truncation() const noexcept
    {
        return static_cast<unsigned>(coeffs_.size() - 1u);
    }
    const graded_rational &operator[](unsigned j) const
    {
        return coeffs_.at(j);
    }
    graded_rational &operator[](unsigned j)
    {
        return coeffs_.at(j);
    }
    const std::vector<graded_rational> &coefficients() const noexcept
    {
        return coeffs_;
    }

    // Index of the first nonzero coefficient, nullopt for the zero series.
    std::optional<unsigned> valuation() const
    {
        for (unsigned j = 0; j < coeffs_.size(); ++j) {
            if (!coeffs_[j].is_zero()) return j;
        }
        return std::nullopt;
    }
    bool is_zero() const
    {
        return !valuation().has_value();
    }

    formal_series truncated(unsigned D) const
    {
        std::vector<graded_rational> c(coeffs_.begin(), coeffs_.begin() + std::min<std::size_t>(D + 1u, coeffs_.size()));
        return formal_series(D, std::move(c));
    }

    formal_series &operator+=(const formal_series &o)
    {
        shrink_to(o.truncation());
        for (unsigned j = 0; j <= truncation(); ++j) coeffs_[j] += o.coeffs_[j];
        return *this;
    }
    formal_series &operator-=(const formal_series &o)
    {
        shrink_to(o.truncation());
        for (unsigned j = 0; j <= truncation(); ++j) coeffs_[j] -= o.coeffs_[j];
        return *this;
    }
    friend formal_series operator+(formal_series a, const formal_series &b)
    {
        a += b;
        return a;
    }
    friend formal_series operator-(formal_series a, const formal_series &b)
    {
        a -= b;
        return a;
    }
    formal_series operator-() const
    {
        formal_series r(*this);
        for (auto &c : r.coeffs_) c = -c;
        return r;
    }
    friend formal_series operator*(const formal_series &a, const formal_series &b)
    {
        const unsigned D = std::min(a.truncation(), b.truncation());
        formal_series r(D);
        for (unsigned i = 0; i <= D; ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (unsigned j = 0; i + j <= D; ++j) {
                if (!b.coeffs_[j].is_zero()) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return r;
    }
    formal_series &operator*=(const formal_series &o)
    {
        *this = *this * o;
        return *this;
    }
    formal_series scaled(const graded_rational &g) const
    {
        formal_series r(*this);
        for (auto &c : r.coeffs_) c = c * g;
        return r;
    }
    formal_series pow(unsigned k) const
    {
        formal_series r = constant(truncation(), graded_rational(1)), b(*this);
        while (k) {
            if (k & 1u) r *= b;
            k >>= 1u;
            if (k) b *= b;
        }
        return r;
    }

    // Multiplicative inverse; the constant term must be a nonzero rational.
    formal_series inverse() const
    {
        const auto &c0 = coeffs_[0];
        if (c0.is_zero() || !c0.is_rational()) {
            throw invalid_argument("series inverse needs a nonzero rational constant term");
        }
        const rational inv0 = 1 / c0.constant_term();
        const unsigned D = truncation();
        formal_series r(D);
        r.coeffs_[0] = graded_rational(inv0);
        for (unsigned n = 1; n <= D; ++n) {
            graded_rational acc;
            for (unsigned k = 1; k <= n; ++k) acc += coeffs_[k] * r.coeffs_[n - k];
            r.coeffs_[n] = (-acc).scaled(inv0);
        }
        return r;
    }

    // (f - f(0)) / x; the truncation drops by one.
    formal_series tail_shift() const
    {
        const unsigned D = truncation();
        if (D == 0u) return formal_series(0);
        formal_series r(D - 1u);
        for (unsigned j = 1; j <= D; ++j) r.coeffs_[j - 1u] = coeffs_[j];
        return r;
    }

    // f * x^k, staying at the current truncation.
    formal_series shifted(unsigned k) const
    {
        formal_series r(truncation());
        for (unsigned j = 0; j + k <= truncation(); ++j) r.coeffs_[j + k] = coeffs_[j];
        return r;
    }

    friend bool operator==(const formal_series &, const formal_series &) = default;

    // Agreement through x^D.
    bool equal_through(const formal_series &o, unsigned D) const
    {
        for (unsigned j = 0; j <= D; ++j) {
            const graded_rational za, zb;
            const auto &a = j <= truncation() ? coeffs_[j] : za;
            const auto &b = j <= o.truncation() ? o.coeffs_[j] : zb;
            if (!(a == b)) return false;
        }
        return true;
    }

    // True if each coefficient of x^j is homogeneous of degree d + 2j.
    bool is_homogeneous(int d) const
    {
        for (unsigned j = 0; j < coeffs_.size(); ++j) {
            const auto &c = coeffs_[j];
            if (c.is_zero()) continue;
            if (!c.is_homogeneous() || c.max_degree() != d + 2 * static_cast<int>(j)) return false;
        }
        return true;
    }

    std::string to_string(bool with_order = true) const
    {
        std::string s;
        for (unsigned j = 0; j < coeffs_.size(); ++j) {
            if (coeffs_[j].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += detail::coefficient_text(coeffs_[j]);
            if (j > 0u) s += "*" + detail::power_text("x", j);
        }
        if (s.empty()) s = "0";
        if (with_order) s += " + O(" + detail::power_text("x", truncation() + 1u) + ")";
        return s;
    }

private:
    void shrink_to(unsigned D)
    {
        if (D < truncation()) coeffs_.resize(D + 1u);
    }

    std::vector<graded_rational> coeffs_;
};

// Truncated power series in x1..xk, cut at total degree D.
class multi_series
{
public:
    using exponent = std::vector<unsigned>;
    using term_map = std::map<exponent, graded_rational>;

    multi_series() = default;
    multi_series(unsigned nvars, unsigned D) : nvars_(nvars), D_(D) {}

    static multi_series variable(unsigned nvars, unsigned D, unsigned i)
    {
        multi_series s(nvars, D);
        if (D >= 1u) {
            exponent e(nvars, 0u);
            e.at(i) = 1u;
            s.terms_.emplace(std::move(e), graded_rational(1));
        }
        return s;
    }
    static multi_series constant(unsigned nvars, unsigned D, const graded_rational &c)
    {
        multi_series s(nvars, D);
        if (!c.is_zero()) s.terms_.emplace(exponent(nvars, 0u), c);
        return s;
    }
    static multi_series from_terms(unsigned nvars, unsigned D, const term_map &terms)
    {
        multi_series s(nvars, D);
        for (const auto &[e, c] : terms) {
            if (e.size() != nvars) throw invalid_argument("multi_series exponent has the wrong length");
            s.add_term(e, c);
        }
        return s;
    }
    // Embed a univariate series as a series in variable i.
    static multi_series from_univariate(unsigned nvars, unsigned i, const formal_series &f)
    {
        multi_series s(nvars, f.truncation());
        for (unsigned j = 0; j <= f.truncation(); ++j) {
            if (f[j].is_zero()) continue;
            exponent e(nvars, 0u);
            e.at(i) = j;
            s.terms_.emplace(std::move(e), f[j]);
        }
        return s;
    }

    unsigned variables() const noexcept
    {
        return nvars_;
    }
    unsigned truncation() const noexcept
    {
        return D_;
    }
    const term_map &terms() const noexcept
    {
        return terms_;
    }
    graded_rational coefficient(const exponent &e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? graded_rational{} : it->second;
    }
    graded_rational constant_term() const
    {
        return coefficient(exponent(nvars_, 0u));
    }
    bool is_zero() const noexcept
    {
        return terms_.empty();
    }
    multi_series truncated(unsigned D) const
    {
        multi_series r(*this);
        r.D_ = std::min(D, D_);
        r.drop_above(r.D_);
        return r;
    }

    multi_series &operator+=(const multi_series &o)
    {
        check_compatible(o);
        D_ = std::min(D_, o.D_);
        for (const auto &[e, c] : o.terms_) add_term(e, c);
        drop_above(D_);
        return *this;
    }
    multi_series &operator-=(const multi_series &o)
    {
        return *this += -o;
    }
    friend multi_series operator+(multi_series a, const multi_series &b)
    {
        a += b;
        return a;
    }
    friend multi_series operator-(multi_series a, const multi_series &b)
    {
        a -= b;
        return a;
    }
    multi_series operator-() const
    {
        multi_series r(*this);
        for (auto &[e, c] : r.terms_) c = -c;
        return r;
    }
    friend multi_series operator*(const multi_series &a, const multi_series &b)
    {
        a.check_compatible(b);
        multi_series r(a.nvars_, std::min(a.D_, b.D_));
        for (const auto &[ea, ca] : a.terms_) {
            const unsigned da = total(ea);
            for (const auto &[eb, cb] : b.terms_) {
                if (da + total(eb) > r.D_) continue;
                exponent e(a.nvars_);
                for (unsigned i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    multi_series &operator*=(const multi_series &o)
    {
        *this = *this * o;
        return *this;
    }
    multi_series scaled(const graded_rational &g) const
    {
        multi_series r(nvars_, D_);
        for (const auto &[e, c] : terms_) r.add_term(e, c * g);
        return r;
    }

    friend bool operator==(const multi_series &a, const multi_series &b)
    {
        return a.nvars_ == b.nvars_ && a.D_ == b.D_ && a.terms_ == b.terms_;
    }

    std::string to_string(bool with_order = true) const
    {
        std::vector<std::pair<exponent, graded_rational>> v(terms_.begin(), terms_.end());
        std::stable_sort(v.begin(), v.end(), [](const auto &p, const auto &q) { return total(p.first) < total(q.first); });
        std::string s;
        for (const auto &[e, c] : v) {
            if (!s.empty()) s += " + ";
            s += detail::coefficient_text(c);
            for (unsigned i = 0; i < nvars_; ++i) {
                if (e[i] > 0u) s += "*" + detail::power_text("x" + std::to_string(i + 1u), e[i]);
            }
        }
        if (s.empty()) s = "0";
        if (with_order) s += " + O(deg " + std::to_string(D_ + 1u) + ")";
        return s;
    }

    static unsigned total(const exponent &e)
    {
        unsigned t = 0;
        for (auto x : e) t += x;
        return t;
    }

private:
    void check_compatible(const multi_series &o) const
    {
        if (nvars_ != o.nvars_) throw invalid_argument("multi_series variable count mismatch");
    }
    void add_term(const exponent &e, const graded_rational &c)
    {
        if (c.is_zero() || total(e) > D_) return;
        auto [it, fresh] = terms_.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    void drop_above(unsigned D)
    {
        for (auto it = terms_.begin(); it != terms_.end();) {
            it = total(it->first) > D ? terms_.erase(it) : std::next(it);
        }
    }

    unsigned nvars_ = 1;
    unsigned D_ = 0;
    term_map terms_;
};

namespace detail
{

template <typename S>
S unit_like(const S &f);

template <>
inline formal_series unit_like(const formal_series &f)
{
    return formal_series::constant(f.truncation(), graded_rational(1));
}

template <>
inline multi_series unit_like(const multi_series &f)
{
    return multi_series::constant(f.variables(), f.truncation(), graded_rational(1));
}

template <typename S>
bool has_constant_term(const S &f);

template <>
inline bool has_constant_term(const formal_series &f)
{
    return !f[0].is_zero();
}

template <>
inline bool has_constant_term(const multi_series &f)
{
    return !f.constant_term().is_zero();
}

} // namespace detail

// h(f) for a univariate h and an argument f with zero constant term.
// Horner evaluation; f may be univariate or multivariate.
template <typename S>
S compose(const formal_series &h, const S &f)
{
    if (detail::has_constant_term(f)) throw invalid_argument("composition argument must have zero constant term");
    const S one = detail::unit_like(f);
    const unsigned D = std::min(h.truncation(), f.truncation());
    S acc = one.scaled(h[D]);
    for (unsigned j = D; j-- > 0u;) {
        acc = acc * f + one.scaled(h[j]);
    }
    return acc;
}

} // namespace mug

#endif
