#ifndef MUG_GRADED_RATIONAL_HPP
#define MUG_GRADED_RATIONAL_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <mug/errors.hpp>
#include <mug/rational.hpp>

namespace mug
{

// Monomial m1^a1 * m2^a2 * ... stored as the exponent vector (a1, a2, ...)
// with trailing zeros stripped.
class mu_monomial
{
public:
    mu_monomial() = default;
    explicit mu_monomial(std::vector<unsigned> exps) : exps_(std::move(exps))
    {
        trim();
    }

    static mu_monomial generator(unsigned i, unsigned power = 1)
    {
        std::vector<unsigned> e(i, 0u);
        e[i - 1] = power;
        return mu_monomial(std::move(e));
    }

    unsigned exponent(unsigned i) const
    {
        return i >= 1 && i <= exps_.size() ? exps_[i - 1] : 0u;
    }
    const std::vector<unsigned> &exponents() const noexcept
    {
        return exps_;
    }
    // Highest generator index appearing, 0 for the unit.
    unsigned max_index() const noexcept
    {
        return static_cast<unsigned>(exps_.size());
    }
    int degree() const noexcept
    {
        int d = 0;
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            d += 2 * static_cast<int>(i + 1) * static_cast<int>(exps_[i]);
        }
        return d;
    }
    bool is_unit() const noexcept
    {
        return exps_.empty();
    }

    friend mu_monomial operator*(const mu_monomial &a, const mu_monomial &b)
    {
        std::vector<unsigned> e(std::max(a.exps_.size(), b.exps_.size()), 0u);
        for (std::size_t i = 0; i < a.exps_.size(); ++i) e[i] += a.exps_[i];
        for (std::size_t i = 0; i < b.exps_.size(); ++i) e[i] += b.exps_[i];
        return mu_monomial(std::move(e));
    }
    friend bool operator==(const mu_monomial &, const mu_monomial &) = default;

    std::string to_string() const
    {
        std::string s;
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            if (exps_[i] == 0u) continue;
            if (!s.empty()) s += '*';
            s += "m" + std::to_string(i + 1);
            if (exps_[i] > 1u) s += "^" + std::to_string(exps_[i]);
        }
        return s;
    }

private:
    void trim()
    {
        while (!exps_.empty() && exps_.back() == 0u) exps_.pop_back();
    }
    std::vector<unsigned> exps_;
};

// Canonical term order: degree ascending, then exponent vectors compared
// lexicographically with higher powers of lower-index generators first.
struct mu_monomial_order {
    bool operator()(const mu_monomial &a, const mu_monomial &b) const
    {
        const int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        const auto n = std::max(a.max_index(), b.max_index());
        for (unsigned i = 1; i <= n; ++i) {
            if (a.exponent(i) != b.exponent(i)) return a.exponent(i) > b.exponent(i);
        }
        return false;
    }
};

// Element of MU_* (x) Q = Q[m1, m2, ...], deg m_i = 2i.
class graded_rational
{
public:
    using term_map = std::map<mu_monomial, rational, mu_monomial_order>;

    graded_rational() = default;
    graded_rational(const rational &c)
    {
        if (c != 0) terms_.emplace(mu_monomial{}, c);
    }
    graded_rational(long c) : graded_rational(rational(c)) {}
    graded_rational(const mu_monomial &m, const rational &c)
    {
        if (c != 0) terms_.emplace(m, c);
    }

    static graded_rational generator(unsigned i)
    {
        return graded_rational(mu_monomial::generator(i), rational(1));
    }

    const term_map &terms() const noexcept
    {
        return terms_;
    }
    bool is_zero() const noexcept
    {
        return terms_.empty();
    }
    std::size_t size() const noexcept
    {
        return terms_.size();
    }

    rational coefficient(const mu_monomial &m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? rational(0) : it->second;
    }
    rational constant_term() const
    {
        return coefficient(mu_monomial{});
    }
    bool is_rational() const noexcept
    {
        return terms_.empty() || (terms_.size() == 1u && terms_.begin()->first.is_unit());
    }

    bool is_homogeneous() const noexcept
    {
        if (terms_.empty()) return true;
        return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
    }
    // Degree of the top term; 0 for the zero element.
    int max_degree() const noexcept
    {
        return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
    }
    int min_degree() const noexcept
    {
        return terms_.empty() ? 0 : terms_.begin()->first.degree();
    }
    unsigned max_generator() const noexcept
    {
        unsigned r = 0;
        for (const auto &[m, c] : terms_) r = std::max(r, m.max_index());
        return r;
    }

    // Homogeneous component of degree d.
    graded_rational component(int d) const
    {
        graded_rational r;
        for (const auto &[m, c] : terms_) {
            if (m.degree() == d) r.terms_.emplace(m, c);
        }
        return r;
    }

    graded_rational &operator+=(const graded_rational &o)
    {
        for (const auto &[m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    graded_rational &operator-=(const graded_rational &o)
    {
        for (const auto &[m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    graded_rational operator-() const
    {
        graded_rational r(*this);
        for (auto &[m, c] : r.terms_) c = -c;
        return r;
    }
    friend graded_rational operator+(graded_rational a, const graded_rational &b)
    {
        a += b;
        return a;
    }
    friend graded_rational operator-(graded_rational a, const graded_rational &b)
    {
        a -= b;
        return a;
    }
    friend graded_rational operator*(const graded_rational &a, const graded_rational &b)
    {
        graded_rational r;
        for (const auto &[ma, ca] : a.terms_) {
            for (const auto &[mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        }
        return r;
    }
    graded_rational &operator*=(const graded_rational &o)
    {
        *this = *this * o;
        return *this;
    }
    graded_rational scaled(const rational &q) const
    {
        if (q == 0) return {};
        graded_rational r(*this);
        for (auto &[m, c] : r.terms_) c *= q;
        return r;
    }
    graded_rational pow(unsigned k) const
    {
        graded_rational r(1), b(*this);
        while (k) {
            if (k & 1u) r *= b;
            k >>= 1u;
            if (k) b *= b;
        }
        return r;
    }

    friend bool operator==(const graded_rational &, const graded_rational &) = default;

    // Throws if some term exceeds the degree bound 2D.
    void check_bound(unsigned D) const
    {
        if (!terms_.empty() && max_degree() > 2 * static_cast<int>(D)) {
            throw truncation_error("degree " + std::to_string(max_degree()) + " exceeds bound " +
                                   std::to_string(2 * D));
        }
    }

    // `<rational>*m1^a1*...` terms joined by " + "; the zero element prints as 0.
    std::string to_string() const
    {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto &[m, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += c.get_str();
            if (!m.is_unit()) s += "*" + m.to_string();
        }
        return s;
    }

private:
    void add_term(const mu_monomial &m, const rational &c)
    {
        if (c == 0) return;
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    term_map terms_;
};

inline std::ostream &operator<<(std::ostream &os, const graded_rational &g)
{
    return os << g.to_string();
}

// Total order on values, used to key containers.
struct graded_rational_less {
    bool operator()(const graded_rational &a, const graded_rational &b) const
    {
        mu_monomial_order mo;
        auto ia = a.terms().begin(), ib = b.terms().begin();
        for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
            if (mo(ia->first, ib->first)) return true;
            if (mo(ib->first, ia->first)) return false;
            if (ia->second != ib->second) return ia->second < ib->second;
        }
        return ia == a.terms().end() && ib != b.terms().end();
    }
};

} // namespace mug

#endif
