#ifndef MUG_LOC_ELEM_HPP
#define MUG_LOC_ELEM_HPP

#include <algorithm>
#include <cstdlib>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <mug/errors.hpp>
#include <mug/graded_rational.hpp>

namespace mug
{

// Circle (d == 0) or the cyclic group Z/d.
struct group_tag {
    unsigned d = 0;

    static group_tag circle()
    {
        return {0u};
    }
    static group_tag cyclic(unsigned d)
    {
        if (d == 0u) throw invalid_argument("cyclic group order must be at least 1");
        return {d};
    }
    bool is_circle() const noexcept
    {
        return d == 0u;
    }
    bool valid_character(long n) const noexcept
    {
        return is_circle() ? n != 0 : (n >= 1 && n < static_cast<long>(d));
    }
    long dual(long n) const noexcept
    {
        return is_circle() ? -n : static_cast<long>(d) - n;
    }
    std::string to_string() const
    {
        return is_circle() ? "S1" : "Z" + std::to_string(d);
    }
    void check_character(long n) const
    {
        if (!valid_character(n)) {
            throw index_error("character index " + std::to_string(n) + " is not a nontrivial character of " +
                              to_string());
        }
    }
    friend bool operator==(const group_tag &, const group_tag &) = default;
};

// Character order: |n| ascending, positive before negative.
inline bool character_less(long a, long b) noexcept
{
    const long aa = std::labs(a), ab = std::labs(b);
    if (aa != ab) return aa < ab;
    return a > b;
}

struct character_order {
    bool operator()(long a, long b) const noexcept
    {
        return character_less(a, b);
    }
};

// Generator Y_{i,n}, ordered by character then i.
struct y_index {
    unsigned i;
    long n;
    friend bool operator==(const y_index &, const y_index &) = default;
};

struct y_index_order {
    bool operator()(const y_index &a, const y_index &b) const noexcept
    {
        if (a.n != b.n) return character_less(a.n, b.n);
        return a.i < b.i;
    }
};

// Laurent monomial prod e_n^{k_n} * prod Y_{i,n}^{j}.
class loc_monomial
{
public:
    using e_map = std::map<long, long, character_order>;
    using y_map = std::map<y_index, unsigned, y_index_order>;

    loc_monomial() = default;

    static loc_monomial euler(long n, long k = 1)
    {
        loc_monomial m;
        if (k != 0) m.e_[n] = k;
        return m;
    }
    static loc_monomial y(unsigned i, long n, unsigned k = 1)
    {
        loc_monomial m;
        if (k != 0u) m.y_[{i, n}] = k;
        return m;
    }

    const e_map &e() const noexcept
    {
        return e_;
    }
    const y_map &ys() const noexcept
    {
        return y_;
    }
    long e_exponent(long n) const
    {
        auto it = e_.find(n);
        return it == e_.end() ? 0 : it->second;
    }
    bool is_unit() const noexcept
    {
        return e_.empty() && y_.empty();
    }
    // Degree of the monomial alone: -2 per e, 2i per Y_{i,n}.
    int degree() const noexcept
    {
        long d = 0;
        for (const auto &[n, k] : e_) d -= 2 * k;
        for (const auto &[idx, k] : y_) d += 2 * static_cast<long>(idx.i) * static_cast<long>(k);
        return static_cast<int>(d);
    }

    friend loc_monomial operator*(const loc_monomial &a, const loc_monomial &b)
    {
        loc_monomial r(a);
        for (const auto &[n, k] : b.e_) {
            const long v = (r.e_[n] += k);
            if (v == 0) r.e_.erase(n);
        }
        for (const auto &[idx, k] : b.y_) r.y_[idx] += k;
        return r;
    }
    loc_monomial e_inverse() const
    {
        loc_monomial r(*this);
        for (auto &[n, k] : r.e_) k = -k;
        return r;
    }

    friend bool operator==(const loc_monomial &, const loc_monomial &) = default;

    friend bool operator<(const loc_monomial &a, const loc_monomial &b)
    {
        auto ia = a.e_.begin(), ib = b.e_.begin();
        for (; ia != a.e_.end() && ib != b.e_.end(); ++ia, ++ib) {
            if (ia->first != ib->first) return character_less(ia->first, ib->first);
            if (ia->second != ib->second) return ia->second < ib->second;
        }
        if (ia != a.e_.end() || ib != b.e_.end()) return ia == a.e_.end();
        auto ja = a.y_.begin(), jb = b.y_.begin();
        for (; ja != a.y_.end() && jb != b.y_.end(); ++ja, ++jb) {
            if (!(ja->first == jb->first)) return y_index_order{}(ja->first, jb->first);
            if (ja->second != jb->second) return ja->second < jb->second;
        }
        return ja == a.y_.end() && jb != b.y_.end();
    }

    std::string to_string() const
    {
        std::string s;
        for (const auto &[n, k] : e_) {
            if (!s.empty()) s += " * ";
            s += "e(" + std::to_string(n) + ")";
            if (k != 1) s += "^" + std::to_string(k);
        }
        for (const auto &[idx, k] : y_) {
            if (!s.empty()) s += " * ";
            s += "Y(" + std::to_string(idx.i) + "," + std::to_string(idx.n) + ")";
            if (k != 1u) s += "^" + std::to_string(k);
        }
        return s;
    }

private:
    e_map e_;
    y_map y_;
};

// Element of MU_*[e_n, e_n^{-1}, Y_{i,n}] (x) Q for a fixed group.
class loc_elem
{
public:
    using term_map = std::map<loc_monomial, graded_rational>;

    loc_elem() = default;
    explicit loc_elem(group_tag g) : group_(g) {}
    loc_elem(group_tag g, const graded_rational &c) : group_(g)
    {
        if (!c.is_zero()) terms_.emplace(loc_monomial{}, c);
    }
    loc_elem(group_tag g, const loc_monomial &m, const graded_rational &c) : group_(g)
    {
        if (!c.is_zero()) terms_.emplace(m, c);
    }

    static loc_elem euler(group_tag g, long n, long k = 1)
    {
        g.check_character(n);
        return loc_elem(g, loc_monomial::euler(n, k), graded_rational(1));
    }
    static loc_elem y(group_tag g, unsigned i, long n)
    {
        if (i == 0u) throw index_error("Y index i must be at least 1");
        g.check_character(n);
        return loc_elem(g, loc_monomial::y(i, n), graded_rational(1));
    }

    group_tag group() const noexcept
    {
        return group_;
    }
    const term_map &terms() const noexcept
    {
        return terms_;
    }
    bool is_zero() const noexcept
    {
        return terms_.empty();
    }

    void add_term(const loc_monomial &m, const graded_rational &c)
    {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    loc_elem &operator+=(const loc_elem &o)
    {
        check_group(o);
        for (const auto &[m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    loc_elem &operator-=(const loc_elem &o)
    {
        check_group(o);
        for (const auto &[m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend loc_elem operator+(loc_elem a, const loc_elem &b)
    {
        a += b;
        return a;
    }
    friend loc_elem operator-(loc_elem a, const loc_elem &b)
    {
        a -= b;
        return a;
    }
    loc_elem operator-() const
    {
        loc_elem r(*this);
        for (auto &[m, c] : r.terms_) c = -c;
        return r;
    }
    friend loc_elem operator*(const loc_elem &a, const loc_elem &b)
    {
        a.check_group(b);
        loc_elem r(a.group_);
        for (const auto &[ma, ca] : a.terms_) {
            for (const auto &[mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        }
        return r;
    }
    loc_elem &operator*=(const loc_elem &o)
    {
        *this = *this * o;
        return *this;
    }
    loc_elem scaled(const graded_rational &g) const
    {
        loc_elem r(group_);
        for (const auto &[m, c] : terms_) r.add_term(m, c * g);
        return r;
    }
    loc_elem times_monomial(const loc_monomial &mono) const
    {
        loc_elem r(group_);
        for (const auto &[m, c] : terms_) r.add_term(m * mono, c);
        return r;
    }
    loc_elem pow(unsigned k) const
    {
        loc_elem r(group_, graded_rational(1)), b(*this);
        while (k) {
            if (k & 1u) r *= b;
            k >>= 1u;
            if (k) b *= b;
        }
        return r;
    }

    friend bool operator==(const loc_elem &a, const loc_elem &b)
    {
        return a.group_ == b.group_ && a.terms_ == b.terms_;
    }

    // Total degree of each term; every entry must be even.
    std::vector<int> term_degrees() const
    {
        std::vector<int> out;
        for (const auto &[m, c] : terms_) {
            for (const auto &[mm, q] : c.terms()) out.push_back(mm.degree() + m.degree());
        }
        return out;
    }
    bool is_homogeneous() const
    {
        auto d = term_degrees();
        return d.empty() || std::all_of(d.begin(), d.end(), [&](int x) { return x == d.front(); });
    }

    std::string to_string() const
    {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto &[m, c] : terms_) {
            if (!s.empty()) s += " + ";
            const std::string coef = c.size() > 1u ? "(" + c.to_string() + ")" : c.to_string();
            s += m.is_unit() ? coef : m.to_string() + " * " + coef;
        }
        return s;
    }

private:
    void check_group(const loc_elem &o) const
    {
        if (!(group_ == o.group_)) {
            throw group_mismatch("cannot combine elements over " + group_.to_string() + " and " +
                                 o.group_.to_string());
        }
    }

    group_tag group_;
    term_map terms_;
};

inline std::ostream &operator<<(std::ostream &os, const loc_elem &x)
{
    return os << x.to_string();
}

inline bool is_zero(const loc_elem &x)
{
    return x.is_zero();
}

} // namespace mug

#endif
