#ifndef MUG_APPLICATIONS_HPP
#define MUG_APPLICATIONS_HPP

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <mug/completion.hpp>
#include <mug/errors.hpp>
#include <mug/expr.hpp>
#include <mug/fgl.hpp>
#include <mug/genus.hpp>
#include <mug/loc_elem.hpp>
#include <mug/localized_ring.hpp>

namespace mug
{

// Tangent weights at each isolated fixed point.
struct fixed_point_data {
    std::vector<std::vector<long>> points;
};

// One fixed point per line or per ';'-separated entry, weights separated by
// commas. Blank entries are skipped.
inline fixed_point_data parse_fixed_point_data(std::string_view text)
{
    fixed_point_data out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find_first_of(";\n", pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view entry = text.substr(pos, end - pos);
        std::vector<long> weights;
        std::size_t k = 0;
        bool any = false;
        while (k < entry.size()) {
            while (k < entry.size() && std::isspace(static_cast<unsigned char>(entry[k]))) ++k;
            if (k == entry.size()) break;
            const std::size_t start = k;
            if (entry[k] == '+' || entry[k] == '-') ++k;
            const std::size_t digits = k;
            while (k < entry.size() && std::isdigit(static_cast<unsigned char>(entry[k]))) ++k;
            if (k == digits) throw parse_error(pos + start, "expected an integer weight");
            weights.push_back(std::stol(std::string(entry.substr(start, k - start))));
            any = true;
            while (k < entry.size() && std::isspace(static_cast<unsigned char>(entry[k]))) ++k;
            if (k < entry.size()) {
                if (entry[k] != ',') throw parse_error(pos + k, "expected ',' between weights");
                ++k;
                const std::size_t after = entry.find_first_not_of(" \t\r", k);
                if (after == std::string_view::npos) throw parse_error(pos + k, "dangling ','");
            }
        }
        if (any) out.points.push_back(std::move(weights));
        pos = end + 1;
    }
    if (out.points.empty()) throw parse_error(0, "no fixed points given");
    return out;
}

inline std::string to_string(const fixed_point_data &d)
{
    std::string s;
    for (const auto &p : d.points) {
        if (!s.empty()) s += "; ";
        for (std::size_t k = 0; k < p.size(); ++k) s += (k ? "," : "") + std::to_string(p[k]);
    }
    return s;
}

namespace detail
{

inline void require_nonzero_weights(const fixed_point_data &d)
{
    for (const auto &p : d.points) {
        for (long w : p) {
            if (w == 0) throw invariant_error("fixed point weights must be nonzero: " + to_string(d));
        }
    }
}

inline std::vector<long> sorted(std::vector<long> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace detail

// Image in the Laurent model: sum over fixed points of prod e_w^{-1}.
inline loc_elem fixed_point_lambda(const fixed_point_data &d)
{
    detail::require_nonzero_weights(d);
    loc_elem r(group_tag::circle());
    for (const auto &p : d.points) {
        loc_monomial m;
        for (long w : p) m = m * loc_monomial::euler(w, -1);
        r.add_term(m, graded_rational(1));
    }
    return r;
}

// Fixed points of P(1 + rho^a + rho^b): the characters are {0, a, b} and
// the weights at each one are the differences to the other two.
inline fixed_point_data projective_plane_fixed_points(long a, long b)
{
    if (a == 0 || b == 0 || a == b) throw invalid_argument("P(1 + rho^a + rho^b) needs distinct nonzero a, b");
    return {{{a, b}, {-a, b - a}, {-b, a - b}}};
}

struct classification_step {
    std::string id;
    bool passed = false;
    std::string detail;
};

struct classification_verdict {
    bool realizable = false;
    long a = 0, b = 0;
    std::string failed_constraint;
    std::vector<classification_step> trace;
    bool recheck_passed = false;

    std::string headline() const
    {
        if (realizable) return "REALIZABLE " + std::to_string(a) + " " + std::to_string(b);
        return "NOT_REALIZABLE " + failed_constraint;
    }
    std::string to_string() const
    {
        std::string s = headline() + "\ntrace:\n";
        for (const auto &st : trace) {
            s += "  " + st.id + (st.passed ? " ok" : " FAIL") + (st.detail.empty() ? "" : ": " + st.detail) + "\n";
        }
        if (realizable) s += std::string("  RECHECK ") + (recheck_passed ? "ok" : "FAIL") + "\n";
        return s;
    }
};

namespace detail
{

inline expr euler_product(std::initializer_list<long> ws)
{
    std::vector<expr> f;
    for (long w : ws) f.push_back(euler(w));
    return prod_of(f);
}

// Zero test over Z/|a| of an R0 expression.
inline bool vanishes_mod(const expr &x, long a)
{
    return euler_divisibility(x, a);
}

// The canonical pair for the character set {0, a, b}: shift so the
// smallest character is 0 and list the other two in increasing order.
inline std::pair<long, long> canonical_pair(long a, long b)
{
    long c[3] = {0, a, b};
    std::sort(c, c + 3);
    return {c[1] - c[0], c[2] - c[0]};
}

struct branch_result {
    std::vector<classification_step> trace;
    bool closed = false;
    long a = 0, b = 0;
};

// One branch of the deduction chain: point p carries the maximal weight a
// in slot s.
inline branch_result run_branch(const fixed_point_data &d, std::size_t p, std::size_t s, std::size_t q, std::size_t t)
{
    branch_result br;
    const long a = d.points[p][s], b = d.points[p][1 - s];
    std::size_t r = 3 - p - q;
    const long c = d.points[q][t], dd = d.points[q][1 - t];
    const long f = d.points[r][0], g = d.points[r][1];
    auto step = [&](std::string id, bool ok, std::string detail) {
        br.trace.push_back({std::move(id), ok, std::move(detail)});
        return ok;
    };
    const std::string ab = "(a,b) = (" + std::to_string(a) + "," + std::to_string(b) + ")";

    const expr T = euler_product({c, dd, f, g}) + euler_product({a, b, f, g}) + euler_product({a, b, c, dd});
    if (!step("DIV_EA", vanishes_mod(T, a), ab + ", T restricted to Z/" + std::to_string(std::labs(a)))) return br;
    if (!step("C_EQ_NEG_A", c == -a, "c = " + std::to_string(c) + ", need " + std::to_string(-a))) return br;
    const bool cong = vanishes_mod(euler(b) - euler(dd), a) || (b - dd) % a == 0;
    if (!step("B_CONG_D_MOD_A", cong, "b = " + std::to_string(b) + ", d = " + std::to_string(dd) + " mod " +
                                          std::to_string(std::labs(a)))) {
        return br;
    }
    if (!step("D_EQ_B_MINUS_A", dd == b - a, "d = " + std::to_string(dd) + ", b - a = " + std::to_string(b - a))) {
        return br;
    }
    // e_f^{-1} e_g^{-1} - e_{a-b}^{-1} e_{-b}^{-1} must vanish.
    loc_elem diff(group_tag::circle());
    diff.add_term(loc_monomial::euler(f, -1) * loc_monomial::euler(g, -1), graded_rational(1));
    diff.add_term(loc_monomial::euler(a - b, -1) * loc_monomial::euler(-b, -1), graded_rational(-1));
    if (!step("FINAL_DIFFERENCE", diff.is_zero(), "(f,g) = (" + std::to_string(f) + "," + std::to_string(g) + ")")) {
        return br;
    }
    br.closed = true;
    br.a = a;
    br.b = b;
    return br;
}

} // namespace detail

// Decide whether three isolated fixed points of a 4-dimensional S^1
// manifold carry the data of some P(1 + rho^a + rho^b). Every weight of
// maximal absolute value is tried as a, with every occurrence of -a in
// another fixed point as c; the first branch that closes wins. A failed
// verdict reports the constraint at which the deepest branch stopped.
inline classification_verdict classify_three_fixed_points(const fixed_point_data &d)
{
    if (d.points.size() != 3u) {
        throw arity_error("three fixed points expected, got " + std::to_string(d.points.size()));
    }
    for (const auto &p : d.points) {
        if (p.size() != 2u) throw arity_error("each fixed point needs two weights in real dimension 4");
    }
    detail::require_nonzero_weights(d);

    long top = 0;
    for (const auto &p : d.points) {
        for (long w : p) top = std::max(top, std::labs(w));
    }
    classification_verdict v;
    std::optional<detail::branch_result> deepest;
    for (std::size_t p = 0; p < 3u; ++p) {
        for (std::size_t s = 0; s < 2u; ++s) {
            if (std::labs(d.points[p][s]) != top) continue;
            for (std::size_t q = 0; q < 3u; ++q) {
                if (q == p) continue;
                for (std::size_t t = 0; t < 2u; ++t) {
                    auto br = detail::run_branch(d, p, s, q, t);
                    if (br.closed) {
                        const auto [ca, cb] = detail::canonical_pair(br.a, br.b);
                        v.realizable = true;
                        v.a = ca;
                        v.b = cb;
                        v.trace = std::move(br.trace);
                        const loc_elem mine = fixed_point_lambda(projective_plane_fixed_points(ca, cb));
                        v.recheck_passed = mine == fixed_point_lambda(d);
                        return v;
                    }
                    if (!deepest || br.trace.size() > deepest->trace.size()) deepest = std::move(br);
                }
            }
        }
    }
    v.trace = deepest->trace;
    v.failed_constraint = v.trace.back().id;
    return v;
}

// Two fixed points: the tangent representations must be dual.
inline bool check_two_fixed_points(const fixed_point_data &d)
{
    if (d.points.size() != 2u) {
        throw arity_error("two fixed points expected, got " + std::to_string(d.points.size()));
    }
    detail::require_nonzero_weights(d);
    std::vector<long> neg;
    for (long w : d.points[0]) neg.push_back(-w);
    return detail::sorted(neg) == detail::sorted(d.points[1]);
}

// Coefficients a_0..a_{k-1} of Q(x)^k modulo ([n]_F x), with Q a quotient
// of x by [m]_F x.
inline std::vector<graded_rational> sphere_basis_change(long m, long n, unsigned k, unsigned D = default_degree)
{
    if (k == 0u) throw invalid_argument("sphere_basis_change needs k >= 1");
    const formal_series Q = quotient_mod_n_series(m, n, D);
    const formal_series residual =
        reduce_mod_n_series(Q * n_series(m, D) - formal_series::variable(D), n);
    for (unsigned j = 0; j <= D; ++j) {
        if (!residual[j].is_zero()) throw consistency_error("Q [m]x - x does not reduce to zero");
    }
    const formal_series Qk = reduce_mod_n_series(Q.pow(k), n);
    std::vector<graded_rational> a;
    for (unsigned j = 0; j < k; ++j) a.push_back(j <= Qk.truncation() ? Qk[j] : graded_rational{});
    return a;
}

enum class rigidity { rigid, not_rigid, indeterminate };

inline std::string to_string(rigidity r)
{
    switch (r) {
    case rigidity::rigid:
        return "true";
    case rigidity::not_rigid:
        return "false";
    case rigidity::indeterminate:
        return "indeterminate";
    }
    return {};
}

struct rigidity_result {
    rigidity verdict = rigidity::indeterminate;
    graded_rational value;                 // genus of the constant term
    std::vector<unsigned> verified;        // powers of x checked to vanish
    std::vector<unsigned> unknown;         // powers left undecided
    std::optional<unsigned> witness;       // first power with a nonzero genus
};

// The genus applied termwise to the completion must be the constant
// eps([alpha(M)]) for a geometric class M.
inline rigidity_result rigidity_check(const genus &g, const expr &x, unsigned D = default_degree)
{
    if (!g.strongly_multiplicative) {
        throw precondition_error("rigidity needs a strongly multiplicative genus; '" + g.name + "' is not");
    }
    if (!is_geometric(x)) {
        throw precondition_error("rigidity applies to geometric classes (P(i,n), scalars, sums, products): " +
                                 to_text(x));
    }
    const completion_image c = complete(x, D);
    rigidity_result out;
    if (c.tainted(0)) throw consistency_error("constant term of a completion must be known");
    out.value = genus_eval(g, c.series()[0]);

    // A genus killing every m_i kills each positive-degree coefficient,
    // known or not.
    const bool kills_positive = std::all_of(g.images.begin(), g.images.end(),
                                            [](const graded_rational &v) { return v.is_zero(); });
    std::optional<int> total;
    for (unsigned j = 0; j <= c.truncation(); ++j) {
        const graded_rational &v = c.series()[j];
        if (!c.tainted(j) && !v.is_zero() && v.is_homogeneous()) {
            total = v.max_degree() - 2 * static_cast<int>(j);
            break;
        }
    }
    for (unsigned j = 1; j <= c.truncation(); ++j) {
        if (c.tainted(j)) {
            const bool positive = total && *total + 2 * static_cast<int>(j) > 0;
            if (kills_positive && positive) {
                out.verified.push_back(j);
            } else {
                out.unknown.push_back(j);
            }
            continue;
        }
        if (genus_eval(g, c.series()[j]).is_zero()) {
            out.verified.push_back(j);
        } else if (!out.witness) {
            out.witness = j;
        }
    }
    if (out.witness) {
        out.verdict = rigidity::not_rigid;
    } else if (out.verified.empty() && !out.unknown.empty()) {
        out.verdict = rigidity::indeterminate;
    } else {
        out.verdict = rigidity::rigid;
    }
    return out;
}

} // namespace mug

#endif
