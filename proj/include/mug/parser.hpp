#ifndef MUG_PARSER_HPP
#define MUG_PARSER_HPP

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <mug/errors.hpp>
#include <mug/expr.hpp>
#include <mug/fgl.hpp>

namespace mug
{

namespace detail
{

// Recursive-descent parser for
//   expr   := term ('+' term)*
//   term   := factor ('*' factor)*
//   factor := 'e(' int ')' | 'P(' int ',' int ')' | 'CP(' nat ')'
//           | 'G(' int ';' expr ')' | 'B(' int ';' expr ')'
//           | rational | '-' factor | '(' expr ')'
class parser
{
public:
    parser(std::string_view src, unsigned D) : s_(src), D_(D) {}

    expr parse_all()
    {
        expr e = parse_expr();
        skip();
        if (p_ != s_.size()) fail("unexpected '" + std::string(1, s_[p_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string &msg) const
    {
        throw parse_error(p_, msg);
    }
    void skip()
    {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
    }
    bool peek(char c)
    {
        skip();
        return p_ < s_.size() && s_[p_] == c;
    }
    bool accept(char c)
    {
        if (peek(c)) {
            ++p_;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    bool accept_word(std::string_view w)
    {
        skip();
        if (s_.substr(p_, w.size()) == w) {
            p_ += w.size();
            return true;
        }
        return false;
    }
    std::string digits()
    {
        skip();
        const std::size_t start = p_;
        while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
        if (p_ == start) fail("expected digits");
        return std::string(s_.substr(start, p_ - start));
    }
    long parse_int()
    {
        const bool neg = accept('-');
        const std::string d = digits();
        if (d.size() > 9u) fail("integer too large");
        const long v = std::stol(d);
        return neg ? -v : v;
    }

    expr parse_expr()
    {
        std::vector<expr> parts{parse_term()};
        while (accept('+')) parts.push_back(parse_term());
        return sum_of(parts);
    }
    expr parse_term()
    {
        std::vector<expr> parts{parse_factor()};
        while (accept('*')) parts.push_back(parse_factor());
        return prod_of(parts);
    }
    expr parse_factor()
    {
        skip();
        if (p_ >= s_.size()) fail("unexpected end of input");
        if (accept('-')) return -parse_factor();
        if (accept('(')) {
            expr e = parse_expr();
            expect(')');
            return e;
        }
        if (accept_word("CP")) {
            expect('(');
            const long n = parse_int();
            if (n < 0) fail("CP(n) needs n >= 0");
            expect(')');
            return scalar(cp_class(static_cast<unsigned>(n), D_));
        }
        const char c = s_[p_];
        if (c == 'e' || c == 'P' || c == 'G' || c == 'B') {
            ++p_;
            expect('(');
            if (c == 'e') {
                const long n = parse_int();
                expect(')');
                return euler(n);
            }
            if (c == 'P') {
                const long i = parse_int();
                expect(',');
                const long n = parse_int();
                expect(')');
                if (i < 1) throw index_error("P(i,n) needs i >= 1");
                return proj(static_cast<unsigned>(i), n);
            }
            const long n = parse_int();
            expect(';');
            expr arg = parse_expr();
            expect(')');
            return c == 'G' ? gamma_of(n, arg) : beta_of(n, arg);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = digits();
            std::string den = "1";
            if (accept('/')) den = digits();
            if (den.find_first_not_of('0') == std::string::npos) fail("zero denominator");
            rational q(num + "/" + den);
            q.canonicalize();
            return scalar(graded_rational(q));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    std::size_t p_ = 0;
    unsigned D_;
};

} // namespace detail

inline expr parse_expr(std::string_view text, unsigned D = default_degree)
{
    return detail::parser(text, D).parse_all();
}

} // namespace mug

#endif
