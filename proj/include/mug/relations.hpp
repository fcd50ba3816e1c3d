#ifndef MUG_RELATIONS_HPP
#define MUG_RELATIONS_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <mug/errors.hpp>
#include <mug/expr.hpp>
#include <mug/fgl.hpp>
#include <mug/normal_form.hpp>

namespace mug
{

struct random_expr_config {
    unsigned depth = 3;
    long max_index = 3;
    unsigned max_i = 2;
};

namespace detail
{

inline long random_index(std::mt19937_64 &rng, long max_index)
{
    std::uniform_int_distribution<long> pick(1, max_index);
    const long n = pick(rng);
    return std::bernoulli_distribution(0.5)(rng) ? n : -n;
}

inline expr random_leaf(std::mt19937_64 &rng, const random_expr_config &cfg)
{
    switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0:
    case 1:
        return euler(random_index(rng, cfg.max_index));
    case 2:
        return proj(std::uniform_int_distribution<unsigned>(1u, cfg.max_i)(rng), random_index(rng, cfg.max_index));
    default:
        if (std::bernoulli_distribution(0.5)(rng)) return scalar(cp_class(1));
        return scalar(graded_rational(rational(std::uniform_int_distribution<long>(1, 3)(rng))));
    }
}

} // namespace detail

// Tree of depth at most cfg.depth over e(n), P(i,n), small scalars, sums,
// products, G and B.
inline expr random_expr(std::mt19937_64 &rng, const random_expr_config &cfg, unsigned depth)
{
    if (depth == 0u) return detail::random_leaf(rng, cfg);
    const unsigned below = depth - 1u;
    switch (std::uniform_int_distribution<int>(0, 9)(rng)) {
    case 0:
    case 1:
        return detail::random_leaf(rng, cfg);
    case 2:
    case 3:
        return random_expr(rng, cfg, below) + random_expr(rng, cfg, below);
    case 4:
    case 5:
        return random_expr(rng, cfg, below) * random_expr(rng, cfg, below);
    case 6:
    case 7:
    case 8:
        return gamma_of(detail::random_index(rng, cfg.max_index), random_expr(rng, cfg, below));
    default:
        return beta_of(detail::random_index(rng, cfg.max_index), random_expr(rng, cfg, below));
    }
}

// Expressions whose evaluation leaves the regular subring are redrawn;
// `rejected` counts the redraws.
struct random_corpus {
    std::vector<expr> items;
    std::vector<std::uint64_t> seeds;
    std::size_t rejected = 0;
};

inline random_corpus make_random_corpus(std::uint64_t seed, std::size_t count, const random_expr_config &cfg = {})
{
    random_corpus out;
    std::mt19937_64 master(seed);
    while (out.items.size() < count) {
        const std::uint64_t sub = master();
        std::mt19937_64 rng(sub);
        expr x = random_expr(rng, cfg, cfg.depth);
        try {
            (void)eval_loc(x);
        } catch (const splitting_violation &) {
            ++out.rejected;
            continue;
        }
        out.items.push_back(std::move(x));
        out.seeds.push_back(sub);
    }
    return out;
}

struct relation_sample {
    expr x, y;
    long v = 1, w = 1;
};

inline relation_sample draw_relation_sample(std::uint64_t sub_seed, const random_expr_config &cfg = {})
{
    std::mt19937_64 rng(sub_seed);
    relation_sample s;
    s.x = random_expr(rng, cfg, cfg.depth);
    s.y = random_expr(rng, cfg, cfg.depth);
    s.v = detail::random_index(rng, cfg.max_index);
    s.w = detail::random_index(rng, cfg.max_index);
    return s;
}

struct relation_failure {
    int relation = 0;
    std::uint64_t seed = 0;
    std::string detail;
};

struct relation_report {
    std::size_t checked = 0;
    std::size_t rejected = 0;
    std::vector<relation_failure> failures;

    bool ok() const noexcept
    {
        return failures.empty();
    }
};

// Both sides of one relation instance, already multiplied through by the
// Euler classes that make them regular.
struct relation_sides {
    expr lhs, rhs;
};

// e_V G_V(x) = x - B_V(x), times e_V.
inline relation_sides relation1(long v, const expr &x)
{
    const expr ev = euler(v);
    return {ev * ev * gamma_of(v, x), ev * (x - beta_of(v, x))};
}

// G_V(B_V(x)) = 0, times e_V.
inline relation_sides relation2(long v, const expr &x)
{
    return {euler(v) * gamma_of(v, beta_of(v, x)), scalar(graded_rational{})};
}

// G_V(e_V) = 1, times e_V.
inline relation_sides relation3(long v)
{
    return {euler(v) * gamma_of(v, euler(v)), euler(v)};
}

// G_V(xy) = G_V(x) y + B_V(x) G_V(y) + G_V(B_V(x) B_V(y)), times e_V.
inline relation_sides relation4(long v, const expr &x, const expr &y)
{
    const expr ev = euler(v);
    const expr rhs = gamma_of(v, x) * y + beta_of(v, x) * gamma_of(v, y) + gamma_of(v, beta_of(v, x) * beta_of(v, y));
    return {ev * gamma_of(v, x * y), ev * rhs};
}

// G_V G_W x = G_W G_V x - G_W G_V B_W x - G_W G_V(e_W B_V(G_W x)),
// times e_V e_W.
inline relation_sides relation5(long v, long w, const expr &x)
{
    const expr k = euler(v) * euler(w);
    auto gwgv = [&](const expr &z) { return gamma_of(w, gamma_of(v, z)); };
    const expr rhs = gwgv(x) - gwgv(beta_of(w, x)) - gwgv(euler(w) * beta_of(v, gamma_of(w, x)));
    return {k * gamma_of(v, gamma_of(w, x)), k * rhs};
}

// A variant of the composition relation that holds for some sections only:
// G_V G_W x = G_W G_V x + G_W G_V B_W(x) - G_W G_V(e_W) B_V(G_W x)
//             - G_W G_V(B_V(e_W) B_V(G_W x)), times e_V e_W.
inline relation_sides relation5_variant(long v, long w, const expr &x)
{
    const expr k = euler(v) * euler(w);
    auto gwgv = [&](const expr &z) { return gamma_of(w, gamma_of(v, z)); };
    const expr bvgw = beta_of(v, gamma_of(w, x));
    const expr rhs = gwgv(x) + gwgv(beta_of(w, x)) - gwgv(euler(w)) * bvgw - gwgv(beta_of(v, euler(w)) * bvgw);
    return {k * gamma_of(v, gamma_of(w, x)), k * rhs};
}

inline bool holds(const relation_sides &r, evaluator &ev)
{
    return ev.eval(r.lhs) == ev.eval(r.rhs);
}

inline bool holds(const relation_sides &r)
{
    evaluator ev;
    return holds(r, ev);
}

inline relation_report check_relations(std::uint64_t seed, std::size_t count, const random_expr_config &cfg = {})
{
    relation_report rep;
    std::mt19937_64 master(seed);
    while (rep.checked < count) {
        const std::uint64_t sub = master();
        const relation_sample s = draw_relation_sample(sub, cfg);
        const relation_sides inst[] = {relation1(s.v, s.x), relation2(s.v, s.x), relation3(s.v),
                                       relation4(s.v, s.x, s.y), relation5(s.v, s.w, s.x)};
        std::vector<relation_failure> found;
        try {
            evaluator ev;
            for (int r = 0; r < 5; ++r) {
                if (!(ev.eval(inst[r].lhs) == ev.eval(inst[r].rhs))) {
                    found.push_back({r + 1, sub, to_text(inst[r].lhs) + " != " + to_text(inst[r].rhs)});
                }
            }
        } catch (const splitting_violation &) {
            ++rep.rejected;
            continue;
        }
        ++rep.checked;
        rep.failures.insert(rep.failures.end(), found.begin(), found.end());
    }
    return rep;
}

} // namespace mug

#endif
