#ifndef MUG_GENUS_HPP
#define MUG_GENUS_HPP

#include <string>
#include <utility>
#include <vector>

#include <mug/errors.hpp>
#include <mug/graded_rational.hpp>
#include <mug/series.hpp>

namespace mug
{

// A ring map MU_* (x) Q -> E, given by the images of m_1, ..., m_k.
// Targets are represented inside Q[m1, m2, ...]; a Q-valued genus maps
// every m_i to a rational.
struct genus {
    std::string name;
    std::vector<graded_rational> images;
    bool strongly_multiplicative = false;
};

// Todd genus: m_n -> 1/(n+1), so Td(CP^n) = 1.
inline genus todd_genus(unsigned D)
{
    genus g{"todd", {}, true};
    for (unsigned n = 1; n <= D; ++n) g.images.emplace_back(make_rational(1, static_cast<long>(n) + 1));
    return g;
}

// Augmentation: every m_i -> 0.
inline genus augmentation_genus(unsigned D)
{
    genus g{"augmentation", {}, true};
    g.images.assign(D, graded_rational{});
    return g;
}

inline graded_rational genus_eval(const genus &g, const graded_rational &v)
{
    graded_rational out;
    for (const auto &[m, c] : v.terms()) {
        graded_rational t(c);
        for (unsigned i = 1; i <= m.max_index(); ++i) {
            const unsigned e = m.exponent(i);
            if (e == 0u) continue;
            if (i > g.images.size()) {
                throw undefined_genus("genus '" + g.name + "' has no image for m" + std::to_string(i));
            }
            t *= g.images[i - 1u].pow(e);
        }
        out += t;
    }
    return out;
}

inline formal_series genus_eval(const genus &g, const formal_series &f)
{
    formal_series r(f.truncation());
    for (unsigned j = 0; j <= f.truncation(); ++j) r[j] = genus_eval(g, f[j]);
    return r;
}

} // namespace mug

#endif
