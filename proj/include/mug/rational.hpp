#ifndef MUG_RATIONAL_HPP
#define MUG_RATIONAL_HPP

#include <string>

#include <gmpxx.h>

namespace mug
{

using rational = mpq_class;
using integer = mpz_class;

inline rational make_rational(long num, long den = 1)
{
    rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const rational &q)
{
    return q.get_str();
}

// Largest integer not exceeding q.
inline integer floor(const rational &q)
{
    integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

} // namespace mug

#endif
