#ifndef MUG_MU_COEFFICIENTS_HPP
#define MUG_MU_COEFFICIENTS_HPP

#include <mug/fgl.hpp>
#include <mug/genus.hpp>
#include <mug/graded_rational.hpp>
#include <mug/series.hpp>

#endif
