#ifndef MUG_MUG_HPP
#define MUG_MUG_HPP

#include <mug/mu_coefficients.hpp>
#include <mug/localized_ring.hpp>
#include <mug/normal_form.hpp>
#include <mug/relations.hpp>
#include <mug/completion.hpp>
#include <mug/applications.hpp>
#include <mug/parser.hpp>

#endif
