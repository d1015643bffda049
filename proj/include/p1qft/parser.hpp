#pragma once

#include <string_view>

#include "p1qft/fock.hpp"
#include "p1qft/function_field.hpp"
#include "p1qft/model.hpp"

namespace p1qft {

/// Rational expression in z built from numbers, `z`, + - * / ^int and
/// parentheses; numerator and denominator are factored over Q.
/// ParseError on bad syntax, DomainError on an irreducible nonlinear factor.
RationalFunction parse_rational_function(std::string_view text);

/// `inf` or a rational / decimal coordinate.
Point parse_point(std::string_view text);

/// `(1)-(0)`, `2*(1)-(inf)-(0)`, `0`.
Divisor parse_divisor(std::string_view text);

/// Sums of terms `c*e[D]*v[P,n]*...`; a term without `e[...]` has charge 0.
ChargedFockVector parse_charged_vector(std::string_view text);
/// As above; charges are rejected.
FockVector parse_fock_vector(std::string_view text);
/// Sums of `c*u[P,n]*...`.
DualVector parse_dual_vector(std::string_view text);

/// `c*f[P,Q]^k*f[R,S]/f[A,B]`.
PrimeProduct parse_prime_product(std::string_view text);

}  // namespace p1qft
