#pragma once

#include <string_view>

#include "lazard/ideal.hpp"
#include "lazard/polynomial.hpp"

namespace lazard {

// Grammar: terms "coeff*gen^k*..." joined by + or -. Coefficients are integers or
// fractions "a/b". In rings with a prime, the identifier p denotes that prime.
Poly parse_poly(std::string_view text, const RingPtr& ring);

// Comma-separated monomials such as "p^2, p*v1^3, v2"; integers stand for the
// power of p they generate. "0" or an empty string is the zero ideal.
MonomialIdeal parse_ideal(std::string_view text, const RingPtr& ring);

}  // namespace lazard
