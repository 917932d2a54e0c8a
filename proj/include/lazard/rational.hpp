#pragma once

#include <gmpxx.h>

#include <climits>
#include <string>
#include <string_view>

namespace lazard {

using Integer = mpz_class;
using Rational = mpq_class;

inline constexpr int kInfiniteValuation = INT_MAX;

// p-adic valuation; kInfiniteValuation for zero.
int p_valuation(const Integer& n, long p);
int p_valuation(const Rational& q, long p);

bool is_p_integral(const Rational& q, long p);
bool is_integer(const Rational& q);

Integer ipow(long base, unsigned exponent);

// Canonical representative of a p-integral q modulo p^a, in [0, p^a).
Integer residue_mod_prime_power(const Rational& q, long p, int a);

std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

}  // namespace lazard
