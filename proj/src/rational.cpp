#include "lazard/rational.hpp"

#include "lazard/errors.hpp"

namespace lazard {

int p_valuation(const Integer& n, long p) {
  if (n == 0) return kInfiniteValuation;
  Integer m = abs(n);
  int v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

int p_valuation(const Rational& q, long p) {
  if (q == 0) return kInfiniteValuation;
  return p_valuation(q.get_num(), p) - p_valuation(q.get_den(), p);
}

bool is_p_integral(const Rational& q, long p) {
  return !mpz_divisible_ui_p(q.get_den_mpz_t(), static_cast<unsigned long>(p));
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer ipow(long base, unsigned exponent) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base < 0 ? -base : base), exponent);
  if (base < 0 && exponent % 2 == 1) r = -r;
  return r;
}

Integer residue_mod_prime_power(const Rational& q, long p, int a) {
  if (!is_p_integral(q, p)) throw PreconditionError("residue of non-p-integral " + to_string(q));
  Integer modulus = ipow(p, static_cast<unsigned>(a));
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), q.get_den_mpz_t(), modulus.get_mpz_t()) == 0) {
    if (modulus == 1) return 0;
    throw ConsistencyError("denominator not invertible modulo prime power");
  }
  Integer r = q.get_num() * inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  Rational q;
  if (text.empty() || q.set_str(std::string(text), 10) != 0) {
    throw ParseError("invalid rational '" + std::string(text) + "'", 0);
  }
  if (q.get_den() == 0) throw ParseError("zero denominator", 0);
  q.canonicalize();
  return q;
}

}  // namespace lazard
