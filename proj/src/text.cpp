#include "lazard/text.hpp"

#include <cctype>
#include <string>

#include "lazard/errors.hpp"

namespace lazard {

namespace {

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip();
    return pos_ >= s_.size();
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(s_.substr(start, pos_ - start));
  }
  int integer() {
    bool neg = accept('-');
    std::string d = number();
    if (d.size() > 6) fail("exponent too large");
    int v = std::stoi(d);
    return neg ? -v : v;
  }
  std::string identifier() {
    skip();
    std::size_t start = pos_;
    if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\'')) {
        ++pos_;
      }
    }
    if (start == pos_) fail("expected an identifier");
    return std::string(s_.substr(start, pos_ - start));
  }
  bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }
  bool at_alpha() { return std::isalpha(static_cast<unsigned char>(peek())) != 0; }
  [[noreturn]] void fail(const std::string& what) { throw ParseError(what, pos_); }
  std::size_t pos() const { return pos_; }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

unsigned exponent_of(Lexer& lx) {
  if (!lx.accept('^')) return 1;
  int e = lx.integer();
  if (e < 0 || e > 255) lx.fail("exponent out of range");
  return static_cast<unsigned>(e);
}

Poly parse_term(Lexer& lx, const RingPtr& ring) {
  Rational coeff = 1;
  Monomial mono;
  do {
    if (lx.at_digit()) {
      Integer num(lx.number());
      Integer den = 1;
      if (lx.accept('/')) {
        den = Integer(lx.number());
        if (den == 0) lx.fail("zero denominator");
      } else {
        mpz_pow_ui(num.get_mpz_t(), num.get_mpz_t(), exponent_of(lx));
      }
      Rational q(num, den);
      q.canonicalize();
      coeff *= q;
    } else if (lx.at_alpha()) {
      std::size_t where = lx.pos();
      std::string name = lx.identifier();
      if (auto idx = ring->index_of(name)) {
        unsigned e = exponent_of(lx);
        unsigned s = mono.exp[*idx] + e;
        if (s > 255) lx.fail("exponent out of range");
        mono.exp[*idx] = static_cast<std::uint8_t>(s);
      } else if (ring->laurent() && name == *ring->laurent()) {
        int e = lx.accept('^') ? lx.integer() : 1;
        mono.t += e;
      } else if (name == "p" && ring->prime()) {
        coeff *= Rational(ipow(*ring->prime(), exponent_of(lx)));
      } else {
        throw ParseError("unknown generator '" + name + "'", where);
      }
    } else if (lx.accept('(')) {
      lx.fail("parentheses are not part of the grammar");
    } else {
      lx.fail("expected a factor");
    }
  } while (lx.accept('*'));
  return Poly::monomial(ring, mono, coeff);
}

}  // namespace

Poly parse_poly(std::string_view text, const RingPtr& ring) {
  Lexer lx(text);
  Poly result(ring);
  if (lx.done()) throw ParseError("empty polynomial", 0);
  bool first = true;
  while (!lx.done()) {
    bool negative = false;
    if (lx.accept('-')) {
      negative = true;
    } else if (!lx.accept('+') && !first) {
      lx.fail("expected '+' or '-'");
    }
    Poly t = parse_term(lx, ring);
    result += negative ? -t : t;
    first = false;
  }
  return result;
}

MonomialIdeal parse_ideal(std::string_view text, const RingPtr& ring) {
  if (!ring->prime()) throw ShapeError("ideals need a ring with a prime");
  const long p = *ring->prime();
  Lexer lx(text);
  std::vector<IdealGenerator> gens;
  if (lx.done()) return MonomialIdeal::zero(ring);
  if (lx.peek() == '0') {
    std::size_t where = lx.pos();
    if (lx.number() == "0" && lx.done()) return MonomialIdeal::zero(ring);
    throw ParseError("malformed ideal", where);
  }
  do {
    IdealGenerator g{0, std::vector<int>(ring->size(), 0)};
    do {
      if (lx.at_digit()) {
        std::size_t where = lx.pos();
        Integer n(lx.number());
        if (n == 0) throw ParseError("zero generator", where);
        // The p-prime part of n is a unit in Z_(p).
        g.p_exp += p_valuation(n, p) * static_cast<int>(exponent_of(lx));
      } else {
        std::size_t where = lx.pos();
        std::string name = lx.identifier();
        if (auto idx = ring->index_of(name)) {
          g.v_exps[*idx] += static_cast<int>(exponent_of(lx));
        } else if (name == "p") {
          g.p_exp += static_cast<int>(exponent_of(lx));
        } else {
          throw ParseError("unknown generator '" + name + "'", where);
        }
      }
    } while (lx.accept('*'));
    gens.push_back(std::move(g));
  } while (lx.accept(','));
  if (!lx.done()) lx.fail("trailing input");
  return MonomialIdeal(ring, std::move(gens));
}

}  // namespace lazard
