#include "p1qft/parser.hpp"

#include <cctype>
#include <string>

#include "p1qft/errors.hpp"

namespace p1qft {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool eat(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  bool eat_word(std::string_view w) {
    skip_ws();
    if (s_.substr(pos_, w.size()) != w) return false;
    pos_ += w.size();
    return true;
  }
  bool starts_number() {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  }
  /// Unsigned integer or decimal literal.
  Rat number() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (start == pos_) fail("expected a number");
    try {
      return Rat::parse(s_.substr(start, pos_ - start));
    } catch (const Error&) {
      pos_ = start;
      fail("malformed number");
    }
  }
  long integer() {
    const bool neg = eat('-');
    if (!neg) eat('+');
    const std::size_t start = pos_;
    const Rat r = number();
    if (!r.is_integer() || !r.numerator().fits_slong_p()) {
      pos_ = start;
      fail("expected an integer");
    }
    const long v = r.numerator().get_si();
    return neg ? -v : v;
  }
  /// Text up to (not including) any of the stop characters, parsed as a point.
  Point point(std::string_view stops) {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && stops.find(s_[pos_]) == std::string_view::npos) ++pos_;
    try {
      return Point::parse(s_.substr(start, pos_ - start));
    } catch (const Error&) {
      pos_ = start;
      fail("malformed point");
    }
  }
  void finish() {
    if (!at_end()) fail("unexpected trailing input");
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------- rational functions

using Poly = std::vector<Rat>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

Poly poly_add(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

/// Numerator and denominator polynomials of a factored function.
std::pair<Poly, Poly> to_polys(const RationalFunction& f) {
  Poly num{f.scale()}, den{Rat(1)};
  for (const auto& [r, m] : f.factors()) {
    const Poly lin{-r, Rat(1)};
    for (long i = 0; i < (m < 0 ? -m : m); ++i) {
      if (m > 0) {
        num = poly_mul(num, lin);
      } else {
        den = poly_mul(den, lin);
      }
    }
  }
  return {num, den};
}

RationalFunction add(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const auto [na, da] = to_polys(a);
  const auto [nb, db] = to_polys(b);
  const Poly num = poly_add(poly_mul(na, db), poly_mul(nb, da));
  const RationalFunction n = RationalFunction::from_polynomial(num);
  if (n.is_zero()) return n;
  return n / RationalFunction::from_polynomial(poly_mul(da, db));
}

RationalFunction rf_expr(Cursor& c);

RationalFunction rf_atom(Cursor& c) {
  if (c.eat('(')) {
    RationalFunction f = rf_expr(c);
    c.expect(')');
    return f;
  }
  if (c.eat('z')) return RationalFunction::z();
  if (c.starts_number()) return RationalFunction(c.number());
  c.fail("expected a number, 'z' or '('");
}

RationalFunction rf_power(Cursor& c) {
  RationalFunction f = rf_atom(c);
  if (c.eat('^')) {
    const long e = c.integer();
    if (f.is_zero() && e < 0) c.fail("negative power of zero");
    f = f.pow(e);
  }
  return f;
}

RationalFunction rf_term(Cursor& c) {
  RationalFunction f = rf_power(c);
  for (;;) {
    if (c.eat('*')) {
      f *= rf_power(c);
    } else if (c.eat('/')) {
      RationalFunction g = rf_power(c);
      if (g.is_zero()) c.fail("division by zero");
      f /= g;
    } else {
      return f;
    }
  }
}

RationalFunction rf_expr(Cursor& c) {
  RationalFunction f;
  bool neg = c.eat('-');
  if (!neg) c.eat('+');
  f = rf_term(c);
  if (neg) f *= RationalFunction(Rat(-1));
  for (;;) {
    if (c.eat('+')) {
      f = add(f, rf_term(c));
    } else if (c.eat('-')) {
      f = add(f, RationalFunction(Rat(-1)) * rf_term(c));
    } else {
      return f;
    }
  }
}

// ---------------------------------------------------------------- divisors

Divisor divisor_body(Cursor& c, char close) {
  Divisor d;
  if (c.peek() == '0') {
    c.number();
    if (c.peek() != close) c.fail("expected '" + std::string(1, close) + "' after 0");
    return d;
  }
  bool first = true;
  while (first || c.peek() == '+' || c.peek() == '-') {
    long sign = 1;
    if (c.eat('-')) {
      sign = -1;
    } else if (!c.eat('+') && !first) {
      c.fail("expected '+' or '-'");
    }
    first = false;
    long mult = 1;
    if (c.starts_number()) {
      mult = c.integer();
      c.expect('*');
    }
    c.expect('(');
    const Point p = c.point(")");
    c.expect(')');
    d += Divisor::point(p, sign * mult);
  }
  return d;
}

// ---------------------------------------------------------------- Fock vectors

struct Term {
  Rat coef{1};
  Divisor charge;
  std::vector<Generator> gens;
  bool charged = false;
};

Generator generator(Cursor& c) {
  c.expect('[');
  const Point p = c.point(",");
  c.expect(',');
  const long n = c.integer();
  c.expect(']');
  if (n < 1) c.fail("generator index must be positive");
  return {p, static_cast<int>(n)};
}

void term_factor(Cursor& c, Term& t, char gen_letter, bool divide) {
  if (c.starts_number()) {
    const Rat r = c.number();
    if (divide) {
      if (r.is_zero()) c.fail("division by zero");
      t.coef /= r;
    } else {
      t.coef *= r;
    }
    return;
  }
  if (divide) c.fail("only numbers may divide a term");
  if (c.peek() == gen_letter) {
    c.eat(gen_letter);
    const Generator g = generator(c);
    long k = 1;
    if (c.eat('^')) {
      k = c.integer();
      if (k < 0) c.fail("negative power of a generator");
    }
    for (long i = 0; i < k; ++i) t.gens.push_back(g);
    return;
  }
  if (c.eat('e')) {
    c.expect('[');
    t.charge += divisor_body(c, ']');
    c.expect(']');
    t.charged = true;
    return;
  }
  c.fail(std::string("expected a number, '") + gen_letter + "[P,n]' or 'e[D]'");
}

std::vector<Term> vector_terms(std::string_view text, char gen_letter) {
  Cursor c(text);
  std::vector<Term> terms;
  bool first = true;
  while (first || !c.at_end()) {
    Term t;
    if (c.eat('-')) {
      t.coef = Rat(-1);
    } else if (!c.eat('+') && !first) {
      c.fail("expected '+' or '-'");
    }
    first = false;
    term_factor(c, t, gen_letter, false);
    for (;;) {
      if (c.eat('*')) {
        term_factor(c, t, gen_letter, false);
      } else if (c.eat('/')) {
        term_factor(c, t, gen_letter, true);
      } else {
        break;
      }
    }
    terms.push_back(std::move(t));
  }
  return terms;
}

}  // namespace

RationalFunction parse_rational_function(std::string_view text) {
  Cursor c(text);
  RationalFunction f = rf_expr(c);
  c.finish();
  return f;
}

Point parse_point(std::string_view text) {
  Cursor c(text);
  const Point p = c.point("");
  return p;
}

Divisor parse_divisor(std::string_view text) {
  Cursor c(text);
  Divisor d = divisor_body(c, '\0');
  c.finish();
  return d;
}

ChargedFockVector parse_charged_vector(std::string_view text) {
  ChargedFockVector w;
  for (auto& t : vector_terms(text, 'v')) w.add({t.charge, FockMonomial(std::move(t.gens))}, t.coef);
  return w;
}

FockVector parse_fock_vector(std::string_view text) {
  FockVector v;
  for (auto& t : vector_terms(text, 'v')) {
    if (t.charged) throw ParseError("charges are not allowed in an uncharged Fock vector", 0);
    v.add(FockMonomial(std::move(t.gens)), t.coef);
  }
  return v;
}

DualVector parse_dual_vector(std::string_view text) {
  DualVector u;
  for (auto& t : vector_terms(text, 'u')) {
    if (t.charged) throw ParseError("charges are not allowed in a dual vector", 0);
    u.add(FockMonomial(std::move(t.gens)), t.coef);
  }
  return u;
}

PrimeProduct parse_prime_product(std::string_view text) {
  Cursor c(text);
  PrimeProduct out;
  bool divide = false;
  bool first = true;
  if (c.eat('-')) out.constant = Rat(-1);
  while (first || c.peek() == '*' || c.peek() == '/') {
    if (!first) {
      divide = c.eat('/');
      if (!divide) c.expect('*');
    }
    first = false;
    if (c.starts_number()) {
      const Rat r = c.number();
      if (divide) {
        if (r.is_zero()) c.fail("division by zero");
        out.constant /= r;
      } else {
        out.constant *= r;
      }
      continue;
    }
    if (!c.eat('f')) c.fail("expected a number or 'f[P,Q]'");
    c.expect('[');
    const Point p = c.point(",");
    c.expect(',');
    const Point q = c.point("]");
    c.expect(']');
    if (p == q) c.fail("f[P,Q] needs distinct points");
    long k = 1;
    if (c.eat('^')) k = c.integer();
    out.factors.push_back({p, q, divide ? -k : k});
  }
  c.finish();
  if (out.constant.is_zero()) throw DomainError("a multiplicative symmetry needs a nonzero constant");
  return out;
}

}  // namespace p1qft
