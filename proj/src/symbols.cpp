#include "p1qft/symbols.hpp"

#include <set>

#include "p1qft/errors.hpp"

namespace p1qft {

Rat tame_local(const LaurentSeries& f, const LaurentSeries& g) {
  const long m = ls_valuation(f);
  const long n = ls_valuation(g);
  Rat value = ls_leading(f).pow(n) / ls_leading(g).pow(m);
  if ((m * n) % 2 != 0) value = -value;
  return value;
}

Rat tame_at(const RationalFunction& f, const RationalFunction& g, const Point& p) {
  const long m = f.valuation_at(p);
  const long n = g.valuation_at(p);
  return tame_local(rf_expand_at(f, p, static_cast<int>(m) + 1), rf_expand_at(g, p, static_cast<int>(n) + 1));
}

SymbolReport weil_global(const RationalFunction& f, const RationalFunction& g) {
  if (f.is_zero() || g.is_zero()) throw DomainError("tame symbol of the zero function");
  std::set<Point> pts;
  for (const auto& [p, k] : rf_divisor(f).support()) pts.insert(p);
  for (const auto& [p, k] : rf_divisor(g).support()) pts.insert(p);
  SymbolReport out;
  for (const auto& p : pts) {
    const Rat t = tame_at(f, g, p);
    out.local.emplace(p, t);
    out.product *= t;
  }
  return out;
}

SymbolReport tame_global(const Idele& a, const Idele& b) {
  std::set<Point> pts = a.support();
  for (const auto& p : b.support()) pts.insert(p);
  SymbolReport out;
  for (const auto& p : pts) {
    const Rat t = tame_local(a.component(p), b.component(p));
    out.local.emplace(p, t);
    out.product *= t;
  }
  return out;
}

SymbolReport generalized_weil_check(const Idele& m1, const Idele& m2) { return tame_global(m1, m2); }

Rat p1_prime_const(const Point& p, const Point& q) {
  if (p.is_infinite() && q.is_infinite()) return Rat(-1);
  if (p.is_infinite()) return Rat(1);
  if (q.is_infinite()) return Rat(-1);
  if (p == q) return Rat(1);
  return q.value() - p.value();
}

LaurentSeries p1_e_expansion(const Point& p, const Point& r, int order) {
  if (r.is_finite()) {
    if (p.is_infinite()) return LaurentSeries::constant(Rat(1), order);
    return rf_expand_at(RationalFunction::linear(p.value()), r, order);
  }
  if (p.is_infinite()) return LaurentSeries::monomial(Rat(-1), 1, order);
  // -(1 - P t)
  return LaurentSeries::polynomial(0, {Rat(-1), p.value()}, order);
}

Idele prime_form_idele(const Point& p) {
  const Point inf = Point::infinity();
  if (p.is_infinite()) return Idele({{inf, p1_e_expansion(p, inf)}}, RationalFunction(Rat(1)));
  return Idele({{inf, p1_e_expansion(p, inf)}}, RationalFunction::linear(p.value()));
}

RationalFunction f_PQ_function(const Point& p, const Point& q) {
  if (p == q) throw DomainError("f_PQ needs distinct points, got " + p.str() + " twice");
  RationalFunction f(Rat(1));
  if (p.is_finite()) f *= RationalFunction::linear(p.value());
  if (q.is_finite()) f /= RationalFunction::linear(q.value());
  return f;
}

Idele f_PQ(const Point& p, const Point& q) { return Idele(f_PQ_function(p, q)); }

namespace {

std::vector<Point> expand_points(const Divisor& d, int sign) {
  std::vector<Point> out;
  for (const auto& [p, n] : d.support())
    for (long i = 0; i < n * sign; ++i) out.push_back(p);
  return out;
}

}  // namespace

Rat factorization_constant(const RationalFunction& f, const std::vector<std::pair<Point, Point>>& pairs) {
  RationalFunction prod(Rat(1));
  for (const auto& [a, b] : pairs) prod *= f_PQ_function(a, b);
  const RationalFunction c = f / prod;
  if (!c.is_constant()) throw DomainError("pairing does not match the divisor of " + f.str());
  return c.scale();
}

Factorization factorize(const RationalFunction& f) {
  if (f.is_zero()) throw DomainError("factorize: zero function");
  const Divisor d = rf_divisor(f);
  const auto zeros = expand_points(d, 1);
  const auto poles = expand_points(d, -1);
  Factorization out;
  for (std::size_t i = 0; i < zeros.size(); ++i) out.factors.emplace_back(zeros[i], poles[i]);
  out.constant = factorization_constant(f, out.factors);
  return out;
}

RationalFunction multiply_out(const Factorization& fac) {
  RationalFunction f(fac.constant);
  for (const auto& [a, b] : fac.factors) f *= f_PQ_function(a, b);
  return f;
}

Rat exp_integral_3rd(const Point& p, const Point& q, const Point& r, const Point& s) {
  const std::vector<Point> pts{p, q, r, s};
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i] == pts[j]) throw DomainError("exp_integral_3rd: coincident points " + pts[i].str());
  const RationalFunction f = f_PQ_function(r, s);
  return f.evaluate(q) / f.evaluate(p);
}

ExchangeReport exchange_law_check(const Point& p, const Point& q, const Point& r, const Point& s) {
  return {exp_integral_3rd(r, s, p, q), exp_integral_3rd(p, q, r, s)};
}

}  // namespace p1qft
