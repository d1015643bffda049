#pragma once

#include <map>
#include <utility>
#include <vector>

#include "p1qft/adele.hpp"
#include "p1qft/function_field.hpp"

namespace p1qft {

/// tau(f, g) = (-1)^{mn} f^n / g^m evaluated at t = 0, m = v(f), n = v(g).
Rat tame_local(const LaurentSeries& f, const LaurentSeries& g);
Rat tame_at(const RationalFunction& f, const RationalFunction& g, const Point& p);

struct SymbolReport {
  std::map<Point, Rat> local;  // every point where either argument has a zero or pole
  Rat product{1};
  bool pass() const { return product == Rat(1); }
};

/// Product of local tame symbols of two rational functions.
SymbolReport weil_global(const RationalFunction& f, const RationalFunction& g);
/// tau_X(a, b) for ideles: product over the union of their supports.
SymbolReport tame_global(const Idele& a, const Idele& b);
/// tau_X on products of prime factors and constants; equals 1.
SymbolReport generalized_weil_check(const Idele& m1, const Idele& m2);

/// Genus-0 prime-form constants: c(P,Q) = Q - P for finite P != Q,
/// c(inf, Q) = 1 = -c(Q, inf), c(P, P) = 1 for finite P, c(inf, inf) = -1.
Rat p1_prime_const(const Point& p, const Point& q);
/// Expansion of e_P at R in the uniformizer of R.
LaurentSeries p1_e_expansion(const Point& p, const Point& r, int order = kDefaultPrecision);

/// e_P as an idele: z - P (or 1) with a corrected component at infinity.
Idele prime_form_idele(const Point& p);
/// f_PQ = e_P / e_Q as a rational function.
RationalFunction f_PQ_function(const Point& p, const Point& q);
Idele f_PQ(const Point& p, const Point& q);

struct Factorization {
  Rat constant;
  std::vector<std::pair<Point, Point>> factors;  // (zero, pole)
};

/// f = constant * prod f_{Q_i R_i}; zeros and poles paired in point order.
Factorization factorize(const RationalFunction& f);
/// Constant for an explicit pairing of the zeros and poles of f.
Rat factorization_constant(const RationalFunction& f, const std::vector<std::pair<Point, Point>>& pairs);
RationalFunction multiply_out(const Factorization& fac);

/// exp of the integral of omega_RS from P to Q: f_RS(Q) / f_RS(P).
Rat exp_integral_3rd(const Point& p, const Point& q, const Point& r, const Point& s);

struct ExchangeReport {
  Rat lhs;  // exp int_R^S omega_PQ
  Rat rhs;  // exp int_P^Q omega_RS
  bool pass() const { return lhs == rhs; }
};
ExchangeReport exchange_law_check(const Point& p, const Point& q, const Point& r, const Point& s);

}  // namespace p1qft
