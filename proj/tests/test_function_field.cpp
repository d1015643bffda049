#include "doctest.h"
#include "oracle.hpp"
#include "p1qft/errors.hpp"
#include "p1qft/function_field.hpp"
#include "p1qft/parser.hpp"

using namespace p1qft;
using oracle::inf;

TEST_CASE("divisor of a factored function") {
  const auto f = parse_rational_function("3*(z-1)^2*(z+3)^-1");
  CHECK(f.scale() == Rat(3));
  CHECK(f.factors().at(Rat(1)) == 2);
  CHECK(f.factors().at(Rat(-3)) == -1);
  const Divisor d = rf_divisor(f);
  CHECK(d.at(Rat(1)) == 2);
  CHECK(d.at(Rat(-3)) == -1);
  CHECK(d.at(inf()) == -1);
  CHECK(d.degree() == 0);
  CHECK(d.str() == "2*(1)-(-3)-(inf)");
}

TEST_CASE("expansion of 1/(z(z-1)) at 0 and infinity") {
  const auto f = parse_rational_function("1/(z*(z-1))");
  const auto at0 = rf_expand_at(f, Point(0), 4);
  CHECK(at0.valuation() == -1);
  for (int k = -1; k < 4; ++k) CHECK(at0.coeff(k) == Rat(-1));
  const auto atinf = rf_expand_at(f, inf(), 6);
  CHECK(atinf.valuation() == 2);
  for (int k = 2; k < 6; ++k) CHECK(atinf.coeff(k) == Rat(1));
}

TEST_CASE("residues agree with the closed-form oracle") {
  oracle::Gen gen(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = gen.rational();
    const GlobalDifferential w{f};
    const ResidueSum sum = residue_theorem_check(w);
    CHECK(sum.total == Rat(0));
    for (const auto& [r, m] : f.factors()) CHECK(residue_at(w, Point(r)) == oracle::residue(f, Point(r)));
    CHECK(residue_at(w, inf()) == oracle::residue(f, inf()));
  }
}

TEST_CASE("residue at infinity of dz/z is -1") {
  CHECK(residue_at({RationalFunction::z().inverse()}, inf()) == Rat(-1));
  CHECK(residue_at({RationalFunction::z().inverse()}, Point(0)) == Rat(1));
}

TEST_CASE("eta has a single pole and vanishing constant at its pole") {
  for (const auto& p : oracle::panel6()) {
    for (int n = 1; n <= 4; ++n) {
      const RationalFunction e = eta(p, n);
      const auto poles = e.poles();
      REQUIRE(poles.size() == 1);
      CHECK(poles.begin()->first == p);
      CHECK(poles.begin()->second == n);
      const auto local = rf_expand_at(e, p, 4);
      CHECK(local.coeff(-n) == Rat(-1, n));
      for (int k = -n + 1; k < 4; ++k) CHECK(local.coeff(k) == Rat(0));
    }
  }
}

TEST_CASE("partial fractions reconstruct at seeded points") {
  oracle::Gen gen(22);
  for (int trial = 0; trial < 60; ++trial) {
    const auto f = gen.rational(6, 3);
    const PartialFractions pf = partial_fractions(f);
    int checked = 0;
    while (checked < 10) {
      const Point x(gen.small_rat(40, 7));
      if (f.poles().count(x)) continue;
      CHECK(pf.evaluate(x) == f.evaluate(x));
      ++checked;
    }
  }
}

TEST_CASE("partial fractions of 1/(z(z-1))") {
  const PartialFractions pf = partial_fractions(parse_rational_function("1/(z*(z-1))"));
  CHECK(pf.coeffs.at({Point(0), 1}) == Rat(1));
  CHECK(pf.coeffs.at({Point(1), 1}) == Rat(-1));
  CHECK(pf.constant == Rat(0));
}

TEST_CASE("irreducible quadratic is refused") {
  CHECK_THROWS_AS(parse_rational_function("z^2+1"), DomainError);
}
