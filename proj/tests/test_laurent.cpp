#include "doctest.h"
#include "oracle.hpp"
#include "p1qft/errors.hpp"
#include "p1qft/laurent.hpp"

using namespace p1qft;

TEST_CASE("rat parses and reduces") {
  CHECK(Rat::parse("6/4") == Rat(3, 2));
  CHECK(Rat::parse("-0.25") == Rat(-1, 4));
  CHECK(Rat(3, 2).str() == "3/2");
  CHECK(Rat(-4, 2).str() == "-2");
  CHECK(Rat(2, 3).pow(-2) == Rat(9, 4));
  CHECK(binomial(5, 2) == Rat(10));
  CHECK_THROWS_AS(Rat(1) / Rat(0), DomainError);
  CHECK_THROWS_AS(Rat::parse("1/0"), Error);
}

TEST_CASE("series arithmetic on windows") {
  const auto one_minus_t = LaurentSeries::polynomial(0, {Rat(1), Rat(-1)}, 8);
  const auto geo = one_minus_t.inverse();
  for (int k = 0; k < 8; ++k) CHECK(geo.coeff(k) == Rat(1));
  CHECK((geo * one_minus_t).truncated(8).coeff(0) == Rat(1));
  for (int k = 1; k < 8; ++k) CHECK((geo * one_minus_t).coeff(k) == Rat(0));

  const auto pole = LaurentSeries::monomial(Rat(2), -3, 6);
  CHECK(pole.valuation() == -3);
  CHECK(pole.leading() == Rat(2));
  CHECK(pole.derivative().coeff(-4) == Rat(-6));
}

TEST_CASE("residue of t^-1 dt and of derivatives") {
  CHECK(residue_of(LaurentSeries::polynomial(-2, {Rat(5), Rat(7), Rat(1)}, 4)) == Rat(7));
  const auto s = LaurentSeries::polynomial(-3, {Rat(1), Rat(2), Rat(3), Rat(4)}, 6);
  CHECK(residue_of(s.derivative()) == Rat(0));
}

TEST_CASE("exp and log are inverse on the unit window") {
  oracle::Gen gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rat> c{Rat(0)};
    for (int k = 1; k < 6; ++k) c.push_back(gen.small_rat());
    const auto a = LaurentSeries::polynomial(0, c, 10);
    const auto back = ls_log(ls_exp(a));
    for (int k = 0; k < 10; ++k) CHECK(back.coeff(k) == a.coeff(k));
  }
}

TEST_CASE("local cocycle is antisymmetric and pairs t^-n with t^n") {
  oracle::Gen gen(12);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Rat> a, b;
    for (int k = 0; k < 6; ++k) {
      a.push_back(gen.small_rat());
      b.push_back(gen.small_rat());
    }
    const auto x = LaurentSeries::polynomial(-3, a, 8);
    const auto y = LaurentSeries::polynomial(-2, b, 8);
    CHECK(local_cocycle(x, y) == -local_cocycle(y, x));
  }
  for (int n = 1; n <= 5; ++n) {
    const auto a = LaurentSeries::monomial(Rat(1), -n, 8);
    const auto b = LaurentSeries::monomial(Rat(1), n, 8);
    CHECK(local_cocycle(a, b) == Rat(-n));
    CHECK(local_cocycle(b, a) == Rat(n));
  }
}

TEST_CASE("valuation and leading coefficient probe exact sources") {
  const auto s = LaurentSeries::polynomial(2, {Rat(0), Rat(3)}, 4);
  CHECK(ls_valuation(s) == 3);
  CHECK(ls_leading(s) == Rat(3));
}
