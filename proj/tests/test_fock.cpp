#include "doctest.h"
#include "oracle.hpp"
#include "p1qft/adele.hpp"
#include "p1qft/errors.hpp"
#include "p1qft/fock.hpp"
#include "p1qft/parser.hpp"
#include "p1qft/symbols.hpp"

using namespace p1qft;
using oracle::inf;

namespace {

LaurentSeries random_local(oracle::Gen& gen, int lowest, int len) {
  std::vector<Rat> c;
  for (int i = 0; i < len; ++i) c.push_back(gen.small_rat());
  return LaurentSeries::polynomial(lowest, c, 16);
}

/// Adele with random Laurent polynomials at up to two panel points.
Adele random_adele(oracle::Gen& gen) {
  std::map<Point, LaurentSeries> parts;
  const long k = gen.integer(1, 2);
  for (long i = 0; i < k; ++i)
    parts.insert_or_assign(gen.panel_point(oracle::panel6()), random_local(gen, -static_cast<int>(gen.integer(0, 3)), 6));
  return Adele(std::move(parts), {});
}

/// Complete idele with random units at up to two panel points.
Idele random_local_idele(oracle::Gen& gen) {
  std::map<Point, LaurentSeries> units;
  const long k = gen.integer(1, 2);
  for (long i = 0; i < k; ++i) {
    std::vector<Rat> c{gen.nonzero_rat()};
    for (int j = 1; j < 4; ++j) c.push_back(gen.small_rat());
    units.insert_or_assign(gen.panel_point(oracle::panel6()), LaurentSeries::polynomial(0, c, 16));
  }
  return Idele(std::move(units), RationalFunction(Rat(1)));
}

}  // namespace

TEST_CASE("monomials are sorted multisets") {
  const FockMonomial m({{Point(1), 1}, {Point(0), 2}, {Point(0), 2}});
  CHECK(m.degree() == 3);
  CHECK(m.str() == "v[0,2]*v[0,2]*v[1,1]");
  CHECK(m.symmetry_factor() == Rat(2));
  CHECK(m.without(0).str() == "v[0,2]*v[1,1]");
  CHECK(FockMonomial().str() == "1");
  CHECK(m.str("u") == "u[0,2]*u[0,2]*u[1,1]");
}

TEST_CASE("oscillator relations") {
  const FockVector vac(FockMonomial{});
  for (int m = 1; m <= 4; ++m) {
    const Adele am = Adele::local(Point(0), LaurentSeries::monomial(Rat(1), m, 12));
    const Adele a_m = Adele::local(Point(0), LaurentSeries::monomial(Rat(1), -m, 12));
    CHECK(c_X(am, a_m) == Rat(m));
    const FockVector v = parse_fock_vector("v[0,1]*v[0,2] + v[0,4]");
    const FockVector comm = heisenberg_act(am, heisenberg_act(a_m, v, p1_model()), p1_model()) -
                            heisenberg_act(a_m, heisenberg_act(am, v, p1_model()), p1_model());
    CHECK(comm == Rat(m) * v);
  }
}

TEST_CASE("heisenberg commutator equals the residue cocycle") {
  oracle::Gen gen(41);
  for (int trial = 0; trial < 40; ++trial) {
    const Adele x = random_adele(gen);
    const Adele y = random_adele(gen);
    const FockVector v = gen.fock(oracle::panel6(), 3, 3, 4);
    const FockVector comm = heisenberg_act(x, heisenberg_act(y, v, p1_model()), p1_model()) -
                            heisenberg_act(y, heisenberg_act(x, v, p1_model()), p1_model());
    CHECK(comm == c_X(x, y) * v);
  }
}

TEST_CASE("rational functions act with commuting global parts") {
  const Adele f(parse_rational_function("1/z"));
  const FockVector v = parse_fock_vector("v[1,1]");
  CHECK(to_string(heisenberg_act(f, v, p1_model())) == "1 - v[0,1]*v[1,1]");
  CHECK(c_X(f, Adele(parse_rational_function("z^2/(z-1)"))) == Rat(0));
}

TEST_CASE("dual pairing matches the permanent") {
  oracle::Gen gen(42);
  for (int trial = 0; trial < 40; ++trial) {
    const FockMonomial a = gen.monomial(oracle::panel6(), 4, 3);
    std::vector<Generator> g = a.generators();
    // a partner of equal degree sharing most generators
    if (!g.empty() && gen.integer(0, 1)) g.back() = gen.generator(oracle::panel6(), 3);
    const DualVector u(FockMonomial(std::move(g)));
    const FockVector v(a);
    CHECK(dual_pairing(u, v, p1_model()) == dual_pairing_permanent(u, v, p1_model()));
  }
  CHECK(dual_pairing(parse_dual_vector("u[0,1]^2"), parse_fock_vector("v[0,1]^2"), p1_model()) == Rat(2));
}

TEST_CASE("contragradient action is the transpose of rho") {
  oracle::Gen gen(43);
  for (int trial = 0; trial < 30; ++trial) {
    const Point p = gen.panel_point(oracle::panel6());
    const Adele x = Adele::local(p, random_local(gen, -3, 7));
    std::vector<Generator> gens;
    for (long i = gen.integer(0, 3); i > 0; --i) gens.push_back({p, static_cast<int>(gen.integer(1, 3))});
    const DualVector u(FockMonomial(std::move(gens)));
    const FockVector v = gen.fock({p}, 3, 3, 3);
    CHECK(dual_pairing(contragradient_act(u, x, p1_model(), {p}, 8), v, p1_model()) ==
          dual_pairing(u, heisenberg_act(x, v, p1_model()), p1_model()));
  }
}

TEST_CASE("charged action of z on e[(1)-(0)]") {
  const ChargedFockVector w = parse_charged_vector("e[(1)-(0)]");
  const ChargedFockVector out = charged_act(Adele(RationalFunction::z()), w, p1_model());
  CHECK(to_string(out) == "-e[(1)-(0)] - e[(1)-(0)]*v[inf,1]");
  CHECK(adele_at_divisor(Adele(RationalFunction::z()), Divisor::point(Point(1)) - Divisor::point(Point(0))) ==
        Rat(1));
}

TEST_CASE("multiplicative action of f_01 on the vacuum sector") {
  const ChargedFockVector out = rx_act(f_PQ(Point(0), Point(1)), parse_charged_vector("e[0]"), p1_model());
  CHECK(to_string(out) == "-e[(0)-(1)]");
  CHECK(to_string(shift(Divisor::point(Point(2)) - Divisor::point(Point(0)), parse_charged_vector("e[(0)-(1)]"))) ==
        "e[(2)-(1)]");
  CHECK_THROWS_AS(check_charges(parse_charged_vector("e[(0)]")), DomainError);
}

TEST_CASE("group law of R on local ideles") {
  oracle::Gen gen(44);
  for (int trial = 0; trial < 30; ++trial) {
    const Idele a = random_local_idele(gen);
    const Idele b = random_local_idele(gen);
    const ChargedFockVector w = uncharged(gen.fock(oracle::panel6(), 2, 2, 3));
    const ChargedFockVector lhs = rx_act(a, rx_act(b, w, p1_model()), p1_model());
    const Rat tau = tame_global(a, b).product;
    CHECK(lhs == tau.inverse() * rx_act(a * b, w, p1_model()));
  }
}

TEST_CASE("group law on products of prime factors and charged vectors") {
  oracle::Gen gen(46);
  const auto& pts = oracle::panel6();
  auto random_fpq = [&] {
    const Point p = gen.panel_point(pts);
    Point q = gen.panel_point(pts);
    while (q == p) q = gen.panel_point(pts);
    return f_PQ(p, q);
  };
  for (int trial = 0; trial < 20; ++trial) {
    const Idele a = random_fpq();
    const Idele b = random_fpq() * random_fpq();
    ChargedFockVector w = shift(gen.charge(pts), uncharged(gen.fock(pts, 2, 2, 3)));
    const Rat tau = tame_global(a, b).product;
    CHECK(tau == Rat(1));
    CHECK(rx_act(a, rx_act(b, w, p1_model()), p1_model()) == tau.inverse() * rx_act(a * b, w, p1_model()));
  }
}

TEST_CASE("derivative action intertwines with R") {
  oracle::Gen gen(45);
  for (int trial = 0; trial < 30; ++trial) {
    const Adele x = random_adele(gen);
    const Idele a = random_local_idele(gen);
    ChargedFockVector w = uncharged(gen.fock(oracle::panel6(), 2, 2, 3));
    w += shift(gen.charge(oracle::panel6()), uncharged(gen.fock(oracle::panel6(), 1, 2, 3)));
    const ChargedFockVector ra = rx_act(a, w, p1_model());
    const ChargedFockVector comm = drx_act(x, ra, p1_model()) - rx_act(a, drx_act(x, w, p1_model()), p1_model());
    CHECK(comm == -res_x_pairing(x, a) * ra);
  }
}

TEST_CASE("charged action of global functions is a derivation of sectors") {
  // f = 1 shifts each sector by -deg = 0 and creates nothing
  const ChargedFockVector w = parse_charged_vector("e[(1)-(0)]*v[2,1]");
  CHECK(charged_act(Adele(RationalFunction(Rat(1))), w, p1_model()).empty());
}
