#include <sstream>

#include "doctest.h"
#include "oracle.hpp"
#include "p1qft/cli.hpp"
#include "p1qft/errors.hpp"
#include "p1qft/parser.hpp"

using namespace p1qft;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("golden: weil") {
  const Run r = run({"weil", "--f", "(z)", "--g", "(z-1)"});
  CHECK(r.status == 0);
  CHECK(r.out ==
        "weil f=z g=(z-1)\n"
        "local[0]: -1\n"
        "local[1]: 1\n"
        "local[inf]: -1\n"
        "product: 1\n"
        "PASS\n");
}

TEST_CASE("golden: two-point correlator") {
  const Run r = run({"correlate", "--state", "v[0,1]*v[1,1]"});
  CHECK(r.status == 0);
  CHECK(r.out ==
        "correlate state=v[0,1]*v[1,1] mode=additive\n"
        "value: 1\n");
}

TEST_CASE("golden: multiplicative ward") {
  const Run r = run({"ward", "--mode", "multiplicative", "--symmetry", "f[0,1]", "--state", "e[(1)-(0)]"});
  CHECK(r.status == 0);
  CHECK(r.out ==
        "ward mode=multiplicative symmetry=f[0,1] state=e[(1)-(0)]\n"
        "lhs: -1\n"
        "rhs: -1\n"
        "PASS\n");
}

TEST_CASE("golden: records format") {
  const Run r = run({"--format", "records", "weil", "--f", "(z)", "--g", "(z-1)"});
  CHECK(r.out ==
        "{\"verb\":\"weil\",\"inputs\":{\"f\":\"z\",\"g\":\"(z-1)\"},"
        "\"outputs\":{\"local\":{\"0\":\"-1\",\"1\":\"1\",\"inf\":\"-1\"},\"product\":\"1\"},\"pass\":true}\n");
  const Run s = run({"correlate", "--state", "e[(1)-(0)]*v[2,1]", "--format", "records"});
  CHECK(s.out == "{\"verb\":\"correlate\",\"inputs\":{\"state\":\"e[(1)-(0)]*v[2,1]\",\"mode\":\"charged\"},"
                 "\"outputs\":{\"value\":\"1/2\"}}\n");
}

TEST_CASE("every verb runs") {
  CHECK(run({"residue", "--f", "1/(z*(z-1))", "--point", "0"}).out == "residue f=z^-1*(z-1)^-1 point=0\nresidue: -1\n");
  CHECK(run({"residue-theorem", "--f", "1/(z^2-1)"}).status == 0);
  CHECK(run({"expand", "--f", "1/(1-z)", "--point", "0", "--precision", "3"}).out ==
        "expand f=-(z-1)^-1 point=0\nseries: 1 + t + t^2 + O(t^3)\nvaluation: 0\n");
  CHECK(run({"divisor", "--f", "z^2/(z-1)"}).status == 0);
  CHECK(run({"partial-fractions", "--f", "1/(z*(z-1))", "--seed", "7"}).status == 0);
  CHECK(run({"tame", "--f", "z", "--g", "z-1", "--point", "0"}).status == 0);
  CHECK(run({"exchange", "--points", "0,1,2,inf"}).status == 0);
  CHECK(run({"factorize", "--f", "3*(z-1)^2*(z+3)^-1"}).status == 0);
  CHECK(run({"prime-taylor", "--p", "0", "--q", "1", "--r", "2"}).status == 0);
  CHECK(run({"act", "--symmetry", "z", "--state", "e[(1)-(0)]"}).out ==
        "act mode=additive symmetry=z state=e[(1)-(0)]\nresult: -e[(1)-(0)] - e[(1)-(0)]*v[inf,1]\n");
  CHECK(run({"act", "--mode", "multiplicative", "--symmetry", "f[0,1]", "--state", "e[0]"}).out ==
        "act mode=multiplicative symmetry=f[0,1] state=e[0]\nresult: -e[(0)-(1)]\n");
  CHECK(run({"ward", "--symmetry", "1/z", "--state", "v[1,1]"}).status == 0);
  CHECK(run({"validate-model"}).status == 0);
}

TEST_CASE("errors exit with status 2 and name the verb") {
  const Run bad = run({"weil", "--f", "(z", "--g", "z"});
  CHECK(bad.status == 2);
  CHECK(bad.err.rfind("error: weil: parse error", 0) == 0);
  CHECK(run({"weil", "--f", "z^2+1", "--g", "z"}).status == 2);
  CHECK(run({"correlate", "--state", "v[0,1]^13"}).status == 2);
  CHECK(run({"correlate", "--state", "v[0,1]^13", "--degree-cap", "13"}).status == 0);
  CHECK(run({"frobnicate"}).status == 2);
  CHECK(run({"validate-model", "--model", "/nonexistent/model.json"}).status == 1);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_rational_function("(z-1)*(z+");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 9);
  }
  CHECK_THROWS_AS(parse_charged_vector("v[0,0]"), ParseError);
  CHECK_THROWS_AS(parse_prime_product("f[1,1]"), ParseError);
  CHECK_THROWS_AS(parse_fock_vector("e[(1)-(0)]"), ParseError);
}

TEST_CASE("parse print parse is the identity on canonical forms") {
  oracle::Gen gen(61);
  for (int trial = 0; trial < 100; ++trial) {
    const RationalFunction f = gen.rational();
    CHECK(parse_rational_function(f.str()) == f);
    CHECK(parse_rational_function(parse_rational_function(f.str()).str()).str() == f.str());

    const FockVector v = gen.fock(oracle::panel6(), 3, 3, 4);
    CHECK(parse_fock_vector(to_string(v)) == v);

    ChargedFockVector w;
    w.add({gen.charge(oracle::panel6()), gen.monomial(oracle::panel6(), 3, 3)}, gen.nonzero_rat());
    w.add({gen.charge(oracle::panel6()), gen.monomial(oracle::panel6(), 3, 3)}, gen.nonzero_rat());
    CHECK(parse_charged_vector(to_string(w)) == w);

    const DualVector u = gen.fock(oracle::panel6(), 2, 3, 4);
    CHECK(parse_dual_vector(to_dual_string(u)) == u);

    const Divisor d = gen.charge(oracle::panel6());
    CHECK(parse_divisor(d.str()) == d);
  }
  const PrimeProduct m = parse_prime_product("3*f[0,1]^2/f[2,inf]");
  CHECK(parse_prime_product(m.str()).function() == m.function());
  CHECK(m.function() == parse_rational_function("3*z^2*(z-1)^-2*(z-2)^-1"));
  CHECK(parse_prime_product("f[0,inf]").function() == RationalFunction::z());
}
