#pragma once

#include <map>
#include <tuple>

#include "p1qft/fock.hpp"
#include "p1qft/model.hpp"

namespace p1qft {

/// Monomials above this degree are refused unless the cap is raised.
inline constexpr int kDefaultDegreeCap = 12;

/// Memoized two-point coefficients c^(mn)_PQ, linear terms eta_P^(n)(D)
/// and charge weights c(D) of one model.
class CoefficientTable {
 public:
  explicit CoefficientTable(const CurveModel& model) : model_(model) {}

  const CurveModel& model() const noexcept { return model_; }
  /// c^(mn)_PQ = -Res_Q(eta_P^(m) d eta_Q^(n)) for a = (P,m), b = (Q,n).
  const Rat& c2(const Generator& a, const Generator& b);
  /// eta_P^(n)(D) = sum_Q n_Q eta_P^(n)|_Q(0).
  Rat lin(const Generator& g, const Divisor& d);
  /// c(D) = prod_{R,S} c(R,S)^{n_R n_S}, diagonal included.
  Rat cD(const Divisor& d);

 private:
  const CurveModel& model_;
  std::map<std::pair<Generator, Generator>, Rat> c2_;
  std::map<std::tuple<Point, int, Point>, Rat> eta0_;
};

/// <v> = (Omega_X, v): perfect matchings weighted by -c^(mn)_PQ.
Rat corr_additive(const FockVector& v, const CurveModel& model, int degree_cap = kDefaultDegreeCap);
/// Partial matchings; singletons weighted by eta_P^(n)(D).
Rat corr_charged(const ChargedFockVector& w, const CurveModel& model, int degree_cap = kDefaultDegreeCap);
/// corr_charged with each sector weighted by c(D).
Rat corr_multiplicative(const ChargedFockVector& w, const CurveModel& model, int degree_cap = kDefaultDegreeCap);

/// Wick sums on a single monomial, used by the correlators above.
Rat wick_perfect(CoefficientTable& table, const FockMonomial& m);
Rat wick_partial(CoefficientTable& table, const FockMonomial& m, const Divisor& d);

/// <rho(f) v>; zero for global additive f.
Rat ward_additive(const Adele& f, const FockVector& v, const CurveModel& model, int degree_cap = kDefaultDegreeCap);
Rat ward_additive(const Adele& f, const ChargedFockVector& w, const CurveModel& model,
                  int degree_cap = kDefaultDegreeCap);

struct WardPair {
  Rat lhs;
  Rat rhs;
  bool pass() const { return lhs == rhs; }
};
/// (<R_X(m) w>, <w>) under the multiplicative correlator.
WardPair ward_multiplicative(const Idele& m, const ChargedFockVector& w, const CurveModel& model,
                             int degree_cap = kDefaultDegreeCap);

/// Closed form of h(P,Q;D) with c(D + Q - P) = h(P,Q;D) c(D).
Rat h_coefficient(const CurveModel& model, const Point& p, const Point& q, const Divisor& d);
/// (c(D + Q - P), h(P,Q;D) c(D)).
WardPair rec_c_check(const CurveModel& model, const Point& p, const Point& q, const Divisor& d);

}  // namespace p1qft
