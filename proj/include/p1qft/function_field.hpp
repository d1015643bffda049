#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "p1qft/laurent.hpp"
#include "p1qft/point.hpp"
#include "p1qft/rat.hpp"

namespace p1qft {

/// Finite formal sum of points with nonzero integer coefficients.
class Divisor {
 public:
  Divisor() = default;
  explicit Divisor(std::map<Point, long> support);
  static Divisor point(const Point& p, long n = 1);

  const std::map<Point, long>& support() const& noexcept { return support_; }
  std::map<Point, long> support() && { return std::move(support_); }
  long degree() const;
  /// Coefficient at p (0 off the support).
  long at(const Point& p) const;
  bool empty() const noexcept { return support_.empty(); }

  Divisor& operator+=(const Divisor& o);
  Divisor& operator-=(const Divisor& o);
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  Divisor operator-() const;
  friend Divisor operator*(long k, const Divisor& d);

  friend bool operator==(const Divisor&, const Divisor&) = default;
  friend auto operator<=>(const Divisor& a, const Divisor& b) { return a.support_ <=> b.support_; }

  /// `(1)-(0)`, `2*(1)-(inf)`, `0` for the empty divisor.
  std::string str() const;

 private:
  void add(const Point& p, long n);
  std::map<Point, long> support_;
};

std::ostream& operator<<(std::ostream& os, const Divisor& d);

/// Element of Q(z) stored as  scale * prod (z - root)^mult.
/// The multiplicity at infinity is implied: v_inf(f) = -sum mult.
class RationalFunction {
 public:
  /// The zero function.
  RationalFunction() = default;
  RationalFunction(const Rat& c);  // NOLINT(google-explicit-constructor)
  RationalFunction(Rat scale, std::map<Rat, long> factors);

  static RationalFunction z() { return linear(Rat(0)); }
  /// z - root
  static RationalFunction linear(const Rat& root) { return RationalFunction(Rat(1), {{root, 1}}); }
  /// Factors a polynomial with rational coefficients (ascending powers of z)
  /// over Q.  Throws DomainError when an irreducible factor of degree >= 2
  /// remains.
  static RationalFunction from_polynomial(const std::vector<Rat>& coeffs_ascending);

  const Rat& scale() const noexcept { return scale_; }
  const std::map<Rat, long>& factors() const noexcept { return factors_; }
  bool is_zero() const noexcept { return scale_.is_zero(); }
  bool is_constant() const noexcept { return factors_.empty(); }

  /// v_P(f); throws DomainError for the zero function.
  long valuation_at(const Point& p) const;
  /// Value f(P) for a point where f is regular (limit at infinity).
  Rat evaluate(const Point& p) const;
  /// Finite poles with their orders (positive), plus infinity when v_inf < 0.
  std::map<Point, long> poles() const;

  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  RationalFunction pow(long e) const;
  RationalFunction inverse() const;

  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

  /// Canonical factored form, e.g. `3*(z-1)^2*(z+3)^-1`.
  std::string str() const;

 private:
  Rat scale_;
  std::map<Rat, long> factors_;
};

std::ostream& operator<<(std::ostream& os, const RationalFunction& f);

/// Uniformizer at P: t = z - P, or t = 1/z at infinity.
/// Expansion of f in that uniformizer, exact, known to O(t^order).
LaurentSeries rf_expand_at(const RationalFunction& f, const Point& p, int order = kDefaultPrecision);

/// Principal divisor (f), including the coefficient at infinity.
Divisor rf_divisor(const RationalFunction& f);

/// omega = coefficient * dz.
struct GlobalDifferential {
  RationalFunction coefficient;
};

/// Local body s(t) of omega = s(t) dt at P (with dz = -t^-2 dt at infinity).
LaurentSeries local_differential(const GlobalDifferential& w, const Point& p, int order = kDefaultPrecision);
Rat residue_at(const GlobalDifferential& w, const Point& p);

struct ResidueSum {
  std::map<Point, Rat> residues;  // over the pole support
  Rat total;
};
/// Residues at every pole of omega and their sum.
ResidueSum residue_theorem_check(const GlobalDifferential& w);

/// eta_P^(n) = -1/(n (z-P)^n), eta_inf^(n) = -z^n/n.
RationalFunction eta(const Point& p, int n);
/// u_P^(n) = -(z-P)^n, u_inf^(n) = -z^-n.
RationalFunction u_gen(const Point& p, int n);

using PoleIndex = std::pair<Point, int>;

/// f = sum coeffs[(Q,j)] eta_Q^(j) + constant.
struct PartialFractions {
  std::map<PoleIndex, Rat> coeffs;
  Rat constant;

  /// Value of the expansion at a point off the poles.
  Rat evaluate(const Point& p) const;
};

PartialFractions partial_fractions(const RationalFunction& f);

}  // namespace p1qft
