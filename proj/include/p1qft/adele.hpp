#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "p1qft/function_field.hpp"
#include "p1qft/laurent.hpp"

namespace p1qft {

/// Adele with finitely many listed local parts.  At an unlisted point the
/// component is the localization of the tail, a sum of rational functions.
/// A partial adele (complete == false) only knows its listed parts and throws
/// DomainError when asked for anything else.
class Adele {
 public:
  /// The zero adele.
  Adele() = default;
  /// Diagonal image of a rational function.
  Adele(const RationalFunction& f);  // NOLINT(google-explicit-constructor)
  Adele(std::map<Point, LaurentSeries> parts, std::vector<RationalFunction> tail, bool complete = true);

  /// x_P = s at P, zero elsewhere.
  static Adele local(const Point& p, LaurentSeries s);
  /// Only the listed parts are known.
  static Adele partial(std::map<Point, LaurentSeries> parts);

  const std::map<Point, LaurentSeries>& local_parts() const noexcept { return parts_; }
  const std::vector<RationalFunction>& tail() const noexcept { return tail_; }
  bool complete() const noexcept { return complete_; }

  LaurentSeries component(const Point& p, int order = kDefaultPrecision) const;
  /// Listed points plus the poles of the tail: every point where the adele
  /// may fail to be integral.
  std::set<Point> singular_support() const;

  friend Adele operator+(const Adele& a, const Adele& b);
  friend Adele operator-(const Adele& a, const Adele& b) { return a + Rat(-1) * b; }
  friend Adele operator*(const Rat& c, const Adele& a);

 private:
  std::map<Point, LaurentSeries> parts_;
  std::vector<RationalFunction> tail_;
  bool complete_ = true;
};

/// Idele with finitely many listed local units; the tail is a nonzero
/// rational function supplying every other component.
class Idele {
 public:
  /// The unit idele.
  Idele() : tail_(Rat(1)) {}
  Idele(const RationalFunction& f);  // NOLINT(google-explicit-constructor)
  Idele(std::map<Point, LaurentSeries> units, RationalFunction tail, bool complete = true);

  static Idele partial(std::map<Point, LaurentSeries> units);

  const std::map<Point, LaurentSeries>& local_units() const noexcept { return units_; }
  const RationalFunction& tail() const noexcept { return tail_; }
  bool complete() const noexcept { return complete_; }

  LaurentSeries component(const Point& p, int order = kDefaultPrecision) const;
  /// Listed points plus zeros and poles of the tail.
  std::set<Point> support() const;

  friend Idele operator*(const Idele& a, const Idele& b);
  Idele inverse() const;

 private:
  std::map<Point, LaurentSeries> units_;
  RationalFunction tail_;
  bool complete_ = true;
};

/// c_X(x, y) = -sum_P Res_P(x_P dy_P) over the joint singular support.
Rat c_X(const Adele& x, const Adele& y);
/// Res_X(x, a) = sum_P Res_P(x_P da_P / a_P).
Rat res_x_pairing(const Adele& x, const Idele& a);

struct IdeleDivisor {
  Divisor divisor;
  long degree = 0;
};
IdeleDivisor idele_divisor(const Idele& a);

}  // namespace p1qft
