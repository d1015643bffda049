#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "p1qft/adele.hpp"
#include "p1qft/function_field.hpp"
#include "p1qft/laurent.hpp"

namespace p1qft {

/// Curve-dependent data consumed by the Fock-space and correlator layers.
/// Expansions are in the model's uniformizer at the point of expansion.
class CurveModel {
 public:
  virtual ~CurveModel() = default;

  virtual int genus() const = 0;
  virtual Divisor special_divisor() const = 0;
  /// eta_P^(n) expanded at Q.
  virtual LaurentSeries eta_expansion(const Point& p, int n, const Point& q, int order) const = 0;
  /// Constant term of eta_P^(n) at Q; zero at Q = P.
  virtual Rat eta_const(const Point& p, int n, const Point& q) const = 0;
  /// u_P^(n) expanded at P.
  virtual LaurentSeries u_expansion(const Point& p, int n, int order) const = 0;
  virtual Rat prime_const(const Point& p, const Point& q) const = 0;
  /// e_P expanded at R.
  virtual LaurentSeries e_expansion(const Point& p, const Point& r, int order) const = 0;

  /// Points the model can answer for; nullopt means every point.
  virtual std::optional<std::vector<Point>> panel() const { return std::nullopt; }
  /// Largest pole order with tabulated data; nullopt means unbounded.
  virtual std::optional<int> max_index() const { return std::nullopt; }
  virtual std::string name() const = 0;

  /// v_P^(n) = eta_P^(n) at P.
  LaurentSeries v_expansion(const Point& p, int n, int order) const { return eta_expansion(p, n, p, order); }
  /// Throws ModelError when (p, n) lies outside the model's tables.
  void require(const Point& p, int n = 1) const;
};

/// The genus-0 model of P^1 built from closed forms.
class P1Model final : public CurveModel {
 public:
  int genus() const override { return 0; }
  Divisor special_divisor() const override { return {}; }
  LaurentSeries eta_expansion(const Point& p, int n, const Point& q, int order) const override;
  Rat eta_const(const Point& p, int n, const Point& q) const override;
  LaurentSeries u_expansion(const Point& p, int n, int order) const override;
  Rat prime_const(const Point& p, const Point& q) const override;
  LaurentSeries e_expansion(const Point& p, const Point& r, int order) const override;
  std::string name() const override { return "p1"; }
};

const P1Model& p1_model();

/// Model read from tables.  e_P is derived from c, eta_const and u:
///   e_{P,R} = c(P,R) t^{delta_PR} exp(-sum_n eta_R^(n)(P) u_R^(n)).
class TabulatedModel final : public CurveModel {
 public:
  /// Parses and validates; throws ModelError naming the first failed identity.
  static TabulatedModel from_json(const nlohmann::json& j);
  static TabulatedModel load(const std::filesystem::path& file);
  /// Tables of `source` on a point panel, windows known to O(t^precision).
  static nlohmann::json tabulate(const CurveModel& source, const std::vector<Point>& points, int max_index,
                                 int precision);

  int genus() const override { return genus_; }
  Divisor special_divisor() const override { return special_; }
  LaurentSeries eta_expansion(const Point& p, int n, const Point& q, int order) const override;
  Rat eta_const(const Point& p, int n, const Point& q) const override;
  LaurentSeries u_expansion(const Point& p, int n, int order) const override;
  Rat prime_const(const Point& p, const Point& q) const override;
  LaurentSeries e_expansion(const Point& p, const Point& r, int order) const override;
  std::optional<std::vector<Point>> panel() const override { return points_; }
  std::optional<int> max_index() const override { return max_index_; }
  std::string name() const override { return "tabulated"; }

  int precision() const noexcept { return precision_; }

 private:
  TabulatedModel() = default;
  void validate() const;

  int genus_ = 0;
  Divisor special_;
  std::vector<Point> points_;
  int max_index_ = 0;
  int precision_ = 0;
  std::map<std::tuple<Point, int, Point>, LaurentSeries> eta_;
  std::map<std::tuple<Point, int, Point>, Rat> eta_const_;
  std::map<std::pair<Point, int>, LaurentSeries> u_;
  std::map<std::pair<Point, Point>, Rat> c_;
};

/// Result of running the interface identities over a panel.
struct ModelCheck {
  bool ok = true;
  std::vector<std::string> failures;
};
/// Duality, reciprocity (with same-point vanishing), antisymmetry of c,
/// the zero-constant convention and eta_const consistency, m, n <= max_index.
ModelCheck check_model(const CurveModel& model, const std::vector<Point>& points, int max_index);

/// A global additive function  sum coeffs[(P,n)] eta_P^(n) + constant.
struct ModelFunction {
  std::map<PoleIndex, Rat> coeffs;
  Rat constant;

  LaurentSeries expand(const CurveModel& model, const Point& q, int order = kDefaultPrecision) const;
  /// Partial adele listing the poles and the given points.
  Adele adele(const CurveModel& model, const std::vector<Point>& points, int order = kDefaultPrecision) const;
};

/// constant * prod f_{P_i Q_i}^{k_i}.
struct PrimeProduct {
  struct Factor {
    Point p;
    Point q;
    long exponent = 1;
  };
  Rat constant{1};
  std::vector<Factor> factors;

  Divisor divisor() const;
  /// Partial idele with e-expansion components at the given points plus the
  /// support of the divisor.
  Idele idele(const CurveModel& model, const std::vector<Point>& points, int order = kDefaultPrecision) const;
  /// The product as a rational function (genus 0).
  RationalFunction function() const;
  std::string str() const;
};

struct PrimeTaylor {
  Rat alpha;
  int valuation = 0;
  std::vector<Rat> phi;  // phi[n-1] = a_n: coefficient of u_R^(n)
};

/// Decomposes f_PQ at R as alpha t^val exp(sum a_n u_R^(n)) from the
/// model's e-expansions.
PrimeTaylor prime_taylor(const CurveModel& model, const Point& p, const Point& q, const Point& r, int order);
/// The same data from constants: alpha = c(P,R)/c(Q,R), val = delta_PR - delta_QR,
/// a_n = eta_R^(n)(Q) - eta_R^(n)(P).
PrimeTaylor prime_taylor_closed(const CurveModel& model, const Point& p, const Point& q, const Point& r, int order);

/// Exchange law from the prime-form constants alone.
struct ExchangeConstants {
  Rat lhs;
  Rat rhs;
  bool pass() const { return lhs == rhs; }
};
ExchangeConstants exchange_law_constants(const CurveModel& model, const Point& p, const Point& q, const Point& r,
                                         const Point& s);

}  // namespace p1qft
