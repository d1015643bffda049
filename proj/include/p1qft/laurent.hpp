#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "p1qft/rat.hpp"

namespace p1qft {

/// Window length used when no precision is requested explicitly.
inline constexpr int kDefaultPrecision = 24;

class LaurentSeries;

/// Recomputes a series to at least the requested precision. Attached to
/// series that come from an exactly known object (a rational function or an
/// exact combination of such).
using SeriesSource = std::function<LaurentSeries(int precision)>;

/// Truncated formal Laurent series  sum_{v <= n < N} c_n t^n + O(t^N)
/// with exact rational coefficients.
///
/// Canonical form: the coefficient at the valuation is nonzero; the zero
/// window has no coefficients and valuation == precision.  Series flagged
/// exact carry a source and re-expand on demand; windowed series throw
/// PrecisionError when asked for anything past N.
class LaurentSeries {
 public:
  /// The zero series O(t^precision).
  explicit LaurentSeries(int precision = kDefaultPrecision);

  /// Coefficients `coeffs[i]` sit at exponent `valuation + i`; the window ends
  /// at valuation + coeffs.size().  Leading zeros are stripped.
  LaurentSeries(int valuation, std::vector<Rat> coeffs);
  LaurentSeries(int valuation, std::vector<Rat> coeffs, int precision);

  /// Exact Laurent polynomial: every coefficient outside `coeffs` is zero.
  static LaurentSeries polynomial(int valuation, std::vector<Rat> coeffs,
                                  int precision = kDefaultPrecision);
  static LaurentSeries monomial(const Rat& c, int exponent,
                                int precision = kDefaultPrecision);
  static LaurentSeries constant(const Rat& c, int precision = kDefaultPrecision) {
    return monomial(c, 0, precision);
  }

  /// Wraps a source: the returned series is exact and expanded to `precision`.
  static LaurentSeries from_source(SeriesSource source, int precision);

  int valuation() const noexcept { return valuation_; }
  int precision() const noexcept { return precision_; }
  bool exact() const noexcept { return static_cast<bool>(source_); }
  bool is_zero_window() const noexcept { return coeffs_.empty(); }

  /// Coefficient of t^n. Below the valuation this is 0; past the window an
  /// exact series re-expands, a windowed one throws PrecisionError.
  Rat coeff(int n) const;
  /// Leading coefficient; throws for an all-zero window.
  const Rat& leading() const;
  const std::vector<Rat>& coefficients() const noexcept { return coeffs_; }

  /// A copy known to at least `precision` (exact series only).
  LaurentSeries extended(int precision) const;
  /// Drop the exact flag and cut the window at `precision`.
  LaurentSeries truncated(int precision) const;
  /// The same window with the exact flag removed.
  LaurentSeries windowed() const;

  LaurentSeries operator-() const;
  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const Rat& c, const LaurentSeries& a);

  /// Multiplicative inverse; window length is preserved.
  LaurentSeries inverse() const;
  /// Multiply by t^k.
  LaurentSeries shifted(int k) const;
  /// Formal derivative d/dt; the window shrinks by one.
  LaurentSeries derivative() const;

  /// Structural equality on the common window; exact flags are ignored.
  bool same_window(const LaurentSeries& other) const;

  std::string str() const;

 private:
  void canonicalize();

  int valuation_ = 0;
  int precision_ = kDefaultPrecision;
  std::vector<Rat> coeffs_;
  std::shared_ptr<const SeriesSource> source_;
};

std::ostream& operator<<(std::ostream& os, const LaurentSeries& s);

/// A local differential  s(t) dt  at some point.
struct LocalDifferential {
  LaurentSeries body;
  std::string uniformizer_tag;
};

enum class SeriesOp { add, mul, inv };

/// Field arithmetic of k((t)). For `inv` only `a` is used.
LaurentSeries ls_arith(const LaurentSeries& a, const LaurentSeries& b, SeriesOp op);

/// Coefficient of t^-1 dt.
Rat ls_residue(const LocalDifferential& w);
/// Residue of a series read as s(t) dt.
Rat residue_of(const LaurentSeries& body);

LocalDifferential ls_d(const LaurentSeries& a);
/// d(a)/a; DomainError on the zero series.
LocalDifferential ls_dlog(const LaurentSeries& a);
/// exp(a) for valuation(a) >= 1.
LaurentSeries ls_exp(const LaurentSeries& a);
/// log(a) for a unit with constant term 1.
LaurentSeries ls_log(const LaurentSeries& a);

/// Valuation of a nonzero series; an exact series with an all-zero window is
/// re-expanded to find its leading term.  DomainError for the zero series.
int ls_valuation(const LaurentSeries& a);
/// Leading coefficient, with the same probing as ls_valuation.
Rat ls_leading(const LaurentSeries& a);

/// -Res(x dy): the local residue cocycle.
Rat local_cocycle(const LaurentSeries& x, const LaurentSeries& y);

}  // namespace p1qft
