#pragma once

#include <compare>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "p1qft/rat.hpp"

namespace p1qft {

/// A closed point of P^1 over Q: a finite coordinate or infinity.
/// Ordered by value with infinity last.
class Point {
 public:
  Point() : coord_(Rat(0)) {}
  Point(const Rat& x) : coord_(x) {}  // NOLINT(google-explicit-constructor)
  Point(long x) : coord_(Rat(x)) {}   // NOLINT(google-explicit-constructor)
  Point(int x) : coord_(Rat(x)) {}    // NOLINT(google-explicit-constructor)

  static Point infinity() {
    Point p;
    p.coord_.reset();
    return p;
  }
  /// `inf`, `∞`, or anything Rat::parse accepts.
  static Point parse(std::string_view text);

  bool is_infinite() const noexcept { return !coord_.has_value(); }
  bool is_finite() const noexcept { return coord_.has_value(); }
  /// The coordinate of a finite point.
  const Rat& value() const;

  friend bool operator==(const Point& a, const Point& b) { return a.coord_ == b.coord_; }
  friend std::strong_ordering operator<=>(const Point& a, const Point& b);

  std::string str() const;

 private:
  std::optional<Rat> coord_;
};

std::ostream& operator<<(std::ostream& os, const Point& p);

}  // namespace p1qft
