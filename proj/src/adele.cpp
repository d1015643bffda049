#include "p1qft/adele.hpp"

#include "p1qft/errors.hpp"

namespace p1qft {

namespace {

std::set<Point> tail_poles(const std::vector<RationalFunction>& tail) {
  std::set<Point> out;
  for (const auto& f : tail)
    for (const auto& [p, k] : f.poles()) out.insert(p);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Adele

Adele::Adele(const RationalFunction& f) {
  if (!f.is_zero()) tail_.push_back(f);
}

Adele::Adele(std::map<Point, LaurentSeries> parts, std::vector<RationalFunction> tail, bool complete)
    : parts_(std::move(parts)), complete_(complete) {
  for (auto& f : tail)
    if (!f.is_zero()) tail_.push_back(std::move(f));
}

Adele Adele::local(const Point& p, LaurentSeries s) { return Adele({{p, std::move(s)}}, {}); }

Adele Adele::partial(std::map<Point, LaurentSeries> parts) { return Adele(std::move(parts), {}, false); }

LaurentSeries Adele::component(const Point& p, int order) const {
  if (auto it = parts_.find(p); it != parts_.end()) return it->second;
  if (!complete_) throw DomainError("adele component at " + p.str() + " is not known");
  LaurentSeries acc = LaurentSeries::polynomial(order, {}, order);
  for (const auto& f : tail_) acc = acc + rf_expand_at(f, p, order);
  return acc;
}

std::set<Point> Adele::singular_support() const {
  std::set<Point> out = tail_poles(tail_);
  for (const auto& [p, s] : parts_) out.insert(p);
  return out;
}

Adele operator+(const Adele& a, const Adele& b) {
  std::map<Point, LaurentSeries> parts;
  for (const auto& [p, s] : a.parts_) parts.emplace(p, s + b.component(p, s.precision()));
  for (const auto& [p, s] : b.parts_)
    if (!parts.count(p)) parts.emplace(p, a.component(p, s.precision()) + s);
  std::vector<RationalFunction> tail = a.tail_;
  tail.insert(tail.end(), b.tail_.begin(), b.tail_.end());
  return Adele(std::move(parts), std::move(tail), a.complete_ && b.complete_);
}

Adele operator*(const Rat& c, const Adele& a) {
  std::map<Point, LaurentSeries> parts;
  for (const auto& [p, s] : a.parts_) parts.emplace(p, c * s);
  std::vector<RationalFunction> tail;
  for (const auto& f : a.tail_) tail.push_back(RationalFunction(c) * f);
  return Adele(std::move(parts), std::move(tail), a.complete_);
}

// ---------------------------------------------------------------- Idele

Idele::Idele(const RationalFunction& f) : tail_(f) {
  if (f.is_zero()) throw DomainError("the zero function is not an idele");
}

Idele::Idele(std::map<Point, LaurentSeries> units, RationalFunction tail, bool complete)
    : units_(std::move(units)), tail_(std::move(tail)), complete_(complete) {
  if (tail_.is_zero()) throw DomainError("idele tail must be nonzero");
  for (const auto& [p, s] : units_) {
    if (s.is_zero_window() && !s.exact()) throw DomainError("zero idele component at " + p.str());
  }
}

Idele Idele::partial(std::map<Point, LaurentSeries> units) {
  return Idele(std::move(units), RationalFunction(Rat(1)), false);
}

LaurentSeries Idele::component(const Point& p, int order) const {
  if (auto it = units_.find(p); it != units_.end()) return it->second;
  if (!complete_) throw DomainError("idele component at " + p.str() + " is not known");
  return rf_expand_at(tail_, p, order);
}

std::set<Point> Idele::support() const {
  std::set<Point> out;
  for (const auto& [p, n] : rf_divisor(tail_).support()) out.insert(p);
  for (const auto& [p, s] : units_) out.insert(p);
  return out;
}

Idele operator*(const Idele& a, const Idele& b) {
  std::map<Point, LaurentSeries> units;
  for (const auto& [p, s] : a.units_) units.emplace(p, s * b.component(p, s.precision()));
  for (const auto& [p, s] : b.units_)
    if (!units.count(p)) units.emplace(p, a.component(p, s.precision()) * s);
  return Idele(std::move(units), a.tail_ * b.tail_, a.complete_ && b.complete_);
}

Idele Idele::inverse() const {
  std::map<Point, LaurentSeries> units;
  for (const auto& [p, s] : units_) units.emplace(p, s.inverse());
  return Idele(std::move(units), tail_.inverse(), complete_);
}

// ---------------------------------------------------------------- pairings

Rat c_X(const Adele& x, const Adele& y) {
  std::set<Point> pts = x.singular_support();
  for (const auto& p : y.singular_support()) pts.insert(p);
  Rat total;
  for (const auto& p : pts) total += local_cocycle(x.component(p), y.component(p));
  return total;
}

Rat res_x_pairing(const Adele& x, const Idele& a) {
  std::set<Point> pts = x.singular_support();
  for (const auto& p : a.support()) pts.insert(p);
  Rat total;
  for (const auto& p : pts) {
    total += residue_of(x.component(p) * ls_dlog(a.component(p)).body);
  }
  return total;
}

IdeleDivisor idele_divisor(const Idele& a) {
  IdeleDivisor out;
  for (const auto& p : a.support()) out.divisor += Divisor::point(p, ls_valuation(a.component(p)));
  out.degree = out.divisor.degree();
  return out;
}

}  // namespace p1qft
