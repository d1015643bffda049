#include "p1qft/function_field.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

#include "p1qft/errors.hpp"

namespace p1qft {

// ---------------------------------------------------------------- Point

Point Point::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s == "inf" || s == "infinity" || s == "∞" || s == "oo") return infinity();
  return Point(Rat::parse(s));
}

const Rat& Point::value() const {
  if (!coord_) throw DomainError("coordinate of the point at infinity");
  return *coord_;
}

std::strong_ordering operator<=>(const Point& a, const Point& b) {
  if (a.is_infinite() || b.is_infinite()) {
    if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
    return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return *a.coord_ <=> *b.coord_;
}

std::string Point::str() const { return coord_ ? coord_->str() : "inf"; }

std::ostream& operator<<(std::ostream& os, const Point& p) { return os << p.str(); }

// ---------------------------------------------------------------- Divisor

Divisor::Divisor(std::map<Point, long> support) {
  for (const auto& [p, n] : support) add(p, n);
}

Divisor Divisor::point(const Point& p, long n) {
  Divisor d;
  d.add(p, n);
  return d;
}

void Divisor::add(const Point& p, long n) {
  if (n == 0) return;
  auto [it, inserted] = support_.emplace(p, n);
  if (!inserted) {
    it->second += n;
    if (it->second == 0) support_.erase(it);
  }
}

long Divisor::degree() const {
  long d = 0;
  for (const auto& [p, n] : support_) d += n;
  return d;
}

long Divisor::at(const Point& p) const {
  auto it = support_.find(p);
  return it == support_.end() ? 0 : it->second;
}

Divisor& Divisor::operator+=(const Divisor& o) {
  for (const auto& [p, n] : o.support_) add(p, n);
  return *this;
}

Divisor& Divisor::operator-=(const Divisor& o) {
  for (const auto& [p, n] : o.support_) add(p, -n);
  return *this;
}

Divisor Divisor::operator-() const { return Divisor() - *this; }

Divisor operator*(long k, const Divisor& d) {
  Divisor r;
  for (const auto& [p, n] : d.support_) r.add(p, k * n);
  return r;
}

std::string Divisor::str() const {
  if (support_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Positive part first, then the negative part, each in point order.
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& [p, n] : support_) {
      if ((pass == 0) != (n > 0)) continue;
      const long mag = n < 0 ? -n : n;
      if (first) {
        if (n < 0) os << "-";
      } else {
        os << (n < 0 ? "-" : "+");
      }
      first = false;
      if (mag != 1) os << mag << "*";
      os << "(" << p << ")";
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Divisor& d) { return os << d.str(); }

// ---------------------------------------------------------------- RationalFunction

RationalFunction::RationalFunction(const Rat& c) : scale_(c) {}

RationalFunction::RationalFunction(Rat scale, std::map<Rat, long> factors) : scale_(std::move(scale)) {
  if (scale_.is_zero()) return;
  for (auto& [r, m] : factors)
    if (m != 0) factors_.emplace(r, m);
}

namespace {

Rat horner(const std::vector<Rat>& c, const Rat& x) {
  Rat acc;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Synthetic division by (z - r); c is ascending and r is a root.
std::vector<Rat> deflate(const std::vector<Rat>& c, const Rat& r) {
  const std::size_t deg = c.size() - 1;
  std::vector<Rat> q(deg);
  Rat carry;
  for (std::size_t i = deg; i-- > 0;) {
    carry = c[i + 1] + carry * r;
    q[i] = carry;
  }
  return q;
}

// Trial division bound: rational-root search is meant for desk-scale input.
const mpz_class kMaxFactorable("1000000000000");

std::vector<mpz_class> positive_divisors(mpz_class n) {
  if (n < 0) n = -n;
  if (n > kMaxFactorable) throw DomainError("coefficient " + n.get_str() + " too large for rational-root search");
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

RationalFunction RationalFunction::from_polynomial(const std::vector<Rat>& coeffs_ascending) {
  std::vector<Rat> c = coeffs_ascending;
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  if (c.empty()) return RationalFunction();
  std::map<Rat, long> roots;
  std::size_t low = 0;
  while (c[low].is_zero()) ++low;
  if (low > 0) {
    roots[Rat(0)] += static_cast<long>(low);
    c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(low));
  }
  while (c.size() > 1) {
    // Rational root candidates p/q with p | a0, q | an after clearing denominators.
    mpz_class lcm_den = 1;
    for (const auto& x : c) lcm_den = lcm(lcm_den, x.denominator());
    const mpz_class a0 = c.front().numerator() * (lcm_den / c.front().denominator());
    const mpz_class an = c.back().numerator() * (lcm_den / c.back().denominator());
    bool found = false;
    for (const auto& p : positive_divisors(a0)) {
      for (const auto& q : positive_divisors(an)) {
        for (int s : {1, -1}) {
          const Rat r(mpq_class(s * p, q));
          if (horner(c, r).is_zero()) {
            roots[r] += 1;
            c = deflate(c, r);
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) {
      throw DomainError("polynomial has an irreducible factor of degree " +
                        std::to_string(c.size() - 1) + " over Q");
    }
  }
  return RationalFunction(c.front(), std::move(roots));
}

long RationalFunction::valuation_at(const Point& p) const {
  if (is_zero()) throw DomainError("valuation of the zero function");
  if (p.is_finite()) {
    auto it = factors_.find(p.value());
    return it == factors_.end() ? 0 : it->second;
  }
  long s = 0;
  for (const auto& [r, m] : factors_) s += m;
  return -s;
}

Rat RationalFunction::evaluate(const Point& p) const {
  if (is_zero()) return Rat(0);
  const long v = valuation_at(p);
  if (v < 0) throw DomainError("evaluation of " + str() + " at its pole " + p.str());
  if (v > 0) return Rat(0);
  if (p.is_infinite()) return scale_;
  Rat acc = scale_;
  for (const auto& [r, m] : factors_) acc *= (p.value() - r).pow(m);
  return acc;
}

std::map<Point, long> RationalFunction::poles() const {
  std::map<Point, long> out;
  if (is_zero()) return out;
  for (const auto& [r, m] : factors_)
    if (m < 0) out.emplace(Point(r), -m);
  const long vinf = valuation_at(Point::infinity());
  if (vinf < 0) out.emplace(Point::infinity(), -vinf);
  return out;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (is_zero() || o.is_zero()) {
    *this = RationalFunction();
    return *this;
  }
  scale_ *= o.scale_;
  for (const auto& [r, m] : o.factors_) {
    auto [it, inserted] = factors_.emplace(r, m);
    if (!inserted) {
      it->second += m;
      if (it->second == 0) factors_.erase(it);
    }
  }
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) { return *this *= o.inverse(); }

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw DomainError("inverse of the zero function");
  std::map<Rat, long> f;
  for (const auto& [r, m] : factors_) f.emplace(r, -m);
  return RationalFunction(scale_.inverse(), std::move(f));
}

RationalFunction RationalFunction::pow(long e) const {
  if (e == 0) return RationalFunction(Rat(1));
  if (is_zero()) {
    if (e < 0) throw DomainError("negative power of the zero function");
    return RationalFunction();
  }
  std::map<Rat, long> f;
  for (const auto& [r, m] : factors_) f.emplace(r, m * e);
  return RationalFunction(scale_.pow(e), std::move(f));
}

std::string RationalFunction::str() const {
  if (is_zero()) return "0";
  if (factors_.empty()) return scale_.str();
  std::ostringstream os;
  if (scale_ == Rat(-1)) {
    os << "-";
  } else if (scale_ != Rat(1)) {
    os << scale_ << "*";
  }
  bool first = true;
  for (const auto& [r, m] : factors_) {
    if (!first) os << "*";
    first = false;
    if (r.is_zero()) {
      os << "z";
    } else if (r.sign() > 0) {
      os << "(z-" << r << ")";
    } else {
      os << "(z+" << -r << ")";
    }
    if (m != 1) os << "^" << m;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const RationalFunction& f) { return os << f.str(); }

// ---------------------------------------------------------------- expansions

namespace {

// Truncated product of two power series of length len.
std::vector<Rat> mul_trunc(const std::vector<Rat>& a, const std::vector<Rat>& b, std::size_t len) {
  std::vector<Rat> c(len);
  for (std::size_t i = 0; i < len && i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < len && j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

// (1 + x t)^m to len terms.
std::vector<Rat> binomial_series(const Rat& x, long m, std::size_t len) {
  std::vector<Rat> c(len);
  Rat xk(1);
  for (std::size_t k = 0; k < len; ++k) {
    c[k] = binomial(m, static_cast<long>(k)) * xk;
    xk *= x;
  }
  return c;
}

LaurentSeries expand_window(const RationalFunction& f, const Point& p, int order) {
  if (f.is_zero()) return LaurentSeries(order);
  const long v = f.valuation_at(p);
  const int len = std::max(0, order - static_cast<int>(v));
  std::vector<Rat> unit(static_cast<std::size_t>(len));
  if (len == 0) return LaurentSeries(static_cast<int>(v), {}, order);
  unit[0] = f.scale();
  for (const auto& [r, m] : f.factors()) {
    if (p.is_finite()) {
      if (r == p.value()) continue;
      // z - r = (P - r)(1 + t/(P - r))
      const Rat a = p.value() - r;
      unit = mul_trunc(unit, binomial_series(a.inverse(), m, unit.size()), unit.size());
      const Rat am = a.pow(m);
      for (auto& x : unit) x *= am;
    } else {
      // z - r = t^-1 (1 - r t)
      if (r.is_zero()) continue;
      unit = mul_trunc(unit, binomial_series(-r, m, unit.size()), unit.size());
    }
  }
  return LaurentSeries(static_cast<int>(v), std::move(unit), order);
}

}  // namespace

LaurentSeries rf_expand_at(const RationalFunction& f, const Point& p, int order) {
  return LaurentSeries::from_source([f, p](int n) { return expand_window(f, p, n); }, order);
}

Divisor rf_divisor(const RationalFunction& f) {
  if (f.is_zero()) throw DomainError("divisor of the zero function");
  Divisor d;
  for (const auto& [r, m] : f.factors()) d += Divisor::point(Point(r), m);
  d += Divisor::point(Point::infinity(), f.valuation_at(Point::infinity()));
  return d;
}

LaurentSeries local_differential(const GlobalDifferential& w, const Point& p, int order) {
  if (p.is_finite()) return rf_expand_at(w.coefficient, p, order);
  // f(z) dz = -f(1/t) t^-2 dt
  return -rf_expand_at(w.coefficient, p, order + 2).shifted(-2);
}

Rat residue_at(const GlobalDifferential& w, const Point& p) {
  return residue_of(local_differential(w, p, 0));
}

ResidueSum residue_theorem_check(const GlobalDifferential& w) {
  ResidueSum out;
  if (w.coefficient.is_zero()) return out;
  for (const auto& [r, m] : w.coefficient.factors())
    if (m < 0) out.residues.emplace(Point(r), residue_at(w, Point(r)));
  // dz has a double pole at infinity.
  if (w.coefficient.valuation_at(Point::infinity()) < 2)
    out.residues.emplace(Point::infinity(), residue_at(w, Point::infinity()));
  for (const auto& [p, r] : out.residues) out.total += r;
  return out;
}

RationalFunction eta(const Point& p, int n) {
  if (n < 1) throw DomainError("eta index must be positive");
  if (p.is_finite()) return RationalFunction(Rat(-1, n), {{p.value(), -n}});
  return RationalFunction(Rat(-1, n), {{Rat(0), n}});
}

RationalFunction u_gen(const Point& p, int n) {
  if (n < 1) throw DomainError("u index must be positive");
  if (p.is_finite()) return RationalFunction(Rat(-1), {{p.value(), n}});
  return RationalFunction(Rat(-1), {{Rat(0), -n}});
}

PartialFractions partial_fractions(const RationalFunction& f) {
  PartialFractions out;
  if (f.is_zero()) return out;
  for (const auto& [p, order] : f.poles()) {
    const LaurentSeries s = rf_expand_at(f, p, 1);
    for (int j = 1; j <= order; ++j) {
      // eta_P^(j) = -t^-j / j in the local uniformizer
      const Rat c = -Rat(j) * s.coeff(-j);
      if (!c.is_zero()) out.coeffs.emplace(PoleIndex{p, j}, c);
    }
  }
  out.constant = rf_expand_at(f, Point::infinity(), 1).coeff(0);
  return out;
}

Rat PartialFractions::evaluate(const Point& p) const {
  Rat acc = constant;
  for (const auto& [idx, c] : coeffs) acc += c * eta(idx.first, idx.second).evaluate(p);
  return acc;
}

}  // namespace p1qft
