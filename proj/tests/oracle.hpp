#pragma once
// Independent reference computations and seeded generators for the tests.
// Oracles work from closed forms on the projective line and do not call the
// series or matching code they check.

#include <map>
#include <random>
#include <vector>

#include "p1qft/expectation.hpp"
#include "p1qft/fock.hpp"
#include "p1qft/function_field.hpp"
#include "p1qft/model.hpp"
#include "p1qft/rat.hpp"

namespace oracle {

using p1qft::Divisor;
using p1qft::FockMonomial;
using p1qft::FockVector;
using p1qft::Generator;
using p1qft::Point;
using p1qft::Rat;
using p1qft::RationalFunction;

inline Point inf() { return Point::infinity(); }

inline const std::vector<Point>& panel6() {
  static const std::vector<Point> p{-2, -1, 0, 1, 2, Point::infinity()};
  return p;
}

inline const std::vector<Point>& panel7() {
  static const std::vector<Point> p{-2, -1, 0, 1, 2, 3, Point::infinity()};
  return p;
}

/// Generalized binomial coefficient (a choose k) for integer a, k >= 0.
inline Rat gbinom(long a, long k) {
  Rat r(1);
  for (long i = 0; i < k; ++i) r = r * Rat(a - i) / Rat(i + 1);
  return r;
}

/// Taylor coefficients of (c + t)^m up to t^(len-1), c != 0.
inline std::vector<Rat> shifted_power(const Rat& c, long m, int len) {
  std::vector<Rat> out(len);
  for (int k = 0; k < len; ++k) out[k] = gbinom(m, k) * c.pow(m - k);
  return out;
}

inline std::vector<Rat> mul_trunc(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  std::vector<Rat> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size() && j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

/// Res_P(f dz) at a finite point: Taylor coefficient of (z-P)^k f.
inline Rat residue_finite(const RationalFunction& f, const Rat& p) {
  long k = 0;
  if (auto it = f.factors().find(p); it != f.factors().end()) k = -it->second;
  if (k <= 0) return Rat(0);
  std::vector<Rat> g(k, Rat(0));
  g[0] = f.scale();
  for (const auto& [r, m] : f.factors())
    if (r != p) g = mul_trunc(g, shifted_power(p - r, m, static_cast<int>(k)));
  return g[k - 1];
}

/// Res_inf(f dz): minus the coefficient of 1/z in the expansion at infinity.
inline Rat residue_infinity(const RationalFunction& f) {
  // f = scale z^d prod (1 - r/z)^m with d = sum m; coefficient of z^-1 is
  // the coefficient of s^(d+1) in prod (1 - r s)^m, s = 1/z.
  long d = 0;
  for (const auto& [r, m] : f.factors()) d += m;
  if (d + 1 < 0) return Rat(0);
  const int len = static_cast<int>(d + 2);
  std::vector<Rat> g(len, Rat(0));
  g[0] = f.scale();
  for (const auto& [r, m] : f.factors()) {
    std::vector<Rat> h(len);
    for (int k = 0; k < len; ++k) h[k] = gbinom(m, k) * (-r).pow(k);
    g = mul_trunc(g, h);
  }
  return -g[d + 1];
}

inline Rat residue(const RationalFunction& f, const Point& p) {
  return p.is_finite() ? residue_finite(f, p.value()) : residue_infinity(f);
}

/// Leading coefficient and valuation of f at p in the uniformizer z-P or 1/z.
inline std::pair<Rat, long> leading(const RationalFunction& f, const Point& p) {
  if (p.is_infinite()) {
    long d = 0;
    for (const auto& [r, m] : f.factors()) d += m;
    return {f.scale(), -d};
  }
  Rat c = f.scale();
  long v = 0;
  for (const auto& [r, m] : f.factors()) {
    if (r == p.value()) {
      v = m;
    } else {
      c *= (p.value() - r).pow(m);
    }
  }
  return {c, v};
}

/// Tame symbol from leading coefficients.
inline Rat tame(const RationalFunction& f, const RationalFunction& g, const Point& p) {
  const auto [lf, a] = leading(f, p);
  const auto [lg, b] = leading(g, p);
  Rat sign((a * b) % 2 == 0 ? 1 : -1);
  return sign * lf.pow(b) / lg.pow(a);
}

/// Two-point coefficient c^(mn)_PQ = -Res_Q(eta_P^(m) d eta_Q^(n)) in closed form.
inline Rat c2(const Generator& a, const Generator& b) {
  const auto& [p, m] = a;
  const auto& [q, n] = b;
  if (p == q) return Rat(0);
  if (p.is_finite() && q.is_finite()) return gbinom(-m, n) * (q.value() - p.value()).pow(-m - n) / Rat(m);
  if (p.is_infinite()) return n > m ? Rat(0) : gbinom(m, n) * q.value().pow(m - n) / Rat(m);
  // P finite, Q = inf
  if (n < m) return Rat(0);
  return gbinom(n - 1, n - m) * p.value().pow(n - m) / Rat(m);
}

/// Constant term of eta_P^(n) at Q.
inline Rat eta_const(const Point& p, int n, const Point& q) {
  if (p == q || q.is_infinite()) return Rat(0);
  if (p.is_infinite()) return -q.value().pow(n) / Rat(n);
  return -(q.value() - p.value()).pow(-n) / Rat(n);
}

/// Genus-0 prime-form constant.
inline Rat prime_const(const Point& p, const Point& q) {
  if (p.is_infinite() && q.is_infinite()) return Rat(-1);
  if (p.is_infinite()) return Rat(1);
  if (q.is_infinite()) return Rat(-1);
  if (p == q) return Rat(1);
  return q.value() - p.value();
}

/// Coefficient of x_0 ... x_{k-1} in exp(sum_{i<j} a_ij x_i x_j + sum b_i x_i),
/// computed in the multilinear quotient ring by summing powers.
inline Rat exp_coefficient(const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& b) {
  const std::size_t k = b.size();
  const std::size_t full = (std::size_t{1} << k) - 1;
  std::vector<Rat> q(full + 1);
  for (std::size_t i = 0; i < k; ++i) {
    q[std::size_t{1} << i] += b[i];
    for (std::size_t j = i + 1; j < k; ++j) q[(std::size_t{1} << i) | (std::size_t{1} << j)] += a[i][j];
  }
  auto mul = [&](const std::vector<Rat>& x, const std::vector<Rat>& y) {
    std::vector<Rat> z(full + 1);
    for (std::size_t s = 0; s <= full; ++s) {
      if (x[s].is_zero()) continue;
      const std::size_t rest = full & ~s;
      for (std::size_t t = rest;; t = (t - 1) & rest) {
        if (!y[t].is_zero()) z[s | t] += x[s] * y[t];
        if (t == 0) break;
      }
    }
    return z;
  };
  std::vector<Rat> term(full + 1), total(full + 1);
  term[0] = Rat(1);
  total[0] = Rat(1);
  // term = q^j / j!
  for (std::size_t j = 1; j <= k; ++j) {
    term = mul(term, q);
    for (auto& x : term) x /= Rat(static_cast<long>(j));
    for (std::size_t s = 0; s <= full; ++s) total[s] += term[s];
  }
  return total[full];
}

/// <v_{g_1} ... v_{g_k} e_D> on the projective line via the exponential oracle.
inline Rat correlator(const std::vector<Generator>& g, const Divisor& d) {
  const std::size_t k = g.size();
  std::vector<std::vector<Rat>> a(k, std::vector<Rat>(k));
  std::vector<Rat> b(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) a[i][j] = -c2(g[i], g[j]);
    for (const auto& [q, n] : d.support()) b[i] += Rat(n) * eta_const(g[i].first, g[i].second, q);
  }
  return exp_coefficient(a, b);
}

/// c(D) = prod_{R,S} c(R,S)^{n_R n_S}.
inline Rat charge_weight(const Divisor& d) {
  Rat out(1);
  for (const auto& [r, nr] : d.support())
    for (const auto& [s, ns] : d.support()) out *= prime_const(r, s).pow(nr * ns);
  return out;
}

// ---------------------------------------------------------------- generators

struct Gen {
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  std::mt19937_64 rng;

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
  Rat small_rat(long range = 9, long den = 4) {
    return Rat(integer(-range, range), integer(1, den));
  }
  Rat nonzero_rat(long range = 9, long den = 4) {
    Rat r;
    while (r.is_zero()) r = small_rat(range, den);
    return r;
  }
  Point panel_point(const std::vector<Point>& panel) {
    return panel[static_cast<std::size_t>(integer(0, static_cast<long>(panel.size()) - 1))];
  }
  /// Factored function with at most `max_factors` linear factors.
  RationalFunction rational(int max_factors = 8, long max_mult = 3, long root_range = 12) {
    std::map<Rat, long> f;
    const long count = integer(0, max_factors);
    for (long i = 0; i < count; ++i) {
      long m = integer(1, max_mult) * (integer(0, 1) ? 1 : -1);
      f[Rat(integer(-root_range, root_range), integer(1, 3))] += m;
    }
    std::erase_if(f, [](const auto& kv) { return kv.second == 0; });
    return RationalFunction(nonzero_rat(), f);
  }
  /// Function with all poles on finite panel points and a polynomial part.
  RationalFunction panel_rational(const std::vector<Point>& panel, int max_poles = 3) {
    std::map<Rat, long> f;
    const long count = integer(1, max_poles);
    for (long i = 0; i < count; ++i) {
      const Point p = panel_point(panel);
      if (p.is_finite()) f[p.value()] -= integer(1, 2);
    }
    const long zeros = integer(0, 3);
    for (long i = 0; i < zeros; ++i) f[Rat(integer(-12, 12), integer(1, 3))] += 1;
    std::erase_if(f, [](const auto& kv) { return kv.second == 0; });
    return RationalFunction(nonzero_rat(), f);
  }
  Generator generator(const std::vector<Point>& panel, int max_index) {
    return {panel_point(panel), static_cast<int>(integer(1, max_index))};
  }
  FockMonomial monomial(const std::vector<Point>& panel, int max_degree, int max_index) {
    std::vector<Generator> g;
    const long deg = integer(0, max_degree);
    for (long i = 0; i < deg; ++i) g.push_back(generator(panel, max_index));
    return FockMonomial(std::move(g));
  }
  FockVector fock(const std::vector<Point>& panel, int terms, int max_degree, int max_index) {
    FockVector v;
    for (int i = 0; i < terms; ++i) v.add(monomial(panel, max_degree, max_index), nonzero_rat());
    return v;
  }
  /// Degree-0 divisor with support at most `max_support` panel points.
  Divisor charge(const std::vector<Point>& panel, int max_support = 3) {
    Divisor d;
    const long k = integer(0, max_support - 1);
    for (long i = 0; i < k; ++i) d += Divisor::point(panel_point(panel), integer(-2, 2));
    // balance on one more panel point
    d += Divisor::point(panel_point(panel), -d.degree());
    while (static_cast<int>(d.support().size()) > max_support) d = Divisor();
    return d;
  }
};

}  // namespace oracle
