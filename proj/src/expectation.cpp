#include "p1qft/expectation.hpp"

#include <vector>

#include "p1qft/errors.hpp"

namespace p1qft {

const Rat& CoefficientTable::c2(const Generator& a, const Generator& b) {
  auto key = std::pair{a, b};
  auto it = c2_.find(key);
  if (it != c2_.end()) return it->second;
  model_.require(a.first, a.second);
  model_.require(b.first, b.second);
  const int order = a.second + b.second + 2;
  const Point& q = b.first;
  const Rat c = -residue_of(model_.eta_expansion(a.first, a.second, q, order) *
                            model_.eta_expansion(q, b.second, q, order).derivative());
  return c2_.emplace(key, c).first->second;
}

Rat CoefficientTable::lin(const Generator& g, const Divisor& d) {
  Rat total;
  for (const auto& [q, n] : d.support()) {
    auto key = std::tuple{g.first, g.second, q};
    auto it = eta0_.find(key);
    if (it == eta0_.end()) {
      model_.require(q);
      it = eta0_.emplace(key, model_.eta_const(g.first, g.second, q)).first;
    }
    total += Rat(n) * it->second;
  }
  return total;
}

Rat CoefficientTable::cD(const Divisor& d) {
  Rat total(1);
  for (const auto& [r, nr] : d.support())
    for (const auto& [s, ns] : d.support()) total *= model_.prime_const(r, s).pow(nr * ns);
  return total;
}

namespace {

void check_degree(const FockMonomial& m, int cap) {
  if (static_cast<int>(m.degree()) > cap) {
    throw DomainError("monomial " + m.str() + " has degree " + std::to_string(m.degree()) +
                      ", above the degree cap " + std::to_string(cap));
  }
}

}  // namespace

Rat wick_perfect(CoefficientTable& table, const FockMonomial& m) {
  const auto& g = m.generators();
  const std::size_t k = g.size();
  if (k % 2 != 0) return Rat(0);
  // memo[mask]: sum over perfect matchings of the positions in mask
  const std::size_t full = (std::size_t{1} << k) - 1;
  std::vector<Rat> memo(full + 1);
  std::vector<bool> done(full + 1, false);
  memo[0] = Rat(1);
  done[0] = true;
  auto rec = [&](auto&& self, std::size_t mask) -> Rat {
    if (done[mask]) return memo[mask];
    const std::size_t i = static_cast<std::size_t>(__builtin_ctzll(mask));
    const std::size_t rest = mask & ~(std::size_t{1} << i);
    Rat total;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (!(rest & (std::size_t{1} << j))) continue;
      const Rat& c = table.c2(g[i], g[j]);
      if (!c.is_zero()) total -= c * self(self, rest & ~(std::size_t{1} << j));
    }
    done[mask] = true;
    memo[mask] = total;
    return total;
  };
  return rec(rec, full);
}

Rat wick_partial(CoefficientTable& table, const FockMonomial& m, const Divisor& d) {
  const auto& g = m.generators();
  const std::size_t k = g.size();
  std::vector<Rat> lin(k);
  for (std::size_t i = 0; i < k; ++i) lin[i] = table.lin(g[i], d);
  const std::size_t full = (std::size_t{1} << k) - 1;
  std::vector<Rat> memo(full + 1);
  std::vector<bool> done(full + 1, false);
  memo[0] = Rat(1);
  done[0] = true;
  auto rec = [&](auto&& self, std::size_t mask) -> Rat {
    if (done[mask]) return memo[mask];
    const std::size_t i = static_cast<std::size_t>(__builtin_ctzll(mask));
    const std::size_t rest = mask & ~(std::size_t{1} << i);
    Rat total;
    if (!lin[i].is_zero()) total += lin[i] * self(self, rest);
    for (std::size_t j = i + 1; j < k; ++j) {
      if (!(rest & (std::size_t{1} << j))) continue;
      const Rat& c = table.c2(g[i], g[j]);
      if (!c.is_zero()) total -= c * self(self, rest & ~(std::size_t{1} << j));
    }
    done[mask] = true;
    memo[mask] = total;
    return total;
  };
  return rec(rec, full);
}

Rat corr_additive(const FockVector& v, const CurveModel& model, int degree_cap) {
  CoefficientTable table(model);
  Rat total;
  for (const auto& [m, c] : v.terms()) {
    check_degree(m, degree_cap);
    total += c * wick_perfect(table, m);
  }
  return total;
}

Rat corr_charged(const ChargedFockVector& w, const CurveModel& model, int degree_cap) {
  check_charges(w);
  CoefficientTable table(model);
  Rat total;
  for (const auto& [k, c] : w.terms()) {
    check_degree(k.mono, degree_cap);
    total += c * wick_partial(table, k.mono, k.charge);
  }
  return total;
}

Rat corr_multiplicative(const ChargedFockVector& w, const CurveModel& model, int degree_cap) {
  check_charges(w);
  CoefficientTable table(model);
  std::map<Divisor, Rat> weights;
  Rat total;
  for (const auto& [k, c] : w.terms()) {
    check_degree(k.mono, degree_cap);
    auto it = weights.find(k.charge);
    if (it == weights.end()) it = weights.emplace(k.charge, table.cD(k.charge)).first;
    total += c * it->second * wick_partial(table, k.mono, k.charge);
  }
  return total;
}

Rat ward_additive(const Adele& f, const FockVector& v, const CurveModel& model, int degree_cap) {
  return corr_additive(heisenberg_act(f, v, model), model, degree_cap);
}

Rat ward_additive(const Adele& f, const ChargedFockVector& w, const CurveModel& model, int degree_cap) {
  return corr_charged(charged_act(f, w, model), model, degree_cap);
}

WardPair ward_multiplicative(const Idele& m, const ChargedFockVector& w, const CurveModel& model, int degree_cap) {
  return {corr_multiplicative(rx_act(m, w, model), model, degree_cap), corr_multiplicative(w, model, degree_cap)};
}

Rat h_coefficient(const CurveModel& model, const Point& p, const Point& q, const Divisor& d) {
  if (p == q) throw DomainError("h(P,Q;D) needs P != Q");
  auto c = [&](const Point& a, const Point& b) { return model.prime_const(a, b); };
  Rat h = c(p, p) * c(q, q) / (c(p, q) * c(q, p));
  for (const auto& [r, n] : d.support()) h *= (c(p, r) / c(q, r)).pow(-2 * n);
  if ((d.at(p) + d.at(q)) % 2 != 0) h = -h;
  return h;
}

WardPair rec_c_check(const CurveModel& model, const Point& p, const Point& q, const Divisor& d) {
  CoefficientTable table(model);
  const Divisor next = d + Divisor::point(q) - Divisor::point(p);
  return {table.cD(next), h_coefficient(model, p, q, d) * table.cD(d)};
}

}  // namespace p1qft
