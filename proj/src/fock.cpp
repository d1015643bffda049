#include "p1qft/fock.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "p1qft/errors.hpp"

namespace p1qft {

// ---------------------------------------------------------------- monomials

FockMonomial::FockMonomial(std::vector<Generator> gens) : gens_(std::move(gens)) {
  for (const auto& g : gens_)
    if (g.second < 1) throw DomainError("generator index must be positive, got " + std::to_string(g.second));
  std::sort(gens_.begin(), gens_.end());
}

FockMonomial FockMonomial::with(const Generator& g) const {
  FockMonomial m = *this;
  m.gens_.insert(std::upper_bound(m.gens_.begin(), m.gens_.end(), g), g);
  return m;
}

FockMonomial FockMonomial::without(std::size_t i) const {
  FockMonomial m = *this;
  m.gens_.erase(m.gens_.begin() + static_cast<std::ptrdiff_t>(i));
  return m;
}

Rat FockMonomial::symmetry_factor() const {
  Rat f(1);
  std::size_t run = 0;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    run = (i > 0 && gens_[i] == gens_[i - 1]) ? run + 1 : 1;
    f *= Rat(static_cast<long>(run));
  }
  return f;
}

std::string FockMonomial::str(const char* prefix) const {
  if (gens_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) os << "*";
    os << prefix << "[" << gens_[i].first << "," << gens_[i].second << "]";
  }
  return os.str();
}

namespace {

template <class Vec, class Fn>
std::string join_terms(const Vec& v, Fn key_str) {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : v.terms()) {
    const bool neg = c.sign() < 0;
    const Rat mag = neg ? -c : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    const std::string ks = key_str(k);
    if (mag == Rat(1)) {
      os << ks;
    } else if (ks == "1") {
      os << mag;
    } else {
      os << mag << "*" << ks;
    }
  }
  return os.str();
}

}  // namespace

std::string charge_str(const Divisor& d) { return "e[" + d.str() + "]"; }

std::string to_string(const FockVector& v) {
  return join_terms(v, [](const FockMonomial& m) { return m.str(); });
}

std::string to_dual_string(const DualVector& u) {
  return join_terms(u, [](const FockMonomial& m) { return m.str("u"); });
}

std::string to_string(const ChargedFockVector& w) {
  return join_terms(w, [](const ChargedKey& k) {
    std::string s = charge_str(k.charge);
    if (!k.mono.is_vacuum()) s += "*" + k.mono.str();
    return s;
  });
}

ChargedFockVector uncharged(const FockVector& v) {
  ChargedFockVector w;
  for (const auto& [m, c] : v.terms()) w.add({Divisor(), m}, c);
  return w;
}

void check_charges(const ChargedFockVector& w) {
  for (const auto& [k, c] : w.terms()) {
    if (k.charge.degree() != 0) {
      throw DomainError("charge " + k.charge.str() + " has degree " + std::to_string(k.charge.degree()) + ", not 0");
    }
  }
}

// ---------------------------------------------------------------- Heisenberg action

std::map<int, Rat> principal_in_v_basis(const CurveModel& model, const Point& p, const LaurentSeries& x) {
  std::map<int, Rat> b;
  if (x.is_zero_window() || x.valuation() >= 0) return b;
  const int k = -x.valuation();
  model.require(p, k);
  LaurentSeries r = x.truncated(0);
  for (int n = k; n >= 1; --n) {
    const Rat a = r.coeff(-n);
    if (a.is_zero()) continue;
    const LaurentSeries vn = model.v_expansion(p, n, 0).truncated(0);
    const Rat bn = a / vn.coeff(-n);
    b.emplace(n, bn);
    r = r - bn * vn;
  }
  return b;
}

namespace {

/// rho(x) with per-call caches of the creation part and contraction numbers.
class Rho {
 public:
  Rho(const Adele& x, const CurveModel& model) : x_(x), model_(model) {
    for (const auto& p : x.singular_support()) {
      for (const auto& [n, b] : principal_in_v_basis(model, p, x.component(p))) create_.emplace_back(Generator{p, n}, b);
    }
  }

  const std::vector<std::pair<Generator, Rat>>& creation() const { return create_; }

  const Rat& contraction(const Generator& g) {
    auto it = ann_.find(g);
    if (it != ann_.end()) return it->second;
    model_.require(g.first, g.second);
    const Rat c = local_cocycle(x_.component(g.first), model_.v_expansion(g.first, g.second, kDefaultPrecision));
    return ann_.emplace(g, c).first->second;
  }

  template <class Out>
  void apply(const FockMonomial& m, const Rat& coef, Out&& emit) {
    for (const auto& [g, b] : create_) emit(m.with(g), coef * b);
    const auto& gens = m.generators();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Rat& c = contraction(gens[i]);
      if (!c.is_zero()) emit(m.without(i), coef * c);
    }
  }

 private:
  const Adele& x_;
  const CurveModel& model_;
  std::vector<std::pair<Generator, Rat>> create_;
  std::map<Generator, Rat> ann_;
};

}  // namespace

FockVector heisenberg_act(const Adele& x, const FockVector& v, const CurveModel& model) {
  Rho rho(x, model);
  FockVector out;
  for (const auto& [m, c] : v.terms()) rho.apply(m, c, [&](const FockMonomial& k, const Rat& a) { out.add(k, a); });
  return out;
}

// ---------------------------------------------------------------- dual pairing

namespace {

class DualPairing {
 public:
  explicit DualPairing(const CurveModel& model) : model_(model) {}

  const Rat& local(const Generator& u, const Generator& v) {
    auto key = std::pair{u, v};
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Rat c;
    if (u.first == v.first) {
      const int order = std::max(u.second, v.second) + 2;
      c = local_cocycle(model_.u_expansion(u.first, u.second, order), model_.v_expansion(v.first, v.second, order));
    }
    return cache_.emplace(key, c).first->second;
  }

  Rat inductive(const FockMonomial& u, const FockMonomial& v) {
    if (u.degree() != v.degree()) return Rat(0);
    if (u.is_vacuum()) return Rat(1);
    auto key = std::pair{u, v};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const Generator& u1 = u.generators().front();
    const FockMonomial rest = u.without(0);
    Rat total;
    for (std::size_t i = 0; i < v.degree(); ++i) {
      const Rat& c = local(u1, v.generators()[i]);
      if (!c.is_zero()) total += c * inductive(rest, v.without(i));
    }
    memo_.emplace(key, total);
    return total;
  }

  Rat permanent(const FockMonomial& u, const FockMonomial& v) {
    const std::size_t k = u.degree();
    if (k != v.degree()) return Rat(0);
    // dp[mask]: sum over assignments of the first popcount(mask) rows to the columns in mask
    std::vector<Rat> dp(std::size_t{1} << k);
    dp[0] = Rat(1);
    for (std::size_t mask = 0; mask < dp.size(); ++mask) {
      if (dp[mask].is_zero()) continue;
      const std::size_t row = static_cast<std::size_t>(__builtin_popcountll(mask));
      if (row == k) continue;
      for (std::size_t col = 0; col < k; ++col) {
        if (mask & (std::size_t{1} << col)) continue;
        const Rat& c = local(u.generators()[row], v.generators()[col]);
        if (!c.is_zero()) dp[mask | (std::size_t{1} << col)] += dp[mask] * c;
      }
    }
    return dp.back();
  }

 private:
  const CurveModel& model_;
  std::map<std::pair<Generator, Generator>, Rat> cache_;
  std::map<std::pair<FockMonomial, FockMonomial>, Rat> memo_;
};

}  // namespace

Rat dual_pairing(const DualVector& u, const FockVector& v, const CurveModel& model) {
  DualPairing pairing(model);
  Rat total;
  for (const auto& [um, uc] : u.terms())
    for (const auto& [vm, vc] : v.terms()) total += uc * vc * pairing.inductive(um, vm);
  return total;
}

Rat dual_pairing_permanent(const DualVector& u, const FockVector& v, const CurveModel& model) {
  DualPairing pairing(model);
  Rat total;
  for (const auto& [um, uc] : u.terms())
    for (const auto& [vm, vc] : v.terms()) total += uc * vc * pairing.permanent(um, vm);
  return total;
}

DualVector contragradient_act(const DualVector& u, const Adele& x, const CurveModel& model,
                              const std::vector<Point>& points, int max_index) {
  std::vector<std::pair<Generator, Rat>> mult;
  for (const auto& p : points) {
    const LaurentSeries xp = x.component(p);
    for (int n = 1; n <= max_index; ++n) {
      model.require(p, n);
      const Rat c = local_cocycle(xp, model.v_expansion(p, n, kDefaultPrecision));
      if (!c.is_zero()) mult.emplace_back(Generator{p, n}, c);
    }
  }
  std::map<Generator, Rat> strip;
  for (const auto& p : x.singular_support()) {
    for (const auto& [n, b] : principal_in_v_basis(model, p, x.component(p))) strip.emplace(Generator{p, n}, b);
  }
  DualVector out;
  for (const auto& [m, c] : u.terms()) {
    for (const auto& [g, a] : mult) out.add(m.with(g), c * a);
    const auto& gens = m.generators();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      auto it = strip.find(gens[i]);
      if (it != strip.end()) out.add(m.without(i), c * it->second);
    }
  }
  return out;
}

// ---------------------------------------------------------------- charged space

Rat adele_at_divisor(const Adele& x, const Divisor& d) {
  Rat total;
  for (const auto& [p, n] : d.support()) total += Rat(n) * x.component(p).coeff(0);
  return total;
}

ChargedFockVector charged_act(const Adele& x, const ChargedFockVector& w, const CurveModel& model) {
  check_charges(w);
  Rho rho(x, model);
  std::map<Divisor, Rat> xd;
  ChargedFockVector out;
  for (const auto& [k, c] : w.terms()) {
    auto it = xd.find(k.charge);
    if (it == xd.end()) it = xd.emplace(k.charge, adele_at_divisor(x, k.charge)).first;
    out.add(k, -(it->second) * c);
    rho.apply(k.mono, c, [&](const FockMonomial& m, const Rat& a) { out.add({k.charge, m}, a); });
  }
  return out;
}

ChargedFockVector drx_act(const Adele& x, const ChargedFockVector& w, const CurveModel& model) {
  return charged_act(x, w, model);
}

ChargedFockVector shift(const Divisor& d, const ChargedFockVector& w) {
  if (d.degree() != 0) throw DomainError("shift by " + d.str() + ": degree must be 0");
  ChargedFockVector out;
  for (const auto& [k, c] : w.terms()) out.add({k.charge + d, k.mono}, c);
  return out;
}

// ---------------------------------------------------------------- R_X

namespace {

/// Local data of a = alpha t^v exp(phi) at each point, computed on demand.
class IdeleLocal {
 public:
  IdeleLocal(const Idele& a, const CurveModel& model) : a_(a), model_(model) {}

  const Rat& alpha(const Point& p) {
    auto it = alpha_.find(p);
    if (it != alpha_.end()) return it->second;
    return alpha_.emplace(p, ls_leading(a_.component(p))).first->second;
  }

  const Rat& translation(const Generator& g) {
    auto it = trans_.find(g);
    if (it != trans_.end()) return it->second;
    model_.require(g.first, g.second);
    auto pit = phi_.find(g.first);
    if (pit == phi_.end()) {
      const LaurentSeries s = a_.component(g.first);
      const int v = ls_valuation(s);
      pit = phi_.emplace(g.first, ls_log(ls_leading(s).inverse() * s.shifted(-v))).first;
    }
    const Rat c = local_cocycle(pit->second, model_.v_expansion(g.first, g.second, kDefaultPrecision));
    return trans_.emplace(g, c).first->second;
  }

 private:
  const Idele& a_;
  const CurveModel& model_;
  std::map<Point, Rat> alpha_;
  std::map<Point, LaurentSeries> phi_;
  std::map<Generator, Rat> trans_;
};

}  // namespace

ChargedFockVector rx_act(const Idele& a, const ChargedFockVector& w, const CurveModel& model) {
  check_charges(w);
  const IdeleDivisor da = idele_divisor(a);
  if (da.degree != 0) {
    throw DomainError("R_X needs a degree-0 idele; divisor " + da.divisor.str() + " has degree " +
                      std::to_string(da.degree));
  }
  IdeleLocal local(a, model);
  ChargedFockVector out;
  for (const auto& [k, c] : w.terms()) {
    std::set<Point> pts;
    for (const auto& [p, n] : da.divisor.support()) pts.insert(p);
    for (const auto& [p, n] : k.charge.support()) pts.insert(p);
    long sign_exp = 0;
    Rat scalar = c;
    for (const auto& p : pts) {
      const long va = da.divisor.at(p);
      const long vd = k.charge.at(p);
      sign_exp += va * vd;
      const long e = -va - 2 * vd;
      if (e != 0) scalar *= local.alpha(p).pow(e);
    }
    if (sign_exp % 2 != 0) scalar = -scalar;
    // exp(rho(phi)) translates each generator g by its contraction number.
    FockVector expanded(FockMonomial(), scalar);
    for (const auto& g : k.mono.generators()) {
      const Rat& t = local.translation(g);
      FockVector next;
      for (const auto& [m, x] : expanded.terms()) {
        next.add(m.with(g), x);
        next.add(m, x * t);
      }
      expanded = std::move(next);
    }
    const Divisor charge = k.charge + da.divisor;
    for (const auto& [m, x] : expanded.terms()) out.add({charge, m}, x);
  }
  return out;
}

}  // namespace p1qft
