#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "p1qft/adele.hpp"
#include "p1qft/model.hpp"

namespace p1qft {

/// (P, n): the generator v_P^(n) (or u_P^(n) on the dual side).
using Generator = std::pair<Point, int>;

/// Sorted multiset of generators; the empty monomial is the vacuum.
class FockMonomial {
 public:
  FockMonomial() = default;
  explicit FockMonomial(std::vector<Generator> gens);

  const std::vector<Generator>& generators() const noexcept { return gens_; }
  std::size_t degree() const noexcept { return gens_.size(); }
  bool is_vacuum() const noexcept { return gens_.empty(); }

  FockMonomial with(const Generator& g) const;
  /// Drops the generator at position i.
  FockMonomial without(std::size_t i) const;
  /// Product of multiplicity factorials.
  Rat symmetry_factor() const;

  friend bool operator==(const FockMonomial&, const FockMonomial&) = default;
  friend auto operator<=>(const FockMonomial& a, const FockMonomial& b) { return a.gens_ <=> b.gens_; }

  /// `v[0,1]*v[1,1]`, `1` for the vacuum; `prefix` replaces `v`.
  std::string str(const char* prefix = "v") const;

 private:
  std::vector<Generator> gens_;
};

/// Finite linear combination with no zero coefficients stored.
template <class Key>
class SparseVector {
 public:
  using Terms = std::map<Key, Rat>;

  SparseVector() = default;
  explicit SparseVector(const Key& k, const Rat& c = Rat(1)) { add(k, c); }

  void add(const Key& k, const Rat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  const Terms& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  Rat coeff(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  SparseVector& operator+=(const SparseVector& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  SparseVector& operator-=(const SparseVector& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
  friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }
  friend SparseVector operator*(const Rat& c, const SparseVector& v) {
    SparseVector out;
    for (const auto& [k, x] : v.terms_) out.add(k, c * x);
    return out;
  }
  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  Terms terms_;
};

using FockVector = SparseVector<FockMonomial>;
/// Monomials in the u-basis.
using DualVector = SparseVector<FockMonomial>;

/// Basis element e_D (x) monomial; D has degree 0.
struct ChargedKey {
  Divisor charge;
  FockMonomial mono;
  friend bool operator==(const ChargedKey&, const ChargedKey&) = default;
  friend auto operator<=>(const ChargedKey& a, const ChargedKey& b) {
    if (auto c = a.charge <=> b.charge; c != 0) return c;
    return a.mono <=> b.mono;
  }
};
using ChargedFockVector = SparseVector<ChargedKey>;

std::string to_string(const FockVector& v);
std::string to_dual_string(const DualVector& u);
std::string to_string(const ChargedFockVector& w);
std::string charge_str(const Divisor& d);

/// Embeds v as the charge-0 sector.
ChargedFockVector uncharged(const FockVector& v);
/// Throws DomainError when a charge has nonzero degree.
void check_charges(const ChargedFockVector& w);

/// Coefficients b_n with x_P - sum b_n v_P^(n) regular at P.
std::map<int, Rat> principal_in_v_basis(const CurveModel& model, const Point& p, const LaurentSeries& x);

/// rho(x) on the Fock space: creation by the principal parts of x, and
/// contraction of each generator (Q, n) by c_Q(x_Q, v_Q^(n)).
FockVector heisenberg_act(const Adele& x, const FockVector& v, const CurveModel& model);

/// Inductive definition: (u, v) = sum_i c(u_1, v_i) (u^1, v^i).
Rat dual_pairing(const DualVector& u, const FockVector& v, const CurveModel& model);
/// Permanent of [c(u_a, v_b)] on equal degrees.
Rat dual_pairing_permanent(const DualVector& u, const FockVector& v, const CurveModel& model);

/// u . x, truncated to generators on `points` with index <= max_index.
DualVector contragradient_act(const DualVector& u, const Adele& x, const CurveModel& model,
                              const std::vector<Point>& points, int max_index);

/// x(D) = sum n_P x_P(0).
Rat adele_at_divisor(const Adele& x, const Divisor& d);

/// x (e_D (x) v) = -x(D) e_D (x) v + e_D (x) x.v
ChargedFockVector charged_act(const Adele& x, const ChargedFockVector& w, const CurveModel& model);
/// Same formula as charged_act.
ChargedFockVector drx_act(const Adele& x, const ChargedFockVector& w, const CurveModel& model);
/// e_D . w
ChargedFockVector shift(const Divisor& d, const ChargedFockVector& w);

/// R_X(a) for a degree-0 idele a.
ChargedFockVector rx_act(const Idele& a, const ChargedFockVector& w, const CurveModel& model);

}  // namespace p1qft
