#include "p1qft/laurent.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "p1qft/errors.hpp"

namespace p1qft {

namespace {

// How far an exact series with an all-zero window is re-expanded while
// searching for its leading term.
constexpr int kZeroProbe = 64;

std::shared_ptr<const SeriesSource> share(SeriesSource s) {
  return std::make_shared<const SeriesSource>(std::move(s));
}

}  // namespace

LaurentSeries::LaurentSeries(int precision) : valuation_(precision), precision_(precision) {}

LaurentSeries::LaurentSeries(int valuation, std::vector<Rat> coeffs)
    : valuation_(valuation),
      precision_(valuation + static_cast<int>(coeffs.size())),
      coeffs_(std::move(coeffs)) {
  canonicalize();
}

LaurentSeries::LaurentSeries(int valuation, std::vector<Rat> coeffs, int precision)
    : valuation_(valuation), precision_(precision), coeffs_(std::move(coeffs)) {
  const int len = std::max(0, precision - valuation);
  coeffs_.resize(static_cast<std::size_t>(len));
  canonicalize();
}

void LaurentSeries::canonicalize() {
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    valuation_ = precision_;
    return;
  }
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    valuation_ += static_cast<int>(lead);
  }
}

LaurentSeries LaurentSeries::polynomial(int valuation, std::vector<Rat> coeffs, int precision) {
  auto make = [valuation, coeffs](int n) {
    return LaurentSeries(valuation, coeffs, std::max(n, valuation));
  };
  return from_source(make, precision);
}

LaurentSeries LaurentSeries::monomial(const Rat& c, int exponent, int precision) {
  return polynomial(exponent, {c}, precision);
}

LaurentSeries LaurentSeries::from_source(SeriesSource source, int precision) {
  LaurentSeries s = source(precision);
  if (s.precision_ < precision) throw Error("series source returned a short window");
  s.source_ = share(std::move(source));
  return s;
}

Rat LaurentSeries::coeff(int n) const {
  if (n >= precision_) return extended(n + 1).coeff(n);
  if (n < valuation_) return Rat(0);
  return coeffs_[static_cast<std::size_t>(n - valuation_)];
}

const Rat& LaurentSeries::leading() const {
  if (coeffs_.empty()) throw DomainError("leading coefficient of a zero window");
  return coeffs_.front();
}

LaurentSeries LaurentSeries::extended(int precision) const {
  if (precision_ >= precision) return *this;
  if (!source_) {
    throw PrecisionError("series known only to O(t^" + std::to_string(precision_) +
                         "), coefficient up to t^" + std::to_string(precision - 1) +
                         " requested");
  }
  LaurentSeries s = (*source_)(precision);
  s.source_ = source_;
  return s;
}

LaurentSeries LaurentSeries::truncated(int precision) const {
  LaurentSeries s = extended(precision);
  if (s.precision_ > precision) {
    const int keep = std::max(0, precision - s.valuation_);
    if (static_cast<int>(s.coeffs_.size()) > keep) s.coeffs_.resize(static_cast<std::size_t>(keep));
    s.precision_ = precision;
    if (s.coeffs_.empty()) s.valuation_ = precision;
  }
  s.source_.reset();
  return s;
}

LaurentSeries LaurentSeries::windowed() const {
  LaurentSeries s = *this;
  s.source_.reset();
  return s;
}

LaurentSeries LaurentSeries::operator-() const { return Rat(-1) * *this; }

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  const int n_end = std::min(a.precision_, b.precision_);
  const int v = std::min(a.valuation_, b.valuation_);
  std::vector<Rat> c;
  if (v < n_end) {
    c.resize(static_cast<std::size_t>(n_end - v));
    for (int n = v; n < n_end; ++n) {
      Rat s;
      if (n >= a.valuation_) s += a.coeffs_[static_cast<std::size_t>(n - a.valuation_)];
      if (n >= b.valuation_) s += b.coeffs_[static_cast<std::size_t>(n - b.valuation_)];
      c[static_cast<std::size_t>(n - v)] = std::move(s);
    }
  }
  LaurentSeries r(std::min(v, n_end), std::move(c), n_end);
  if (a.exact() && b.exact()) {
    r.source_ = share([a, b](int n) { return a.extended(n).windowed() + b.extended(n).windowed(); });
  }
  return r;
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  const int n_end = std::min(a.valuation_ + b.precision_, b.valuation_ + a.precision_);
  LaurentSeries r(n_end);
  if (!a.coeffs_.empty() && !b.coeffs_.empty()) {
    const int v = a.valuation_ + b.valuation_;
    const int len = n_end - v;
    std::vector<Rat> c(static_cast<std::size_t>(std::max(0, len)));
    for (int i = 0; i < len; ++i) {
      Rat s;
      for (int j = 0; j <= i; ++j) {
        if (j >= static_cast<int>(a.coeffs_.size()) || i - j >= static_cast<int>(b.coeffs_.size()))
          continue;
        s += a.coeffs_[static_cast<std::size_t>(j)] * b.coeffs_[static_cast<std::size_t>(i - j)];
      }
      c[static_cast<std::size_t>(i)] = std::move(s);
    }
    r = LaurentSeries(v, std::move(c), n_end);
  }
  if (a.exact() && b.exact()) {
    r.source_ = share([a, b](int n) {
      return a.extended(n - b.valuation_).windowed() * b.extended(n - a.valuation_).windowed();
    });
  }
  return r;
}

LaurentSeries operator*(const Rat& c, const LaurentSeries& a) {
  LaurentSeries r(a.precision_);
  if (!c.is_zero() && !a.coeffs_.empty()) {
    std::vector<Rat> out;
    out.reserve(a.coeffs_.size());
    for (const auto& x : a.coeffs_) out.push_back(c * x);
    r = LaurentSeries(a.valuation_, std::move(out), a.precision_);
  }
  if (a.exact()) r.source_ = share([c, a](int n) { return c * a.extended(n).windowed(); });
  return r;
}

LaurentSeries LaurentSeries::inverse() const {
  const LaurentSeries* self = this;
  LaurentSeries probe;
  if (coeffs_.empty()) {
    if (!source_) throw DomainError("inversion of an identically-zero window");
    probe = extended(precision_ + kZeroProbe);
    if (probe.coeffs_.empty()) throw DomainError("inversion of an identically-zero window");
    self = &probe;
  }
  const auto& a = self->coeffs_;
  const std::size_t len = a.size();
  const Rat inv0 = a[0].inverse();
  std::vector<Rat> b(len);
  b[0] = inv0;
  for (std::size_t k = 1; k < len; ++k) {
    Rat s;
    for (std::size_t j = 1; j <= k; ++j) s += a[j] * b[k - j];
    b[k] = -(inv0 * s);
  }
  LaurentSeries r(-self->valuation_, std::move(b), -self->valuation_ + static_cast<int>(len));
  if (self->source_) {
    const LaurentSeries base = *self;
    r.source_ = share([base](int n) {
      return base.extended(n + 2 * base.valuation_).windowed().inverse();
    });
  }
  return r;
}

LaurentSeries LaurentSeries::shifted(int k) const {
  LaurentSeries r = *this;
  r.valuation_ += k;
  r.precision_ += k;
  if (source_) {
    const LaurentSeries base = *this;
    r.source_ = share([base, k](int n) { return base.extended(n - k).windowed().shifted(k); });
  }
  return r;
}

LaurentSeries LaurentSeries::derivative() const {
  const int n_end = precision_ - 1;
  LaurentSeries r(n_end);
  if (!coeffs_.empty()) {
    std::vector<Rat> c;
    c.reserve(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const int n = valuation_ + static_cast<int>(i);
      c.push_back(Rat(n) * coeffs_[i]);
    }
    r = LaurentSeries(valuation_ - 1, std::move(c), n_end);
  }
  if (source_) {
    const LaurentSeries base = *this;
    r.source_ = share([base](int n) { return base.extended(n + 1).windowed().derivative(); });
  }
  return r;
}

bool LaurentSeries::same_window(const LaurentSeries& other) const {
  const int lo = std::min(valuation_, other.valuation_);
  const int hi = std::min(precision_, other.precision_);
  for (int n = lo; n < hi; ++n) {
    if (coeff(n) != other.coeff(n)) return false;
  }
  return true;
}

std::string LaurentSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rat& c = coeffs_[i];
    if (c.is_zero()) continue;
    const int n = valuation_ + static_cast<int>(i);
    Rat mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (n == 0) {
      os << mag;
    } else {
      if (mag != Rat(1)) os << mag << "*";
      os << "t";
      if (n != 1) os << "^" << n;
    }
  }
  if (!first) os << " + ";
  os << "O(t^" << precision_ << ")";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const LaurentSeries& s) { return os << s.str(); }

LaurentSeries ls_arith(const LaurentSeries& a, const LaurentSeries& b, SeriesOp op) {
  LaurentSeries r;
  switch (op) {
    case SeriesOp::add:
      r = a + b;
      break;
    case SeriesOp::mul:
      r = a * b;
      break;
    case SeriesOp::inv:
      r = a.inverse();
      break;
  }
  // A product of nonzero series is nonzero, so an empty window here means the
  // operands did not carry enough terms.
  if (op == SeriesOp::mul && r.is_zero_window() && !a.is_zero_window() && !b.is_zero_window()) {
    throw PrecisionError("precision underflow: empty result window");
  }
  return r;
}

Rat residue_of(const LaurentSeries& body) { return body.coeff(-1); }

Rat ls_residue(const LocalDifferential& w) { return residue_of(w.body); }

LocalDifferential ls_d(const LaurentSeries& a) { return {a.derivative(), {}}; }

LocalDifferential ls_dlog(const LaurentSeries& a) {
  if (a.is_zero_window() && !a.exact()) throw DomainError("dlog of the zero series");
  return {a.derivative() * a.inverse(), {}};
}

LaurentSeries ls_exp(const LaurentSeries& a) {
  if (!a.is_zero_window() && a.valuation() < 1) {
    throw DomainError("exp needs a series of valuation >= 1");
  }
  const int n_end = a.precision();
  if (n_end <= 0) throw PrecisionError("exp: window does not reach the constant term");
  // E' = a' E  =>  n e_n = sum_{k=1..n} k a_k e_{n-k}
  std::vector<Rat> e(static_cast<std::size_t>(n_end));
  e[0] = Rat(1);
  for (int n = 1; n < n_end; ++n) {
    Rat s;
    for (int k = std::max(1, a.valuation()); k <= n; ++k) s += Rat(k) * a.coeff(k) * e[static_cast<std::size_t>(n - k)];
    e[static_cast<std::size_t>(n)] = s / Rat(n);
  }
  if (!a.exact()) return LaurentSeries(0, std::move(e), n_end);
  return LaurentSeries::from_source(
      [a](int n) { return ls_exp(a.extended(n).windowed()); }, n_end);
}

LaurentSeries ls_log(const LaurentSeries& a) {
  if (a.is_zero_window() || a.valuation() != 0 || a.leading() != Rat(1)) {
    throw DomainError("log needs a unit series with constant term 1");
  }
  const int n_end = a.precision();
  // L' = a'/a  =>  n l_n = n a_n - sum_{k=1..n-1} k l_k a_{n-k}
  std::vector<Rat> l(static_cast<std::size_t>(std::max(n_end, 1)));
  for (int n = 1; n < n_end; ++n) {
    Rat s = Rat(n) * a.coeff(n);
    for (int k = 1; k < n; ++k) s -= Rat(k) * l[static_cast<std::size_t>(k)] * a.coeff(n - k);
    l[static_cast<std::size_t>(n)] = s / Rat(n);
  }
  if (!a.exact()) return LaurentSeries(0, std::move(l), n_end);
  return LaurentSeries::from_source(
      [a](int n) { return ls_log(a.extended(n).windowed()); }, n_end);
}

namespace {

LaurentSeries probed(const LaurentSeries& a) {
  if (!a.is_zero_window()) return a;
  if (a.exact()) {
    LaurentSeries b = a.extended(a.precision() + kZeroProbe);
    if (!b.is_zero_window()) return b;
  }
  throw DomainError("valuation of a series that vanishes on its window");
}

}  // namespace

int ls_valuation(const LaurentSeries& a) { return probed(a).valuation(); }

Rat ls_leading(const LaurentSeries& a) { return probed(a).leading(); }

Rat local_cocycle(const LaurentSeries& x, const LaurentSeries& y) {
  return -residue_of(x * y.derivative());
}

}  // namespace p1qft
