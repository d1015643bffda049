#include "p1qft/model.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "p1qft/errors.hpp"
#include "p1qft/symbols.hpp"

namespace p1qft {

using nlohmann::json;

void CurveModel::require(const Point& p, int n) const {
  if (n < 1) throw DomainError("generator index must be positive, got " + std::to_string(n));
  if (auto idx = max_index(); idx && n > *idx) {
    throw ModelError("index " + std::to_string(n) + " exceeds the model's maximum " + std::to_string(*idx));
  }
  if (auto pts = panel(); pts && std::find(pts->begin(), pts->end(), p) == pts->end()) {
    throw ModelError("point " + p.str() + " is not on the model's panel");
  }
}

// ---------------------------------------------------------------- genus 0

LaurentSeries P1Model::eta_expansion(const Point& p, int n, const Point& q, int order) const {
  return rf_expand_at(eta(p, n), q, order);
}

Rat P1Model::eta_const(const Point& p, int n, const Point& q) const {
  if (p == q) return Rat(0);
  return eta(p, n).evaluate(q);
}

LaurentSeries P1Model::u_expansion(const Point&, int n, int order) const {
  if (n < 1) throw DomainError("u index must be positive");
  return LaurentSeries::monomial(Rat(-1), n, order);
}

Rat P1Model::prime_const(const Point& p, const Point& q) const { return p1_prime_const(p, q); }

LaurentSeries P1Model::e_expansion(const Point& p, const Point& r, int order) const {
  return p1_e_expansion(p, r, order);
}

const P1Model& p1_model() {
  static const P1Model model;
  return model;
}

// ---------------------------------------------------------------- tables

namespace {

json series_json(const LaurentSeries& s, int precision) {
  const LaurentSeries w = s.truncated(precision);
  json c = json::array();
  for (const auto& x : w.coefficients()) c.push_back(x.str());
  return {{"from", w.valuation()}, {"coeffs", c}};
}

LaurentSeries series_from_json(const json& j, int precision) {
  std::vector<Rat> c;
  for (const auto& x : j.at("coeffs")) c.push_back(Rat::parse(x.get<std::string>()));
  const int from = j.at("from").get<int>();
  if (from + static_cast<int>(c.size()) > precision) throw ModelError("series window runs past the table precision");
  return LaurentSeries(from, std::move(c), precision);
}

template <class Map, class Key>
const auto& lookup(const Map& m, const Key& k, const std::string& what) {
  auto it = m.find(k);
  if (it == m.end()) throw ModelError("missing table entry " + what);
  return it->second;
}

std::string key3(const std::string& table, const Point& p, int n, const Point& q) {
  return table + "[" + p.str() + "][" + std::to_string(n) + "][" + q.str() + "]";
}

}  // namespace

json TabulatedModel::tabulate(const CurveModel& source, const std::vector<Point>& points, int max_index,
                              int precision) {
  json j;
  j["genus"] = source.genus();
  json special = json::object();
  for (const auto& [p, n] : source.special_divisor().support()) special[p.str()] = n;
  j["special_divisor"] = special;
  json pts = json::array();
  for (const auto& p : points) pts.push_back(p.str());
  j["points"] = pts;
  j["max_index"] = max_index;
  j["precision"] = precision;
  json eta_t = json::object(), const_t = json::object(), u_t = json::object(), c_t = json::object();
  for (const auto& p : points) {
    for (int n = 1; n <= max_index; ++n) {
      const std::string ns = std::to_string(n);
      for (const auto& q : points) {
        eta_t[p.str()][ns][q.str()] = series_json(source.eta_expansion(p, n, q, precision), precision);
        const_t[p.str()][ns][q.str()] = source.eta_const(p, n, q).str();
      }
      u_t[p.str()][ns] = series_json(source.u_expansion(p, n, precision), precision);
    }
    for (const auto& q : points) c_t[p.str()][q.str()] = source.prime_const(p, q).str();
  }
  j["eta"] = eta_t;
  j["eta_const"] = const_t;
  j["u"] = u_t;
  j["c"] = c_t;
  return j;
}

TabulatedModel TabulatedModel::from_json(const json& j) {
  TabulatedModel m;
  try {
    m.genus_ = j.at("genus").get<int>();
    if (m.genus_ < 0) throw ModelError("negative genus");
    if (j.contains("special_divisor")) {
      for (const auto& [k, v] : j.at("special_divisor").items()) m.special_ += Divisor::point(Point::parse(k), v.get<long>());
    }
    if (m.special_.degree() != m.genus_) throw ModelError("special divisor degree must equal the genus");
    for (const auto& p : j.at("points")) m.points_.push_back(Point::parse(p.get<std::string>()));
    m.max_index_ = j.at("max_index").get<int>();
    m.precision_ = j.at("precision").get<int>();
    if (m.max_index_ < 1 || m.precision_ <= m.max_index_) {
      throw ModelError("precision must exceed max_index >= 1");
    }
    const auto& eta_t = j.at("eta");
    const auto& const_t = j.at("eta_const");
    const auto& u_t = j.at("u");
    const auto& c_t = j.at("c");
    for (const auto& p : m.points_) {
      const std::string ps = p.str();
      for (int n = 1; n <= m.max_index_; ++n) {
        const std::string ns = std::to_string(n);
        for (const auto& q : m.points_) {
          const std::string qs = q.str();
          if (!eta_t.contains(ps) || !eta_t[ps].contains(ns) || !eta_t[ps][ns].contains(qs))
            throw ModelError("missing table entry " + key3("eta", p, n, q));
          if (!const_t.contains(ps) || !const_t[ps].contains(ns) || !const_t[ps][ns].contains(qs))
            throw ModelError("missing table entry " + key3("eta_const", p, n, q));
          m.eta_.emplace(std::tuple{p, n, q}, series_from_json(eta_t[ps][ns][qs], m.precision_));
          m.eta_const_.emplace(std::tuple{p, n, q}, Rat::parse(const_t[ps][ns][qs].get<std::string>()));
        }
        if (!u_t.contains(ps) || !u_t[ps].contains(ns))
          throw ModelError("missing table entry u[" + ps + "][" + ns + "]");
        m.u_.emplace(std::pair{p, n}, series_from_json(u_t[ps][ns], m.precision_));
      }
      for (const auto& q : m.points_) {
        const std::string qs = q.str();
        if (!c_t.contains(ps) || !c_t[ps].contains(qs)) throw ModelError("missing table entry c[" + ps + "][" + qs + "]");
        m.c_.emplace(std::pair{p, q}, Rat::parse(c_t[ps][qs].get<std::string>()));
      }
    }
  } catch (const json::exception& e) {
    throw ModelError(std::string("malformed model file: ") + e.what());
  }
  m.validate();
  return m;
}

TabulatedModel TabulatedModel::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ModelError("cannot open model file " + file.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ModelError("malformed model file " + file.string() + ": " + e.what());
  }
  return from_json(j);
}

void TabulatedModel::validate() const {
  const ModelCheck check = check_model(*this, points_, max_index_);
  if (!check.ok) throw ModelError("model validation failed: " + check.failures.front());
}

LaurentSeries TabulatedModel::eta_expansion(const Point& p, int n, const Point& q, int) const {
  return lookup(eta_, std::tuple{p, n, q}, key3("eta", p, n, q));
}

Rat TabulatedModel::eta_const(const Point& p, int n, const Point& q) const {
  return lookup(eta_const_, std::tuple{p, n, q}, key3("eta_const", p, n, q));
}

LaurentSeries TabulatedModel::u_expansion(const Point& p, int n, int) const {
  return lookup(u_, std::pair{p, n}, "u[" + p.str() + "][" + std::to_string(n) + "]");
}

Rat TabulatedModel::prime_const(const Point& p, const Point& q) const {
  return lookup(c_, std::pair{p, q}, "c[" + p.str() + "][" + q.str() + "]");
}

LaurentSeries TabulatedModel::e_expansion(const Point& p, const Point& r, int) const {
  // The exponent is known modulo t^{max_index + 1}.
  const int window = std::min(precision_, max_index_ + 1);
  LaurentSeries arg = LaurentSeries::polynomial(window, {}, window).windowed();
  for (int n = 1; n <= max_index_; ++n) {
    const Rat k = eta_const(r, n, p);
    if (!k.is_zero()) arg = arg - k * u_expansion(r, n, window).truncated(window);
  }
  LaurentSeries e = prime_const(p, r) * ls_exp(arg.truncated(window));
  return p == r ? e.shifted(1) : e;
}

// ---------------------------------------------------------------- validation

ModelCheck check_model(const CurveModel& model, const std::vector<Point>& points, int max_index) {
  ModelCheck out;
  auto fail = [&](const std::string& msg) {
    out.ok = false;
    out.failures.push_back(msg);
  };
  const int order = max_index + 2;
  try {
    for (const auto& p : points) {
      for (int m = 1; m <= max_index; ++m) {
        for (int n = 1; n <= max_index; ++n) {
          const Rat d = local_cocycle(model.u_expansion(p, m, order), model.v_expansion(p, n, order));
          if (d != Rat(m == n ? 1 : 0)) {
            fail("duality violated at " + p.str() + ": c(u^(" + std::to_string(m) + "), v^(" + std::to_string(n) +
                 ")) = " + d.str());
          }
        }
      }
    }
    for (const auto& p : points) {
      for (const auto& q : points) {
        for (int m = 1; m <= max_index; ++m) {
          for (int n = 1; n <= max_index; ++n) {
            const Rat lhs = residue_of(model.eta_expansion(p, m, p, order) *
                                       model.eta_expansion(q, n, p, order).derivative());
            if (p == q) {
              if (!lhs.is_zero()) {
                fail("reciprocity violated: Res_" + p.str() + "(eta^(" + std::to_string(m) + ") d eta^(" +
                     std::to_string(n) + ")) = " + lhs.str() + " at the same point");
              }
              continue;
            }
            const Rat rhs = residue_of(model.eta_expansion(q, n, q, order) *
                                       model.eta_expansion(p, m, q, order).derivative());
            if (lhs != rhs) {
              fail("reciprocity violated for P=" + p.str() + " m=" + std::to_string(m) + ", Q=" + q.str() +
                   " n=" + std::to_string(n) + ": " + lhs.str() + " != " + rhs.str());
            }
          }
        }
      }
    }
    for (const auto& p : points) {
      for (const auto& q : points) {
        const Rat c = model.prime_const(p, q);
        if (c.is_zero()) fail("prime-form constant c(" + p.str() + "," + q.str() + ") is zero");
        if (p != q && c != -model.prime_const(q, p)) {
          fail("antisymmetry violated: c(" + p.str() + "," + q.str() + ") = " + c.str() + ", c(" + q.str() + "," +
               p.str() + ") = " + model.prime_const(q, p).str());
        }
      }
      for (int n = 1; n <= max_index; ++n) {
        for (const auto& q : points) {
          const Rat k = model.eta_const(p, n, q);
          if (p == q && !k.is_zero()) {
            fail("zero-constant convention violated: eta_const(" + p.str() + "," + std::to_string(n) + ") = " +
                 k.str());
          }
          const Rat c0 = model.eta_expansion(p, n, q, order).coeff(0);
          if (k != c0) {
            fail("eta_const(" + p.str() + "," + std::to_string(n) + "," + q.str() + ") = " + k.str() +
                 " disagrees with the expansion's constant term " + c0.str());
          }
        }
      }
    }
  } catch (const PrecisionError& e) {
    fail(std::string("tables too short: ") + e.what());
  }
  return out;
}

// ---------------------------------------------------------------- global functions

LaurentSeries ModelFunction::expand(const CurveModel& model, const Point& q, int order) const {
  LaurentSeries acc = LaurentSeries::constant(constant, order);
  for (const auto& [idx, c] : coeffs) acc = acc + c * model.eta_expansion(idx.first, idx.second, q, order);
  return acc;
}

Adele ModelFunction::adele(const CurveModel& model, const std::vector<Point>& points, int order) const {
  std::set<Point> pts(points.begin(), points.end());
  for (const auto& [idx, c] : coeffs) pts.insert(idx.first);
  std::map<Point, LaurentSeries> parts;
  for (const auto& q : pts) parts.emplace(q, expand(model, q, order));
  return Adele::partial(std::move(parts));
}

Divisor PrimeProduct::divisor() const {
  Divisor d;
  for (const auto& f : factors) d += f.exponent * (Divisor::point(f.p) - Divisor::point(f.q));
  return d;
}

namespace {

LaurentSeries power(const LaurentSeries& s, long k) {
  LaurentSeries base = k < 0 ? s.inverse() : s;
  LaurentSeries acc = LaurentSeries::constant(Rat(1), s.precision());
  for (long i = 0; i < (k < 0 ? -k : k); ++i) acc = acc * base;
  return acc;
}

}  // namespace

Idele PrimeProduct::idele(const CurveModel& model, const std::vector<Point>& points, int order) const {
  std::set<Point> pts(points.begin(), points.end());
  for (const auto& [p, n] : divisor().support()) pts.insert(p);
  std::map<Point, LaurentSeries> units;
  for (const auto& r : pts) {
    LaurentSeries acc = LaurentSeries::constant(constant, order);
    for (const auto& f : factors) {
      if (f.p == f.q) throw DomainError("prime factor f[" + f.p.str() + "," + f.q.str() + "] needs distinct points");
      const LaurentSeries ratio = model.e_expansion(f.p, r, order) * model.e_expansion(f.q, r, order).inverse();
      acc = acc * power(ratio, f.exponent);
    }
    units.emplace(r, acc);
  }
  return Idele::partial(std::move(units));
}

RationalFunction PrimeProduct::function() const {
  RationalFunction f(constant);
  for (const auto& fac : factors) f *= f_PQ_function(fac.p, fac.q).pow(fac.exponent);
  return f;
}

std::string PrimeProduct::str() const {
  std::ostringstream os;
  bool first = true;
  if (constant != Rat(1) || factors.empty()) {
    os << constant;
    first = false;
  }
  for (const auto& f : factors) {
    if (!first) os << "*";
    first = false;
    os << "f[" << f.p << "," << f.q << "]";
    if (f.exponent != 1) os << "^" << f.exponent;
  }
  return os.str();
}

// ---------------------------------------------------------------- prime-Taylor

PrimeTaylor prime_taylor(const CurveModel& model, const Point& p, const Point& q, const Point& r, int order) {
  if (order < 1) throw DomainError("prime_taylor: order must be positive");
  if (p == q) throw DomainError("prime_taylor: P and Q must differ");
  const int w = order + 2;
  const LaurentSeries f = model.e_expansion(p, r, w) * model.e_expansion(q, r, w).inverse();
  PrimeTaylor out;
  out.valuation = ls_valuation(f);
  out.alpha = ls_leading(f);
  const LaurentSeries phi = ls_log(out.alpha.inverse() * f.shifted(-out.valuation));
  for (int n = 1; n <= order; ++n) out.phi.push_back(local_cocycle(phi, model.v_expansion(r, n, w)));
  return out;
}

PrimeTaylor prime_taylor_closed(const CurveModel& model, const Point& p, const Point& q, const Point& r, int order) {
  if (order < 1) throw DomainError("prime_taylor: order must be positive");
  if (p == q) throw DomainError("prime_taylor: P and Q must differ");
  PrimeTaylor out;
  out.alpha = model.prime_const(p, r) / model.prime_const(q, r);
  out.valuation = (p == r ? 1 : 0) - (q == r ? 1 : 0);
  for (int n = 1; n <= order; ++n) out.phi.push_back(model.eta_const(r, n, q) - model.eta_const(r, n, p));
  return out;
}

ExchangeConstants exchange_law_constants(const CurveModel& model, const Point& p, const Point& q, const Point& r,
                                         const Point& s) {
  auto c = [&](const Point& a, const Point& b) { return model.prime_const(a, b); };
  // exp int_A^B omega_CD = c(C,B) c(D,A) / (c(D,B) c(C,A))
  auto integral = [&](const Point& a, const Point& b, const Point& cc, const Point& d) {
    return c(cc, b) * c(d, a) / (c(d, b) * c(cc, a));
  };
  return {integral(r, s, p, q), integral(p, q, r, s)};
}

}  // namespace p1qft
