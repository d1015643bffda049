#include "p1qft/cli.hpp"

#include <algorithm>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"
#include "p1qft/errors.hpp"
#include "p1qft/expectation.hpp"
#include "p1qft/parser.hpp"
#include "p1qft/symbols.hpp"

namespace p1qft {

namespace {

using ojson = nlohmann::ordered_json;

struct Options {
  int precision = kDefaultPrecision;
  std::string model_file;
  std::string format = "text";
  int degree_cap = kDefaultDegreeCap;
  std::uint64_t seed = 20240611;
};

struct Report {
  explicit Report(std::string v) : verb(std::move(v)) {}
  std::string verb;
  ojson inputs = ojson::object();
  ojson outputs = ojson::object();
  std::optional<bool> pass;
};

std::string quoted(const std::string& s) {
  return s.find(' ') == std::string::npos ? s : "\"" + s + "\"";
}

std::string scalar_text(const ojson& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void emit(const Report& r, const Options& opt, std::ostream& out) {
  if (opt.format == "records") {
    ojson rec;
    rec["verb"] = r.verb;
    rec["inputs"] = r.inputs;
    rec["outputs"] = r.outputs;
    if (r.pass) rec["pass"] = *r.pass;
    out << rec.dump() << "\n";
    return;
  }
  out << r.verb;
  for (const auto& [k, v] : r.inputs.items()) out << " " << k << "=" << quoted(scalar_text(v));
  out << "\n";
  for (const auto& [k, v] : r.outputs.items()) {
    if (v.is_object()) {
      for (const auto& [sk, sv] : v.items()) out << k << "[" << sk << "]: " << scalar_text(sv) << "\n";
    } else if (v.is_array()) {
      std::string line;
      for (const auto& x : v) line += (line.empty() ? "" : ", ") + scalar_text(x);
      out << k << ": " << line << "\n";
    } else {
      out << k << ": " << scalar_text(v) << "\n";
    }
  }
  if (r.pass) out << (*r.pass ? "PASS" : "FAIL") << "\n";
}

bool is_uncharged(const ChargedFockVector& w) {
  return std::all_of(w.terms().begin(), w.terms().end(), [](const auto& t) { return t.first.charge.empty(); });
}

FockVector charge_zero_part(const ChargedFockVector& w) {
  FockVector v;
  for (const auto& [k, c] : w.terms()) v.add(k.mono, c);
  return v;
}

std::string state_str(const ChargedFockVector& w) {
  return is_uncharged(w) ? to_string(charge_zero_part(w)) : to_string(w);
}

Adele additive_symmetry(const RationalFunction& f, const CurveModel& model) {
  const auto panel = model.panel();
  if (!panel) return Adele(f);
  const PartialFractions pf = partial_fractions(f);
  return ModelFunction{pf.coeffs, pf.constant}.adele(model, *panel);
}

Idele multiplicative_symmetry(const PrimeProduct& m, const CurveModel& model) {
  const auto panel = model.panel();
  if (!panel) return Idele(m.function());
  return m.idele(model, *panel);
}

std::vector<Point> parse_point_list(const std::string& text) {
  std::vector<Point> pts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string::npos ? text.size() : comma;
    pts.push_back(parse_point(std::string_view(text).substr(start, end - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return pts;
}

class Runner {
 public:
  Runner(const Options& opt, std::ostream& out) : opt_(opt), out_(out) {}

  const CurveModel& model() {
    if (opt_.model_file.empty()) return p1_model();
    if (!loaded_) loaded_ = std::make_unique<TabulatedModel>(TabulatedModel::load(opt_.model_file));
    return *loaded_;
  }

  int finish(const Report& r) {
    emit(r, opt_, out_);
    return r.pass.value_or(true) ? 0 : 1;
  }

  int residue(const std::string& f_text, const std::string& point) {
    const RationalFunction f = parse_rational_function(f_text);
    const Point p = parse_point(point);
    Report r{"residue"};
    r.inputs["f"] = f.str();
    r.inputs["point"] = p.str();
    r.outputs["residue"] = residue_at({f}, p).str();
    return finish(r);
  }

  int residue_theorem(const std::string& f_text) {
    const RationalFunction f = parse_rational_function(f_text);
    const ResidueSum sum = residue_theorem_check({f});
    Report r{"residue-theorem"};
    r.inputs["f"] = f.str();
    ojson res = ojson::object();
    for (const auto& [p, v] : sum.residues) res[p.str()] = v.str();
    r.outputs["residue"] = res;
    r.outputs["total"] = sum.total.str();
    r.pass = sum.total.is_zero();
    return finish(r);
  }

  int expand(const std::string& f_text, const std::string& point) {
    const RationalFunction f = parse_rational_function(f_text);
    const Point p = parse_point(point);
    const LaurentSeries s = rf_expand_at(f, p, opt_.precision).truncated(opt_.precision);
    Report r{"expand"};
    r.inputs["f"] = f.str();
    r.inputs["point"] = p.str();
    r.outputs["series"] = s.str();
    r.outputs["valuation"] = s.is_zero_window() ? ojson(nullptr) : ojson(s.valuation());
    return finish(r);
  }

  int divisor(const std::string& f_text) {
    const RationalFunction f = parse_rational_function(f_text);
    const Divisor d = rf_divisor(f);
    Report r{"divisor"};
    r.inputs["f"] = f.str();
    r.outputs["divisor"] = d.str();
    r.outputs["degree"] = d.degree();
    r.pass = d.degree() == 0;
    return finish(r);
  }

  int partial(const std::string& f_text) {
    const RationalFunction f = parse_rational_function(f_text);
    const PartialFractions pf = partial_fractions(f);
    Report r{"partial-fractions"};
    r.inputs["f"] = f.str();
    ojson coeffs = ojson::object();
    for (const auto& [idx, c] : pf.coeffs) coeffs["eta[" + idx.first.str() + "," + std::to_string(idx.second) + "]"] = c.str();
    r.outputs["coeffs"] = coeffs;
    r.outputs["constant"] = pf.constant.str();
    // Reconstruction at seeded rational points away from the poles.
    std::mt19937_64 rng(opt_.seed);
    std::uniform_int_distribution<long> num(-40, 40), den(1, 7);
    bool ok = true;
    int checked = 0;
    const auto poles = f.poles();
    while (checked < 10) {
      const Point x(Rat(num(rng), den(rng)));
      if (poles.count(x)) continue;
      ok = ok && pf.evaluate(x) == f.evaluate(x);
      ++checked;
    }
    r.outputs["checked_points"] = checked;
    r.pass = ok;
    return finish(r);
  }

  int tame(const std::string& f_text, const std::string& g_text, const std::string& point) {
    const RationalFunction f = parse_rational_function(f_text);
    const RationalFunction g = parse_rational_function(g_text);
    const Point p = parse_point(point);
    Report r{"tame"};
    r.inputs["f"] = f.str();
    r.inputs["g"] = g.str();
    r.inputs["point"] = p.str();
    const Rat fg = tame_at(f, g, p);
    const Rat gf = tame_at(g, f, p);
    r.outputs["symbol"] = fg.str();
    r.outputs["reversed"] = gf.str();
    r.pass = fg * gf == Rat(1);
    return finish(r);
  }

  int weil(const std::string& f_text, const std::string& g_text) {
    const RationalFunction f = parse_rational_function(f_text);
    const RationalFunction g = parse_rational_function(g_text);
    const SymbolReport s = weil_global(f, g);
    Report r{"weil"};
    r.inputs["f"] = f.str();
    r.inputs["g"] = g.str();
    ojson local = ojson::object();
    for (const auto& [p, v] : s.local) local[p.str()] = v.str();
    r.outputs["local"] = local;
    r.outputs["product"] = s.product.str();
    r.pass = s.pass();
    return finish(r);
  }

  int exchange(const std::string& points) {
    const auto pts = parse_point_list(points);
    if (pts.size() != 4) throw DomainError("exchange needs four points P,Q,R,S");
    const ExchangeReport e = exchange_law_check(pts[0], pts[1], pts[2], pts[3]);
    const ExchangeConstants k = exchange_law_constants(model(), pts[0], pts[1], pts[2], pts[3]);
    Report r{"exchange"};
    r.inputs["points"] = pts[0].str() + "," + pts[1].str() + "," + pts[2].str() + "," + pts[3].str();
    r.outputs["lhs"] = e.lhs.str();
    r.outputs["rhs"] = e.rhs.str();
    r.outputs["lhs_constants"] = k.lhs.str();
    r.outputs["rhs_constants"] = k.rhs.str();
    r.pass = e.pass() && k.pass() && e.lhs == k.lhs;
    return finish(r);
  }

  int factor(const std::string& f_text) {
    const RationalFunction f = parse_rational_function(f_text);
    const Factorization fac = factorize(f);
    Report r{"factorize"};
    r.inputs["f"] = f.str();
    r.outputs["constant"] = fac.constant.str();
    ojson list = ojson::array();
    for (const auto& [a, b] : fac.factors) list.push_back("f[" + a.str() + "," + b.str() + "]");
    r.outputs["factors"] = list;
    r.pass = multiply_out(fac) == f;
    return finish(r);
  }

  int prime_taylor_verb(const std::string& p_text, const std::string& q_text, const std::string& r_text,
                        int order) {
    const Point p = parse_point(p_text), q = parse_point(q_text), rr = parse_point(r_text);
    const PrimeTaylor direct = prime_taylor(model(), p, q, rr, order);
    const PrimeTaylor closed = prime_taylor_closed(model(), p, q, rr, order);
    Report r{"prime-taylor"};
    r.inputs["p"] = p.str();
    r.inputs["q"] = q.str();
    r.inputs["r"] = rr.str();
    r.inputs["order"] = order;
    r.outputs["alpha"] = direct.alpha.str();
    r.outputs["valuation"] = direct.valuation;
    ojson a = ojson::object();
    for (std::size_t n = 0; n < direct.phi.size(); ++n) a[std::to_string(n + 1)] = direct.phi[n].str();
    r.outputs["a"] = a;
    r.pass = direct.alpha == closed.alpha && direct.valuation == closed.valuation && direct.phi == closed.phi;
    return finish(r);
  }

  int act(const std::string& mode, const std::string& sym, const std::string& state) {
    const ChargedFockVector w = parse_charged_vector(state);
    Report r{"act"};
    r.inputs["mode"] = mode;
    if (mode == "additive") {
      const RationalFunction f = parse_rational_function(sym);
      r.inputs["symmetry"] = f.str();
      r.inputs["state"] = state_str(w);
      const Adele x = additive_symmetry(f, model());
      r.outputs["result"] = is_uncharged(w) ? to_string(heisenberg_act(x, charge_zero_part(w), model()))
                                            : to_string(charged_act(x, w, model()));
    } else {
      const PrimeProduct m = parse_prime_product(sym);
      r.inputs["symmetry"] = m.str();
      r.inputs["state"] = to_string(w);
      r.outputs["result"] = to_string(rx_act(multiplicative_symmetry(m, model()), w, model()));
    }
    return finish(r);
  }

  int correlate(std::string mode, const std::string& state) {
    const ChargedFockVector w = parse_charged_vector(state);
    if (mode == "auto") mode = is_uncharged(w) ? "additive" : "charged";
    Report r{"correlate"};
    r.inputs["state"] = state_str(w);
    r.inputs["mode"] = mode;
    Rat value;
    if (mode == "additive") {
      if (!is_uncharged(w)) throw DomainError("additive correlator of a charged state; use --mode charged");
      value = corr_additive(charge_zero_part(w), model(), opt_.degree_cap);
    } else if (mode == "charged") {
      value = corr_charged(w, model(), opt_.degree_cap);
    } else {
      value = corr_multiplicative(w, model(), opt_.degree_cap);
    }
    r.outputs["value"] = value.str();
    return finish(r);
  }

  int ward(const std::string& mode, const std::string& sym, const std::string& state) {
    const ChargedFockVector w = parse_charged_vector(state);
    Report r{"ward"};
    r.inputs["mode"] = mode;
    Rat lhs, rhs;
    if (mode == "additive") {
      const RationalFunction f = parse_rational_function(sym);
      r.inputs["symmetry"] = f.str();
      r.inputs["state"] = state_str(w);
      const Adele x = additive_symmetry(f, model());
      lhs = is_uncharged(w) ? ward_additive(x, charge_zero_part(w), model(), opt_.degree_cap)
                            : ward_additive(x, w, model(), opt_.degree_cap);
    } else {
      const PrimeProduct m = parse_prime_product(sym);
      r.inputs["symmetry"] = m.str();
      r.inputs["state"] = to_string(w);
      const WardPair wp = ward_multiplicative(multiplicative_symmetry(m, model()), w, model(), opt_.degree_cap);
      lhs = wp.lhs;
      rhs = wp.rhs;
    }
    r.outputs["lhs"] = lhs.str();
    r.outputs["rhs"] = rhs.str();
    r.pass = lhs == rhs;
    return finish(r);
  }

  int validate_model() {
    Report r{"validate-model"};
    if (opt_.model_file.empty()) {
      r.inputs["model"] = "p1";
      const std::vector<Point> panel{-2, -1, 0, 1, 2, Point::infinity()};
      const ModelCheck check = check_model(p1_model(), panel, 4);
      r.outputs["failures"] = check.failures;
      r.pass = check.ok;
      return finish(r);
    }
    r.inputs["model"] = opt_.model_file;
    try {
      const CurveModel& m = model();
      r.outputs["genus"] = m.genus();
      r.outputs["points"] = static_cast<int>(m.panel()->size());
      r.outputs["max_index"] = *m.max_index();
      r.pass = true;
    } catch (const ModelError& e) {
      r.outputs["error"] = e.what();
      r.pass = false;
    }
    return finish(r);
  }

 private:
  const Options& opt_;
  std::ostream& out_;
  std::unique_ptr<TabulatedModel> loaded_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact residue calculus, reciprocity laws and boson correlators on the projective line"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--precision", opt.precision, "Series window length")->check(CLI::Range(1, 100000));
  app.add_option("--model", opt.model_file, "Tabulated curve-model file (default: built-in P^1)");
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "records"}));
  app.add_option("--degree-cap", opt.degree_cap, "Largest monomial degree for correlators")->check(CLI::Range(0, 24));
  app.add_option("--seed", opt.seed, "Seed for randomized checks");

  std::string f, g, point, points, p, q, r, act_mode, corr_mode, ward_mode, sym, state;
  int order = 6;
  std::function<int(Runner&)> action;

  auto sub = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };

  auto* c = sub("residue", "Residue of f dz at a point");
  c->add_option("--f", f)->required();
  c->add_option("--point", point)->required();
  c->callback([&] { action = [&](Runner& x) { return x.residue(f, point); }; });

  c = sub("residue-theorem", "Sum of the residues of f dz");
  c->add_option("--f", f)->required();
  c->callback([&] { action = [&](Runner& x) { return x.residue_theorem(f); }; });

  c = sub("expand", "Laurent expansion of f at a point");
  c->add_option("--f", f)->required();
  c->add_option("--point", point)->required();
  c->callback([&] { action = [&](Runner& x) { return x.expand(f, point); }; });

  c = sub("divisor", "Divisor of f");
  c->add_option("--f", f)->required();
  c->callback([&] { action = [&](Runner& x) { return x.divisor(f); }; });

  c = sub("partial-fractions", "Expansion of f in the eta basis");
  c->add_option("--f", f)->required();
  c->callback([&] { action = [&](Runner& x) { return x.partial(f); }; });

  c = sub("tame", "Local tame symbol of f and g at a point");
  c->add_option("--f", f)->required();
  c->add_option("--g", g)->required();
  c->add_option("--point", point)->required();
  c->callback([&] { action = [&](Runner& x) { return x.tame(f, g, point); }; });

  c = sub("weil", "Product of all local tame symbols of f and g");
  c->add_option("--f", f)->required();
  c->add_option("--g", g)->required();
  c->callback([&] { action = [&](Runner& x) { return x.weil(f, g); }; });

  c = sub("exchange", "Exchange law for third-kind integrals");
  c->add_option("--points", points, "P,Q,R,S")->required();
  c->callback([&] { action = [&](Runner& x) { return x.exchange(points); }; });

  c = sub("factorize", "f as a constant times a product of f[P,Q]");
  c->add_option("--f", f)->required();
  c->callback([&] { action = [&](Runner& x) { return x.factor(f); }; });

  c = sub("prime-taylor", "Local decomposition of f[P,Q] at R");
  c->add_option("--p", p)->required();
  c->add_option("--q", q)->required();
  c->add_option("--r", r)->required();
  c->add_option("--order", order)->check(CLI::Range(1, 64));
  c->callback([&] { action = [&](Runner& x) { return x.prime_taylor_verb(p, q, r, order); }; });

  c = sub("act", "Apply a symmetry to a Fock state");
  c->add_option("--mode", act_mode)->check(CLI::IsMember({"additive", "multiplicative"}))->default_val("additive");
  c->add_option("--symmetry", sym)->required();
  c->add_option("--state", state)->required();
  c->callback([&] { action = [&](Runner& x) { return x.act(act_mode, sym, state); }; });

  c = sub("correlate", "Expectation value of a Fock state");
  c->add_option("--mode", corr_mode)
      ->check(CLI::IsMember({"auto", "additive", "charged", "multiplicative"}))
      ->default_val("auto");
  c->add_option("--state", state)->required();
  c->callback([&] { action = [&](Runner& x) { return x.correlate(corr_mode, state); }; });

  c = sub("ward", "Ward identity for a global symmetry");
  c->add_option("--mode", ward_mode)->check(CLI::IsMember({"additive", "multiplicative"}))->default_val("additive");
  c->add_option("--symmetry", sym)->required();
  c->add_option("--state", state)->required();
  c->callback([&] { action = [&](Runner& x) { return x.ward(ward_mode, sym, state); }; });

  c = sub("validate-model", "Check the curve-model identities");
  c->callback([&] { action = [&](Runner& x) { return x.validate_model(); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  const std::string verb = app.get_subcommands().front()->get_name();
  Runner runner(opt, out);
  try {
    return action(runner);
  } catch (const ParseError& e) {
    err << "error: " << verb << ": parse error: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << verb << ": " << e.what() << "\n";
  }
  return 2;
}

}  // namespace p1qft
