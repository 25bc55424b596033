// freenc: command-line front end.
//
// Exit status: 0 success, 1 usage or input error, 2 verification failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "freenc/demo.hpp"
#include "freenc/error.hpp"
#include "freenc/invfun.hpp"
#include "freenc/kernels.hpp"
#include "freenc/recon.hpp"
#include "freenc/textio.hpp"

using namespace freenc;
using json = nlohmann::ordered_json;

namespace {

struct Global {
  bool json = false;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::size_t trials = 25;
  std::string out;
  std::string simd;
};

std::string fmt_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

class Output {
 public:
  explicit Output(const Global& g) : g_(g) {
    if (!g.out.empty()) {
      file_.open(g.out);
      if (!file_) throw Error("cannot open output file '" + g.out + "'");
    }
  }

  // Primary output (polynomials, matrices); goes to --out when given.
  void primary(const std::string& format, const std::string& text) {
    std::ostream& os = file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout;
    if (g_.json && !file_.is_open())
      os << json{{"type", "output"}, {"format", format}, {"text", text}}.dump() << "\n";
    else
      os << text;
  }

  // One report line: "<type> k=v k=v" or a JSON object.
  void record(const std::string& type, const json& fields) {
    if (g_.json) {
      json j{{"type", type}};
      for (auto it = fields.begin(); it != fields.end(); ++it) j[it.key()] = it.value();
      std::cout << j.dump() << "\n";
      return;
    }
    std::string line = type;
    for (auto it = fields.begin(); it != fields.end(); ++it) {
      line += (line.empty() ? "" : " ") + it.key() + "=";
      if (it.value().is_string())
        line += it.value().get<std::string>();
      else if (it.value().is_number_float())
        line += fmt_double(it.value().get<double>());
      else
        line += it.value().dump();
    }
    std::cout << line << "\n";
  }

  void text(const std::string& line) {
    if (g_.json)
      std::cout << json{{"type", "text"}, {"text", line}}.dump() << "\n";
    else
      std::cout << line << "\n";
  }

  // FAIL <check> level=<n> residual=<r>
  void fail(const std::string& check, std::size_t level, double residual) {
    failed_ = true;
    if (g_.json) {
      std::cout << json{{"type", "FAIL"}, {"check", check}, {"level", level}, {"residual", residual}}.dump()
                << "\n";
      return;
    }
    std::cout << "FAIL " << check << " level=" << level << " residual=" << fmt_double(residual) << "\n";
  }

  bool failed() const { return failed_; }
  int status() const { return failed_ ? 2 : 0; }

 private:
  const Global& g_;
  std::ofstream file_;
  bool failed_ = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class F>
auto parse_file(const std::string& path, F parse) {
  try {
    return parse(read_file(path));
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

MatTuple read_tuple(const std::string& path) { return parse_file(path, textio::mattuple_from_string); }

struct MapSpec {
  std::string name;
  std::vector<std::string> params;
};

FreeMapOracle make_oracle(const MapSpec& spec) {
  std::map<std::string, double> params;
  for (const std::string& p : spec.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw Error("--param expects key=value, got '" + p + "'");
    try {
      params[p.substr(0, eq)] = std::stod(p.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error("--param value is not a number: '" + p + "'");
    }
  }
  if (spec.name.rfind("poly:", 0) == 0) {
    const auto polys = parse_file(spec.name.substr(5), textio::ncpoly_tuple_from_string);
    std::size_t g = 0;
    if (params.count("g")) g = static_cast<std::size_t>(params["g"]);
    return oracle_from_ncpoly(polys, g);
  }
  if (spec.name.rfind("trace:", 0) == 0) {
    const auto p = parse_file(spec.name.substr(6), textio::tracepoly_from_string);
    return oracle_from_tracepoly(p);
  }
  return builtin_map(spec.name, params);
}

void add_map_options(CLI::App* sub, MapSpec& spec) {
  sub->add_option("--map", spec.name, "builtin name (pow_xxt, sinxxt, smooth_nonanalytic, nonuniform), "
                                      "poly:<file> or trace:<file>")
      ->required();
  sub->add_option("--param", spec.params, "map parameter key=value (alpha, m, k, J, g)");
}

std::vector<std::pair<std::size_t, std::size_t>> parse_level_pairs(const std::string& s) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    std::size_t a = 0, b = 0;
    char comma = 0;
    std::stringstream is(item);
    if (!(is >> a >> comma >> b) || comma != ',') throw Error("bad level pair '" + item + "'");
    out.emplace_back(a, b);
  }
  return out;
}

std::vector<std::size_t> parse_levels(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(static_cast<std::size_t>(std::stoul(item)));
  return out;
}

std::string series_text(const std::vector<FormalSeries>& series, double cleanup) {
  std::vector<NCPoly> ps;
  for (const FormalSeries& s : series) ps.push_back(s.to_poly().cleaned(cleanup));
  return textio::write_ncpoly_tuple(ps);
}

Group parse_group(const std::string& s) {
  if (s == "GL") return Group::GL;
  if (s == "O") return Group::O;
  if (s == "U") return Group::U;
  throw Error("unknown group '" + s + "' (GL, O, U)");
}

// ---- subcommands -----------------------------------------------------------

struct CanonArgs {
  std::vector<std::string> word;
  bool cyclic = false, star = false, involution = false;
  std::string poly, trace;
};

int run_canon(const CanonArgs& a, Output& out) {
  if (!a.poly.empty()) {
    out.primary("NCPOLY1", textio::write_ncpoly_tuple(parse_file(a.poly, textio::ncpoly_tuple_from_string)));
    return 0;
  }
  if (!a.trace.empty()) {
    out.primary("TRPOLY1", textio::write_tracepoly(parse_file(a.trace, textio::tracepoly_from_string)));
    return 0;
  }
  std::string joined;
  for (const std::string& t : a.word) joined += (joined.empty() ? "" : " ") + t;
  Word w = textio::parse_word(joined);
  if (a.involution) w = word_involution(w);
  if (a.cyclic || a.star) w = cyclic_canonical(w, a.star);
  out.primary("word", to_string(w) + "\n");
  return 0;
}

struct EvalArgs {
  std::string poly, trace, gen, at;
};

int run_eval(const EvalArgs& a, Output& out) {
  const MatTuple x = read_tuple(a.at);
  MatTuple y;
  if (!a.poly.empty())
    y = eval_ncpoly(parse_file(a.poly, textio::ncpoly_tuple_from_string), x);
  else if (!a.trace.empty())
    y = MatTuple{eval_tracepoly(parse_file(a.trace, textio::tracepoly_from_string), x)};
  else if (!a.gen.empty())
    y = MatTuple{eval_genpoly(parse_file(a.gen, textio::genpoly_from_string), x)};
  else
    throw Error("eval needs one of --poly, --trace, --gen");
  out.primary("MTX1", textio::write_mattuple(y));
  return 0;
}

struct CheckArgs {
  MapSpec map;
  std::string levels = "1,1;1,2;2,2;2,3";
  std::string sim_levels = "1,2,3";
  std::string group;
  double deriv_tol = 1e-6;
};

int run_check(const CheckArgs& a, const Global& g, Output& out) {
  const FreeMapOracle f = make_oracle(a.map);
  CheckOptions co;
  co.trials = g.trials;
  co.tol = g.tol;
  co.seed = g.seed;
  const Group group = a.group.empty() ? f.group() : parse_group(a.group);
  std::vector<CheckReport> reports;
  reports.push_back(check_direct_sums(f, parse_level_pairs(a.levels), co));
  reports.push_back(check_similarity(f, group, parse_levels(a.sim_levels), co));

  const bool differentiable = !(f.smoothness().kind == Smoothness::Kind::Continuous);
  if (differentiable) {
    Rng rng(g.seed);
    CheckReport deriv;
    deriv.tolerance = a.deriv_tol;
    deriv.check = group == Group::GL ? "triangular" : "commutator";
    for (std::size_t t = 0; t < g.trials; ++t) {
      const std::size_t n = 2 + t % 2;
      const MatTuple x = random_tuple(f.arity(), n, f.field(), rng);
      if (group == Group::GL) {
        const MatTuple h = random_tuple(f.arity(), n, f.field(), rng);
        deriv.merge(check_triangular_identity(f, x, h, a.deriv_tol));
      } else {
        const Matrix r = random_gaussian(n, Field::Real, rng);
        deriv.merge(check_commutator_identity(f, x, r - r.transpose(), a.deriv_tol));
      }
    }
    reports.push_back(deriv);
  } else {
    out.record("check", {{"name", "derivative"}, {"status", "SKIPPED"}, {"reason", "map declared continuous"}});
  }
  std::sort(reports.begin(), reports.end(),
            [](const CheckReport& x, const CheckReport& y) { return x.check < y.check; });
  for (const CheckReport& r : reports)
    out.record("check", {{"name", r.check},
                         {"trials", r.trials},
                         {"max_violation", r.max_violation},
                         {"status", r.passed() ? "PASS" : "FAIL"}});
  for (const CheckReport& r : reports)
    for (const Witness& w : r.witnesses) out.fail(w.check, w.level, w.residual);
  return out.status();
}

struct ExtractArgs {
  MapSpec map;
  std::size_t degree = 1;
  std::size_t level = 0;
  bool raw = false;
};

int run_extract(const ExtractArgs& a, Output& out) {
  const FreeMapOracle f = make_oracle(a.map);
  const std::size_t m = a.degree;
  HomogeneousEvaluator hom;
  if (a.raw) {
    hom = [&f](const MatTuple& x) { return f(x); };
  } else {
    hom = [&f, m](const MatTuple& x) { return homogeneous_part_eval(f, m, x, m); };
  }
  MatenoteOptions mo;
  mo.level = a.level;
  const auto polys = matenote_extract(hom, m, f.arity(), f.out_arity(), extraction_mode(f), mo);
  out.primary("NCPOLY1", textio::write_ncpoly_tuple(polys));
  return 0;
}

struct TaylorArgs {
  MapSpec map;
  std::size_t degree = 2;
  bool certify = false;
};

int run_taylor(const TaylorArgs& a, const Global& g, Output& out) {
  const FreeMapOracle f = make_oracle(a.map);
  if (a.certify) {
    ReconOptions ro;
    ro.tol = g.tol;
    ro.seed = g.seed;
    const ReconResult r = reconstruct_polynomial(f, a.degree, ro);
    out.primary("NCPOLY1", textio::write_ncpoly_tuple(r.polys));
    for (const DegreeReport& c : r.certificate)
      out.record("", {{"degree", c.degree}, {"residual", c.residual}, {"level", c.level}});
    if (!r.passed) {
      out.text("not a free polynomial of degree <= " + std::to_string(a.degree));
      if (r.witness) out.fail("certificate", r.witness->level, r.witness->residual);
      if (r.direct_sums)
        for (const Witness& w : r.direct_sums->witnesses) out.fail(w.check, w.level, w.residual);
    }
    return out.status();
  }
  TaylorOptions to;
  to.tol = g.tol;
  to.seed = g.seed;
  const TaylorResult t = taylor_at_zero(f, a.degree, to);
  out.primary("NCPOLY1", series_text(t.series, 1e-9));
  for (const DegreeReport& c : t.level_checks)
    out.record("", {{"degree", c.degree}, {"residual", c.residual}, {"level", c.level}});
  out.record("", {{"truncation_residual", t.residual}});
  for (std::size_t m : t.flagged)
    for (const DegreeReport& c : t.level_checks)
      if (c.degree == m) out.fail("level_consistency", c.level, c.residual);
  return out.status();
}

struct ExpandArgs {
  MapSpec map;
  std::string at;
  std::size_t degree = 2;
  std::size_t s_eval = 0;
  double tol = 1e-6;
};

int run_expand(const ExpandArgs& a, const Global& g, Output& out) {
  const FreeMapOracle f = make_oracle(a.map);
  const MatTuple centre = read_tuple(a.at);
  ExpandOptions eo;
  eo.tol = a.tol;
  eo.seed = g.seed;
  const std::size_t s = a.s_eval ? a.s_eval : a.degree + 1;
  const GenExpansion e = expand_at_point(f, centre, a.degree, s, eo);
  std::string text;
  for (std::size_t m = 0; m < e.parts.size(); ++m)
    for (std::size_t o = 0; o < e.parts[m].size(); ++o) {
      text += "# degree=" + std::to_string(m) + " output=" + std::to_string(o + 1) + "\n";
      text += textio::write_genpoly(e.parts[m][o]);
    }
  out.primary("GENPOLY1", text);
  out.record("", {{"coefficient_dim", e.coeff_basis.dim()}});
  for (std::size_t m = 0; m < e.residuals.size(); ++m)
    out.record("", {{"degree", m}, {"residual", e.residuals[m]}, {"nullity", e.nullity[m]},
                    {"level", centre.level() * s}});
  for (std::size_t m : e.flagged) out.fail("expand_degree_" + std::to_string(m), centre.level() * s, e.residuals[m]);
  return out.status();
}

struct IdentityArgs {
  std::size_t standard = 0;
  std::string poly, trace;
  std::size_t n = 2;
  bool exact = false;
};

int run_identity(const IdentityArgs& a, const Global& g, Output& out) {
  IdentityOptions io;
  io.trials = g.trials;
  io.seed = g.seed;
  io.exact = a.exact;
  io.tol = g.tol;
  IdentityVerdict v;
  if (a.standard > 0) {
    if (a.standard % 2) throw Error("--standard takes the even degree 2k of S_2k");
    v = is_standard_identity(a.standard / 2, a.n, io);
  } else if (!a.poly.empty()) {
    v = is_identity(parse_file(a.poly, textio::ncpoly_from_string), a.n, io);
  } else if (!a.trace.empty()) {
    v = is_identity(parse_file(a.trace, textio::tracepoly_from_string), a.n, io);
  } else {
    throw Error("identity needs --standard, --poly or --trace");
  }
  out.text(v.identity ? "IDENTITY" : "NON-IDENTITY");
  out.record("", {{"n", a.n}, {"trials", v.trials}, {"max_residual", v.max_residual}, {"exact", a.exact}});
  if (v.witness) out.primary("MTX1", textio::write_mattuple(*v.witness));
  return 0;
}

struct InvertArgs {
  bool formal = false, newton = false;
  std::size_t degree = 3;
  std::string poly;
  MapSpec map;
  std::string target, start;
  std::size_t maxit = 50;
};

void report_newton(const NewtonTrace& tr, std::size_t level, double tol, Output& out) {
  for (std::size_t i = 0; i < tr.iterates.size(); ++i)
    out.record("", {{"iter", i}, {"res", tr.iterates[i].residual}, {"step", tr.iterates[i].step}});
  out.record("", {{"condition", tr.condition}, {"trust_radius", tr.trust_radius}, {"status", tr.message}});
  out.primary("MTX1", textio::write_mattuple(tr.x));
  if (!tr.converged) out.fail("newton", level, tr.iterates.empty() ? INFINITY : tr.iterates.back().residual);
  (void)tol;
}

int run_invert(const InvertArgs& a, const Global& g, Output& out) {
  if (a.formal == a.newton) throw Error("invert needs exactly one of --formal, --newton");
  if (a.formal) {
    const auto polys = parse_file(a.poly, textio::ncpoly_tuple_from_string);
    SeriesTuple f;
    for (const NCPoly& p : polys) f.push_back(FormalSeries::from_poly(p, a.degree));
    const SeriesTuple h = formal_inverse(f, a.degree);
    out.primary("NCPOLY1", series_text(h, 1e-12));
    const double resid = series_distance(series_compose(f, h), identity_tuple(f.size(), a.degree, f[0].mode()));
    out.record("", {{"degree", a.degree}, {"composition_residual", resid}});
    return 0;
  }
  const FreeMapOracle f = make_oracle(a.map);
  const MatTuple y = read_tuple(a.target);
  NewtonOptions no;
  no.tol = g.tol;
  no.maxit = a.maxit;
  const MatTuple x0 = a.start.empty() ? MatTuple::zeros(f.arity(), y.level(), y.field()) : read_tuple(a.start);
  try {
    report_newton(newton_invert(f, y, x0, no), y.level(), g.tol, out);
  } catch (const SingularError& e) {
    out.text(std::string(e.what()) + " (condition " + fmt_double(e.condition()) + ")");
    out.fail("newton", y.level(), INFINITY);
  }
  return out.status();
}

struct ImplicitArgs {
  bool formal = false, numeric = false;
  std::size_t degree = 3;
  std::size_t nx = 1;
  std::string poly;
  MapSpec map;
  std::string at, start;
};

int run_implicit(const ImplicitArgs& a, const Global& g, Output& out) {
  if (a.formal == a.numeric) throw Error("implicit needs exactly one of --formal, --numeric");
  if (a.formal) {
    const auto polys = parse_file(a.poly, textio::ncpoly_tuple_from_string);
    SeriesTuple f;
    for (const NCPoly& p : polys) f.push_back(FormalSeries::from_poly(p, a.degree));
    out.primary("NCPOLY1", series_text(implicit_solve(f, a.nx, a.degree), 1e-12));
    return 0;
  }
  const FreeMapOracle f = make_oracle(a.map);
  const MatTuple x = read_tuple(a.at);
  const std::size_t ny = f.out_arity();
  const MatTuple y0 = a.start.empty() ? MatTuple::zeros(ny, x.level(), x.field()) : read_tuple(a.start);
  NewtonOptions no;
  no.tol = g.tol;
  try {
    report_newton(implicit_solve(f, a.nx, x, y0, no), x.level(), g.tol, out);
  } catch (const SingularError& e) {
    out.text(std::string(e.what()) + " (condition " + fmt_double(e.condition()) + ")");
    out.fail("implicit", x.level(), INFINITY);
  }
  return out.status();
}

struct DemoArgs {
  std::string name;
  DemoOptions opts;
};

int run_demo_cmd(const DemoArgs& a, const Global& g, Output& out) {
  DemoOptions o = a.opts;
  o.seed = g.seed;
  const DemoReport r = run_demo(a.name, o);
  for (const std::string& l : r.lines) out.text(l);
  for (const DemoCheck& c : r.checks) {
    json fields{{"check", c.name}, {"status", c.passed ? "PASS" : "FAIL"}};
    if (!c.detail.empty()) fields["detail"] = c.detail;
    out.record("demo", fields);
  }
  if (!r.passed()) {
    for (const DemoCheck& c : r.checks)
      if (!c.passed) out.fail("demo_" + a.name, 0, NAN);
  }
  return out.status();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"freenc: free noncommutative functions with involution"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_flag("--json", g.json, "report lines as JSON objects");
  app.add_option("--tol", g.tol, "tolerance")->capture_default_str();
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--trials", g.trials, "random trials")->capture_default_str();
  app.add_option("--out", g.out, "write the primary output to this file");
  app.add_option("--simd", g.simd, "kernel backend: scalar, avx2, neon");

  CanonArgs canon;
  auto* c = app.add_subcommand("canon", "canonical forms of words and polynomials");
  c->add_option("word", canon.word, "word tokens, e.g. x2 x1*");
  c->add_flag("--cyclic", canon.cyclic, "least rotation");
  c->add_flag("--star", canon.star, "least rotation of w and its involution");
  c->add_flag("--involution", canon.involution, "apply the involution first");
  c->add_option("--poly", canon.poly, "NCPOLY1 file");
  c->add_option("--trace", canon.trace, "TRPOLY1 file");

  EvalArgs ev;
  auto* e = app.add_subcommand("eval", "evaluate a polynomial on an MTX1 tuple");
  e->add_option("--poly", ev.poly, "NCPOLY1 file");
  e->add_option("--trace", ev.trace, "TRPOLY1 file");
  e->add_option("--gen", ev.gen, "GENPOLY1 file");
  e->add_option("--at", ev.at, "MTX1 file")->required();

  CheckArgs ck;
  auto* chk = app.add_subcommand("check", "free-map axioms and derivative identities");
  add_map_options(chk, ck.map);
  chk->add_option("--levels", ck.levels, "direct-sum level pairs m,n;m,n")->capture_default_str();
  chk->add_option("--sim-levels", ck.sim_levels, "similarity levels")->capture_default_str();
  chk->add_option("--group", ck.group, "GL, O or U (default: declared group)");
  chk->add_option("--deriv-tol", ck.deriv_tol, "tolerance of derivative identities")->capture_default_str();

  ExtractArgs ex;
  auto* xt = app.add_subcommand("extract", "coefficient extraction of a homogeneous part");
  add_map_options(xt, ex.map);
  xt->add_option("--degree", ex.degree, "degree m")->required();
  xt->add_option("--level", ex.level, "evaluation level (default m+1)");
  xt->add_flag("--raw", ex.raw, "treat the map as homogeneous of degree m");

  TaylorArgs ta;
  auto* tay = app.add_subcommand("taylor", "power series at 0");
  add_map_options(tay, ta.map);
  tay->add_option("--degree", ta.degree, "degree bound D")->required();
  tay->add_flag("--certify", ta.certify, "certify a polynomial of degree <= D");

  ExpandArgs ea;
  auto* xp = app.add_subcommand("expand-at", "generalized expansion at a matrix point");
  add_map_options(xp, ea.map);
  xp->add_option("--at", ea.at, "MTX1 centre")->required();
  xp->add_option("--degree", ea.degree, "degree bound D")->required();
  xp->add_option("--s-eval", ea.s_eval, "evaluation multiplicity (default D+1)");
  xp->add_option("--residual-tol", ea.tol, "least-squares tolerance")->capture_default_str();

  IdentityArgs ia;
  auto* id = app.add_subcommand("identity", "polynomial and trace identity testing");
  id->add_option("--standard", ia.standard, "even degree 2k of the standard polynomial S_2k");
  id->add_option("--poly", ia.poly, "NCPOLY1 file");
  id->add_option("--trace", ia.trace, "TRPOLY1 file");
  id->add_option("--n", ia.n, "matrix size")->capture_default_str();
  id->add_flag("--exact", ia.exact, "exact rational arithmetic on integer tuples");

  InvertArgs iv;
  auto* inv = app.add_subcommand("invert", "formal or Newton inversion");
  inv->add_flag("--formal", iv.formal, "series reversion of an NCPOLY1 tuple");
  inv->add_flag("--newton", iv.newton, "levelwise Newton solve");
  inv->add_option("--degree", iv.degree, "truncation degree")->capture_default_str();
  inv->add_option("--poly", iv.poly, "NCPOLY1 tuple (formal)");
  inv->add_option("--map", iv.map.name, "map (newton)");
  inv->add_option("--param", iv.map.params, "map parameter key=value");
  inv->add_option("--target", iv.target, "MTX1 target Y (newton)");
  inv->add_option("--start", iv.start, "MTX1 start X0 (newton)");
  inv->add_option("--maxit", iv.maxit, "iteration limit")->capture_default_str();

  ImplicitArgs im;
  auto* imp = app.add_subcommand("implicit", "implicit function: f(x, h(x)) = 0");
  imp->add_flag("--formal", im.formal, "series solution");
  imp->add_flag("--numeric", im.numeric, "Newton solution at a point");
  imp->add_option("--degree", im.degree, "truncation degree")->capture_default_str();
  imp->add_option("--nx", im.nx, "number of x variables (listed first)")->capture_default_str();
  imp->add_option("--poly", im.poly, "NCPOLY1 tuple (formal)");
  imp->add_option("--map", im.map.name, "map (numeric)");
  imp->add_option("--param", im.map.params, "map parameter key=value");
  imp->add_option("--at", im.at, "MTX1 point xhat (numeric)");
  imp->add_option("--start", im.start, "MTX1 start y0 (numeric)");

  DemoArgs da;
  auto* dm = app.add_subcommand("demo", "scripted examples: cont, ck, sin, nonuniform, roundtrip, inverse");
  dm->add_option("name", da.name, "demo name")->required();
  dm->add_option("--n", da.opts.n, "nonuniform: n")->capture_default_str();
  dm->add_option("--m", da.opts.m, "cont: exponent 1/m")->capture_default_str();
  dm->add_option("--k", da.opts.k, "ck: exponent k+1/2")->capture_default_str();
  dm->add_option("--count", da.opts.count, "roundtrip: number of polynomials")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (!g.simd.empty()) {
      if (g.simd == "scalar")
        kernels::set_backend(kernels::Backend::Scalar);
      else if (g.simd == "avx2")
        kernels::set_backend(kernels::Backend::Avx2);
      else if (g.simd == "neon")
        kernels::set_backend(kernels::Backend::Neon);
      else
        throw Error("unknown --simd backend '" + g.simd + "'");
    }
    Output out(g);
    if (*c) return run_canon(canon, out);
    if (*e) return run_eval(ev, out);
    if (*chk) return run_check(ck, g, out);
    if (*xt) return run_extract(ex, out);
    if (*tay) return run_taylor(ta, g, out);
    if (*xp) return run_expand(ea, g, out);
    if (*id) return run_identity(ia, g, out);
    if (*inv) return run_invert(iv, g, out);
    if (*imp) return run_implicit(im, g, out);
    if (*dm) return run_demo_cmd(da, g, out);
  } catch (const std::exception& ex_) {
    std::cerr << "error: " << ex_.what() << "\n";
    return 1;
  }
  return 1;
}
