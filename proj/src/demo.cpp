#include "freenc/demo.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "freenc/error.hpp"
#include "freenc/invfun.hpp"
#include "freenc/oracle.hpp"
#include "freenc/recon.hpp"
#include "freenc/textio.hpp"

namespace freenc {

bool DemoReport::passed() const {
  for (const DemoCheck& c : checks)
    if (!c.passed) return false;
  return true;
}

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) return false;
  return true;
}

std::vector<double> decades() { return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}; }

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

DemoReport demo_cont(const DemoOptions& o) {
  DemoReport r{"cont", {}, {}};
  const FreeMapOracle f = pow_xxt(1.0 / static_cast<double>(o.m));
  r.lines.push_back("f(x) = (x x^t)^(1/" + std::to_string(o.m) + "), scalar level");
  std::vector<double> q;
  const MatTuple one{Matrix::identity(1)};
  for (double h : decades()) {
    q.push_back(norm(f(one * Complex(h))) / h);
    r.lines.push_back("h=" + fmt("%.0e", h) + " |f(h)|/h=" + fmt("%.6g", q.back()));
  }
  r.checks.push_back({"difference quotient grows as h -> 0", strictly_increasing(q),
                      "last/first = " + fmt("%.3g", q.back() / q.front())});
  return r;
}

DemoReport demo_ck(const DemoOptions& o) {
  DemoReport r{"ck", {}, {}};
  const double alpha = static_cast<double>(o.k) + 0.5;
  const FreeMapOracle f = pow_xxt(alpha);
  const int k = static_cast<int>(o.k);
  r.lines.push_back("f(x) = (x x^t)^(" + fmt("%g", alpha) + "), scalar level, central quotients at 0");
  const MatTuple one{Matrix::identity(1)};
  std::vector<std::vector<double>> table(static_cast<std::size_t>(2 * k + 3));
  for (double h : decades()) {
    std::string line = "h=" + fmt("%.0e", h);
    for (int j = 1; j <= 2 * k + 2; ++j) {
      const double q = std::abs(central_difference_quotient(f, one, j, h));
      table[static_cast<std::size_t>(j)].push_back(q);
      line += " q" + std::to_string(j) + "=" + fmt("%.4g", q);
    }
    r.lines.push_back(line);
  }
  const auto& qk = table[static_cast<std::size_t>(k)];
  const auto& qk1 = table[static_cast<std::size_t>(k + 1)];
  const auto& qtop = table[static_cast<std::size_t>(2 * k + 2)];
  const double bound = *std::max_element(qk.begin(), qk.end());
  r.checks.push_back({"order " + std::to_string(k) + " quotients bounded", bound < 10.0,
                      "max = " + fmt("%.3g", bound)});
  r.checks.push_back({"order " + std::to_string(k + 1) + " quotients diverge", strictly_increasing(qk1),
                      "first = " + fmt("%.3g", qk1.front()) + ", last = " + fmt("%.3g", qk1.back())});
  r.lines.push_back("first divergent central quotient has order " + std::to_string(2 * k + 2) +
                    " (last/first = " + fmt("%.3g", qtop.back() / qtop.front()) + ")");
  return r;
}

DemoReport demo_sin(const DemoOptions&) {
  DemoReport r{"sin", {}, {}};
  r.lines.push_back("growth of exp(-sqrt(n)) n^n / n!");
  std::vector<double> g;
  for (int n : {4, 9, 16, 25, 36, 49}) {
    const double lv = -std::sqrt(n) + n * std::log(n) - std::lgamma(n + 1.0);
    g.push_back(lv);
    r.lines.push_back("n=" + std::to_string(n) + " value=" + fmt("%.6g", std::exp(lv)));
  }
  r.checks.push_back({"exp(-sqrt(n)) n^n/n! increases on n = 4, 9, 16, 25, ...", strictly_increasing(g), ""});
  // Taylor coefficients of the scalar map at 0: f(x) = sum_j w_j cos(2^(j+1) x).
  r.lines.push_back("|f^(n)(0)|/n! of the J=40 truncation at the scalar level");
  std::vector<double> c;
  for (int n : {4, 16, 36, 64}) {
    double lsum = -INFINITY;
    for (int j = 0; j <= 40; ++j) {
      const double lw = -std::sqrt(std::ldexp(1.0, j)) + n * (j + 1) * std::numbers::ln2;
      lsum = std::max(lsum, lw) + std::log1p(std::exp(-std::abs(lsum - lw)));
    }
    c.push_back(lsum - std::lgamma(n + 1.0));
    r.lines.push_back("n=" + std::to_string(n) + " log(|f^(n)(0)|/n!)=" + fmt("%.6g", c.back()));
  }
  r.checks.push_back({"Taylor coefficients grow (radius of convergence 0)", strictly_increasing(c), ""});
  return r;
}

DemoReport demo_nonuniform(const DemoOptions& o) {
  DemoReport r{"nonuniform", {}, {}};
  const std::size_t n = o.n;
  if (n < 1 || n + 1 > nonuniform_max_level) throw DomainError("demo nonuniform: n out of range");
  const auto wq = nonuniform_witness_exact(n, true);
  r.lines.push_back("witness tuple (x3 = I + 1/2 e_{n,n+1})");
  r.lines.push_back(textio::write_mattuple(nonuniform_witness(n, true)));
  bool zeros = true;
  QMatrix hn;
  for (std::size_t k = 1; k <= n + 1; ++k) {
    const QMatrix h = nonuniform_h(k, wq);
    if (k == n)
      hn = h;
    else
      zeros = zeros && h.is_zero();
  }
  QMatrix expect(n + 1);
  expect(0, n) = Rational((n % 2 == 1) ? 1 : -1) * Rational(static_cast<long long>(n + 1));
  r.lines.push_back("h_" + std::to_string(n) + "(x) =");
  r.lines.push_back(to_string(hn));
  r.checks.push_back({"h_k(x) = 0 for k != n", zeros, ""});
  r.checks.push_back({"h_n(x) = (-1)^(n-1) (n+1) e_{1,n+1}", hn == expect, ""});
  const std::size_t deg = nonuniform_h_degree(n);
  r.checks.push_back({"deg h_n = 2n^2+3n+1", deg == 2 * n * n + 3 * n + 1, "deg = " + std::to_string(deg)});

  const double c = nonuniform_witness_scale(n);
  const MatTuple y = nonuniform_witness(n, true) * Complex(c);
  const FreeMapOracle f = nonuniform();
  const Matrix fy = f(y)[0];
  Matrix target = Matrix::unit(n + 1, 1, n + 1) + Matrix::unit(n + 1, n + 1, 1);
  if (n % 2 == 0) target *= Complex(-1.0);
  r.lines.push_back("scale c = " + fmt("%.12g", c));
  r.lines.push_back("f(y) =");
  r.lines.push_back(to_string(fy));
  const double err = distance(fy, target);
  r.checks.push_back({"f(y) = (-1)^(n-1)(e_{1,n+1} + e_{n+1,1})", err < 1e-9, "error = " + fmt("%.3g", err)});
  InterpolationOptions io;
  io.h = 0.5;
  const auto parts = homogeneous_parts(f, y, n, io);
  Matrix partial = Matrix::zero(n + 1);
  for (const MatTuple& p : parts) partial += p[0];
  const double gap = spectral_norm(fy - partial);
  r.lines.push_back("||f(y) - sum_{m<=n} f_m(y)|| = " + fmt("%.12g", gap));
  r.checks.push_back({"partial-sum gap norm = 1", std::abs(gap - 1.0) < 1e-6, ""});
  return r;
}

DemoReport demo_roundtrip(const DemoOptions& o) {
  DemoReport r{"roundtrip", {}, {}};
  Rng rng(o.seed);
  std::size_t ok = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < o.count; ++i) {
    const std::size_t g = 1 + i % 3;
    const std::size_t d = i % 5;
    const Involution mode = (i / 5) % 2 ? Involution::Transpose : Involution::None;
    const NCPoly p = random_ncpoly(g, d, mode, rng);
    TaylorOptions to;
    to.check_levels = false;
    to.residual_samples = 0;
    const TaylorResult t = taylor_at_zero(oracle_from_ncpoly(p, g), d, to);
    const double err = max_coeff_diff(t.series[0].to_poly(), p);
    worst = std::max(worst, err);
    if (err < 1e-7) ++ok;
  }
  r.lines.push_back(std::to_string(ok) + "/" + std::to_string(o.count) + " polynomials recovered, max error " +
                    fmt("%.3g", worst));
  r.checks.push_back({"all polynomials recovered within 1e-7", ok == o.count, ""});
  return r;
}

DemoReport demo_inverse(const DemoOptions&) {
  DemoReport r{"inverse", {}, {}};
  const std::size_t D = 5;
  NCPoly fpoly = NCPoly::variable(1);
  fpoly.add_term(Word{{1, false}, {1, false}}, -1.0);
  const SeriesTuple F{FormalSeries::from_poly(fpoly, D)};
  const SeriesTuple H = formal_inverse(F, D);
  std::string coeffs;
  bool catalan = true;
  const double expect[] = {0, 1, 1, 2, 5, 14};
  for (std::size_t m = 1; m <= D; ++m) {
    const Complex c = H[0].part(m).coeff(Word(std::vector<Letter>(m, Letter{1, false})));
    coeffs += (m > 1 ? ", " : "") + fmt("%g", c.real());
    catalan = catalan && std::abs(c - expect[m]) < 1e-12;
  }
  r.lines.push_back("inverse of x - x^2: " + coeffs);
  const double comp = series_distance(series_compose(F, H), identity_tuple(1, D, Involution::None));
  r.checks.push_back({"Catalan coefficients 1, 1, 2, 5, 14", catalan, ""});
  r.checks.push_back({"composition residual < 1e-10", comp < 1e-10, fmt("%.3g", comp)});
  const FreeMapOracle f = oracle_from_ncpoly(fpoly);
  const MatTuple y{Matrix::identity(2) * 0.1};
  const NewtonTrace tr = newton_invert(f, y);
  for (std::size_t i = 0; i < tr.iterates.size(); ++i)
    r.lines.push_back("iter=" + std::to_string(i) + " res=" + fmt("%.3e", tr.iterates[i].residual) +
                      " step=" + fmt("%.3e", tr.iterates[i].step));
  // Degree 12 keeps the truncation error at |Y| = 0.1 below 1e-7.
  const SeriesTuple H12 = formal_inverse({FormalSeries::from_poly(fpoly, 12)}, 12);
  const double agree = distance(tr.x[0], eval_ncpoly(H12[0].to_poly(), y));
  r.lines.push_back("|newton - formal(12)| at 0.1 I = " + fmt("%.3g", agree));
  r.checks.push_back({"Newton converges", tr.converged, tr.message});
  r.checks.push_back({"Newton agrees with the truncated formal inverse", agree < 1e-6, ""});
  return r;
}

}  // namespace

std::vector<std::string> demo_names() { return {"cont", "ck", "sin", "nonuniform", "roundtrip", "inverse"}; }

DemoReport run_demo(const std::string& name, const DemoOptions& opts) {
  if (name == "cont") return demo_cont(opts);
  if (name == "ck") return demo_ck(opts);
  if (name == "sin") return demo_sin(opts);
  if (name == "nonuniform") return demo_nonuniform(opts);
  if (name == "roundtrip") return demo_roundtrip(opts);
  if (name == "inverse") return demo_inverse(opts);
  throw Error("unknown demo '" + name + "'");
}

NCPoly random_ncpoly(std::size_t g, std::size_t degree, Involution mode, Rng& rng, std::size_t max_terms) {
  std::uniform_int_distribution<std::size_t> nterms(1, max_terms);
  std::uniform_int_distribution<std::size_t> deg(0, degree);
  std::uniform_int_distribution<std::size_t> var(1, g);
  std::bernoulli_distribution star(0.5);
  std::normal_distribution<double> coeff(0.0, 1.0);
  NCPoly p(mode);
  auto word = [&](std::size_t d) {
    std::vector<Letter> ls;
    for (std::size_t i = 0; i < d; ++i)
      ls.push_back(Letter{static_cast<std::uint16_t>(var(rng)), has_involution(mode) && star(rng)});
    return Word(std::move(ls));
  };
  p.add_term(word(degree), coeff(rng));
  const std::size_t extra = nterms(rng) - 1;
  for (std::size_t t = 0; t < extra; ++t) p.add_term(word(deg(rng)), coeff(rng));
  return p;
}

double central_difference_quotient(const FreeMapOracle& f, const MatTuple& x, int order, double h) {
  MatTuple acc = x * Complex(0.0);
  for (int i = 0; i <= order; ++i) {
    const double t = (0.5 * order - i) * h;
    const double w = ((i % 2) ? -1.0 : 1.0) * binomial(order, i);
    const MatTuple v = f(x * Complex(t));
    if (acc.arity() != v.arity()) acc = v * Complex(0.0);
    acc += v * Complex(w);
  }
  return norm(acc) / std::pow(h, order);
}

}  // namespace freenc
