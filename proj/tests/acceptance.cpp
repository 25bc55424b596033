// Acceptance suite: one PASS/FAIL line per criterion.
//
//   freenc_acceptance        run every criterion
//   freenc_acceptance N ...  run the listed criteria
//
// Exit status is 0 when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "freenc/demo.hpp"
#include "freenc/invfun.hpp"
#include "freenc/linalg.hpp"
#include "freenc/recon.hpp"
#include "freenc/textio.hpp"

using namespace freenc;

namespace {

// Pinned tolerances.
constexpr double kRoundTripTol = 1e-7;
constexpr double kRoundTripSeconds = 60.0;
constexpr double kDerivativeTol = 1e-6;
constexpr double kWitnessTol = 1e-9;
constexpr double kGapTol = 1e-6;
constexpr double kSinPartTol = 1e-6;
constexpr double kSlopeTol = 0.2;
constexpr double kCompositionTol = 1e-10;
constexpr double kNewtonTol = 1e-10;
constexpr double kEquivarianceTol = 1e-7;
constexpr double kAgreementSlopeMargin = 0.5;
constexpr double kExpandResidualTol = 1e-6;
constexpr double kCoeffSubspaceTol = 1e-6;
constexpr double kReassemblyTol = 1e-5;
constexpr double kCentralizerTol = 1e-8;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Matrix E(std::size_t n, std::size_t i, std::size_t j) { return Matrix::unit(n, i, j); }
NCPoly P(const std::string& s) { return textio::ncpoly_from_string(s); }

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Matrix scaled_to(Matrix m, double norm) { return m * (norm / m.frobenius_norm()); }

// ---------------------------------------------------------------------------

Outcome round_trip() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t recovered = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(1000 + seed);
    const std::size_t g = 1 + seed % 3, d = seed % 5;
    const Involution mode = (seed / 5) % 2 ? Involution::Transpose : Involution::None;
    const NCPoly p = random_ncpoly(g, d, mode, rng);
    TaylorOptions to;
    to.seed = seed;
    const TaylorResult r = taylor_at_zero(oracle_from_ncpoly(p, g), d, to);
    const double err = max_coeff_diff(r.series[0].to_poly().cleaned(1e-12), p);
    worst = std::max(worst, err);
    if (err <= kRoundTripTol) ++recovered;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(recovered == 50, std::to_string(50 - recovered) + " polynomials not recovered");
  o.require(secs < kRoundTripSeconds, "runtime " + fmt("%.1f s", secs));
  o.note(std::to_string(recovered) + "/50 recovered, max error " + fmt("%.2e", worst) + ", " + fmt("%.2f s", secs));
  return o;
}

Outcome matenote_hand_values() {
  Outcome o;
  auto exact = [](const QNCPoly& p) {
    return [p](std::span<const QMatrix> x) { return std::vector<QMatrix>{eval_ncpoly(p, x)}; };
  };
  // The plan tuple evaluated by the word itself has 1 at entry (1, m+1).
  const Word w12 = textio::parse_word("x1 x2");
  const auto plan = matenote_plan_exact(w12, 2);
  o.require(eval_word(w12, plan)(0, 2) == 1, "x1 x2 plan does not read 1 at (1,3)");
  o.require(eval_word(textio::parse_word("x2 x1"), plan).is_zero(), "x2 x1 does not vanish on the plan");

  const QNCPoly sym = to_rational(P("NCPOLY1\n1 : x1 x2\n1 : x2 x1\n"));
  const auto a = matenote_extract_exact(exact(sym), 2, 2, 1, Involution::None);
  o.require(a[0].coeff(w12) == 1 && a[0] == sym, "x1x2 + x2x1 case");

  const QNCPoly id = to_rational(P("NCPOLY1\n1 : x1\n"));
  o.require(matenote_extract_exact(exact(id), 1, 1, 1, Involution::None)[0] == id, "x1 case");

  const QNCPoly xxt = to_rational(P("NCPOLY1 mode=transpose\n1 : x1 x1*\n"));
  const auto plan2 = matenote_plan_exact(textio::parse_word("x1 x1*"), 1);
  o.require(plan2[0] == QMatrix::unit(3, 1, 2) + QMatrix::unit(3, 3, 2), "x1 x1^t plan is not e12 + e32");
  const auto c = matenote_extract_exact(exact(xxt), 2, 1, 1, Involution::Transpose);
  o.require(c[0] == xxt && c[0].coeff(textio::parse_word("x1* x1")) == 0, "x1 x1^t case");
  o.note("3 micro-cases exact in rational mode");
  return o;
}

Outcome derivative_identities() {
  Outcome o;
  Rng rng(3);
  CheckReport tri, com;
  for (int t = 0; t < 20; ++t) {
    const NCPoly p = random_ncpoly(1 + t % 2, 1 + t % 4, Involution::None, rng);
    // Odd trials use the numeric derivative instead of the symbolic one.
    const FreeMapOracle exact = oracle_from_ncpoly(p, 1 + t % 2);
    const FreeMapOracle f = t % 2 ? exact.without_derivative() : exact;
    for (std::size_t n : {2u, 3u}) {
      const MatTuple x = random_tuple(f.arity(), n, Field::Real, rng);
      const MatTuple h = random_tuple(f.arity(), n, Field::Real, rng);
      tri.merge(check_triangular_identity(f, x, h, kDerivativeTol));
    }
  }
  for (int t = 0; t < 20; ++t) {
    FreeMapOracle f = t == 0   ? pow_xxt(1.5)
                      : t == 1 ? sinxxt()
                               : oracle_from_ncpoly(random_ncpoly(1, 1 + t % 4, Involution::Transpose, rng), 1);
    if (t % 2) f = f.without_derivative();
    for (std::size_t n : {2u, 3u}) {
      const MatTuple x = random_tuple(1, n, Field::Real, rng) * 0.5;
      const Matrix r = random_gaussian(n, Field::Real, rng);
      com.merge(check_commutator_identity(f, x, r - r.transpose(), kDerivativeTol));
    }
  }
  o.require(tri.passed(), "block identity violated: " + fmt("%.2e", tri.max_violation));
  o.require(com.passed(), "commutator identity violated: " + fmt("%.2e", com.max_violation));
  o.note("block max " + fmt("%.1e", tri.max_violation) + ", commutator max " + fmt("%.1e", com.max_violation));
  return o;
}

Outcome amitsur_levitzki() {
  Outcome o;
  for (std::size_t n = 1; n <= 3; ++n) {
    IdentityOptions io;
    io.exact = true;
    io.trials = 100;
    io.seed = n;
    const IdentityVerdict yes = is_standard_identity(n, n, io);
    o.require(yes.identity && yes.max_residual == 0.0 && yes.trials == 100,
              "S_" + std::to_string(2 * n) + " not an identity on M_" + std::to_string(n));
    io.trials = 50;
    const IdentityVerdict no = is_standard_identity(n, n + 1, io);
    o.require(!no.identity && no.witness.has_value(),
              "no witness for S_" + std::to_string(2 * n) + " on M_" + std::to_string(n + 1));
    if (no.witness) o.note("M_" + std::to_string(n + 1) + " witness after " + std::to_string(no.trials) + " trials");
  }
  return o;
}

Outcome nonuniform_counterexample() {
  Outcome o;
  const FreeMapOracle f = nonuniform();
  for (std::size_t n : {3u, 4u}) {
    const std::string tag = "n=" + std::to_string(n) + ": ";
    const auto x = nonuniform_witness_exact(n);
    for (std::size_t k = 1; k <= n + 1; ++k) {
      const QMatrix h = nonuniform_h(k, x);
      if (k != n) {
        o.require(h.is_zero(), tag + "h_" + std::to_string(k) + " != 0");
      } else {
        QMatrix expect = QMatrix::unit(n + 1, 1, n + 1) * Rational(static_cast<long>(n + 1));
        if (n % 2 == 0) expect = -expect;
        o.require(h == expect, tag + "h_n value");
      }
    }
    const std::size_t deg = nonuniform_h_degree(n);
    o.require(deg == 2 * n * n + 3 * n + 1, tag + "deg h_n = " + std::to_string(deg));

    const double c = nonuniform_witness_scale(n);
    // (n+1)! c^deg = pi/2
    double fact = 1;
    for (std::size_t i = 2; i <= n + 1; ++i) fact *= static_cast<double>(i);
    o.require(std::abs(fact * std::pow(c, static_cast<double>(deg)) - std::numbers::pi / 2) < 1e-12, tag + "scale");
    const MatTuple y = nonuniform_witness(n) * Complex(c);
    const Matrix fy = f(y)[0];
    Matrix target = E(n + 1, 1, n + 1) + E(n + 1, n + 1, 1);
    if (n % 2 == 0) target *= Complex(-1.0);
    const double err = distance(fy, target);
    o.require(err < kWitnessTol, tag + "f(y) error " + fmt("%.2e", err));

    InterpolationOptions io;
    io.h = 0.5;
    Matrix partial = Matrix::zero(n + 1);
    for (const MatTuple& p : homogeneous_parts(f, y, n, io)) partial += p[0];
    const double gap = spectral_norm(fy - partial);
    o.require(std::abs(gap - 1.0) < kGapTol, tag + "gap " + fmt("%.9f", gap));
    o.note(tag + "f(y) err " + fmt("%.1e", err) + ", gap " + fmt("%.9f", gap));
  }
  // Symbolic degrees where the expansion is small enough.
  for (std::size_t k = 1; k <= 2; ++k)
    o.require(static_cast<std::size_t>(nonuniform_h_poly(k).degree()) == 2 * k * k + 3 * k + 1,
              "symbolic deg h_" + std::to_string(k));
  return o;
}

Outcome sin_parts() {
  Outcome o;
  const TaylorResult r = taylor_at_zero(sinxxt(), 6);
  const double e2 = max_coeff_diff(r.series[0].part(2).cleaned(1e-9), P("NCPOLY1 mode=transpose\n1 : x1 x1*\n"));
  const double e6 = max_coeff_diff(r.series[0].part(6).cleaned(1e-9),
                                   P("NCPOLY1 mode=transpose\n-0.16666666666666666 : x1 x1* x1 x1* x1 x1*\n"));
  o.require(e2 < kSinPartTol, "part 2 error " + fmt("%.2e", e2));
  o.require(e6 < kSinPartTol, "part 6 error " + fmt("%.2e", e6));

  const FreeMapOracle f = sinxxt();
  Rng rng(6);
  std::vector<MatTuple> dirs;
  for (int t = 0; t < 20; ++t) {
    const Matrix m = random_gaussian(3, Field::Real, rng);
    dirs.push_back(MatTuple{m * (1.0 / spectral_norm(m))});
  }
  std::vector<double> radii{0.25, 0.5, 1.0, 2.0}, sups;
  for (double R : radii) {
    double sup = 0.0;
    for (const MatTuple& d : dirs) sup = std::max(sup, homogeneous_part_eval(f, 6, d * R, 8)[0].frobenius_norm());
    sups.push_back(sup);
  }
  const double s = slope(radii, sups);
  o.require(std::abs(s - 6.0) <= kSlopeTol, "growth slope " + fmt("%.3f", s));
  o.note("part errors " + fmt("%.1e", e2) + ", " + fmt("%.1e", e6) + "; growth slope " + fmt("%.3f", s));
  return o;
}

Outcome nonsmooth() {
  Outcome o;
  const MatTuple one{Matrix::from_rows({{1.0}})};
  auto scalar = [&](const FreeMapOracle& f, double t) { return f(one * t)[0](0, 0).real(); };
  std::vector<double> hs;
  for (int e = 1; e <= 6; ++e) hs.push_back(std::pow(10.0, -e));

  // (x^2)^(1/3) = |x|^(2/3): the quotient f(h)/h = h^(-1/3) grows.
  const FreeMapOracle cont = pow_xxt(1.0 / 3.0);
  std::vector<double> q;
  for (double h : hs) q.push_back((scalar(cont, h) - scalar(cont, 0.0)) / h);
  const bool grows = std::is_sorted(q.begin(), q.end()) && q.back() > 10 * q.front();
  o.require(grows, "pow 1/3 quotients do not grow");
  o.note("pow 1/3: q1 from " + fmt("%.3g", q.front()) + " to " + fmt("%.3g", q.back()));

  // (x^2)^(3/2) = |x|^3.
  const FreeMapOracle ck = pow_xxt(1.5);
  std::vector<double> q1, q2, q4;
  for (double h : hs) {
    q1.push_back((scalar(ck, h) - scalar(ck, 0.0)) / h);
    q2.push_back(central_difference_quotient(ck, one, 2, h));
    q4.push_back(central_difference_quotient(ck, one, 4, h));
  }
  const bool bounded = *std::max_element(q1.begin(), q1.end()) < 1.0;
  o.require(bounded, "pow 3/2 first differences unbounded");
  const bool diverges = std::is_sorted(q2.begin(), q2.end()) && q2.back() > 10 * q2.front();
  o.require(diverges, "pow 3/2 second quotients do not diverge (q2 = 2h: " + fmt("%.1e", q2.front()) + " -> " +
                          fmt("%.1e", q2.back()) + "); divergence starts at order 4 (q4 = 8/h: " +
                          fmt("%.1e", q4.front()) + " -> " + fmt("%.1e", q4.back()) + ")");
  return o;
}

Outcome inverse_suite() {
  Outcome o;
  // Catalan coefficients.
  const std::size_t D = 5;
  const SeriesTuple f{FormalSeries::from_poly(P("NCPOLY1\n1 : x1\n-1 : x1 x1\n"), D)};
  const SeriesTuple h = formal_inverse(f, D);
  const double catalan[] = {1, 1, 2, 5, 14};
  for (unsigned m = 1; m <= D; ++m) {
    const Complex c = h[0].part(m).coeff(Word(std::vector<Letter>(m, Letter{1, false})));
    o.require(std::abs(c - catalan[m - 1]) < 1e-12, "Catalan coefficient " + std::to_string(m));
  }
  const double comp = series_distance(series_compose(f, h), identity_tuple(1, D, Involution::None));
  o.require(comp < kCompositionTol, "composition residual " + fmt("%.2e", comp));

  // Newton for x + x x^t.
  const FreeMapOracle g = oracle_from_ncpoly(P("NCPOLY1\n1 : x1\n1 : x1 x1*\n"));
  Rng rng(8);
  NewtonOptions no;
  no.tol = kNewtonTol;
  double worst_res = 0, worst_eq = 0;
  for (int t = 0; t < 10; ++t) {
    const MatTuple y{scaled_to(random_gaussian(2 + t % 2, Field::Real, rng), 0.05)};
    const NewtonTrace a = newton_invert(g, y, no);
    const double res = distance(g(a.x)[0], y[0]);
    worst_res = std::max(worst_res, res);
    o.require(a.converged && res < kNewtonTol, "Newton target " + std::to_string(t));
    const Matrix u = random_group_element(Group::O, y.level(), rng).sigma;
    const NewtonTrace b = newton_invert(g, MatTuple{u * y[0] * u.transpose()}, no);
    const double eq = distance(b.x[0], u * a.x[0] * u.transpose());
    worst_eq = std::max(worst_eq, eq);
    o.require(b.converged && eq < kEquivarianceTol, "equivariance at target " + std::to_string(t));
  }

  // Agreement of Newton with the degree-3 formal inverse: error ~ |Y|^4.
  const std::size_t Dg = 3;
  const SeriesTuple gs{FormalSeries::from_poly(P("NCPOLY1\n1 : x1\n1 : x1 x1*\n"), Dg)};
  const NCPoly hg = formal_inverse(gs, Dg)[0].to_poly();
  const Matrix y0 = scaled_to(random_gaussian(2, Field::Real, rng), 1.0);
  NewtonOptions tight;
  tight.tol = 1e-15;
  std::vector<double> norms, errs;
  for (double e : {1.0, 1.5, 2.0}) {
    const double s = std::pow(10.0, -e);
    const MatTuple y{y0 * s};
    const NewtonTrace tr = newton_invert(g, y, tight);
    norms.push_back(s);
    errs.push_back(distance(tr.x[0], eval_ncpoly(hg, y)));
  }
  const double sl = slope(norms, errs);
  o.require(sl >= Dg + kAgreementSlopeMargin, "agreement slope " + fmt("%.2f", sl));
  o.note("composition " + fmt("%.1e", comp) + ", Newton residual " + fmt("%.1e", worst_res) + ", equivariance " +
         fmt("%.1e", worst_eq) + ", agreement slope " + fmt("%.2f", sl));
  return o;
}

Outcome nonscalar_expansion() {
  Outcome o;
  const FreeMapOracle f = oracle_from_ncpoly(P("NCPOLY1\n1 : x1 x1*\n1 : x1\n"));
  const MatTuple a{E(2, 1, 2)};
  const std::size_t s = 3;
  const GenExpansion e = expand_at_point(f, a, 2, s);
  double worst_ls = 0;
  for (double r : e.residuals) worst_ls = std::max(worst_ls, r);
  o.require(worst_ls < kExpandResidualTol, "least-squares residual " + fmt("%.2e", worst_ls));

  const SubspaceBasis alg = generated_algebra(a, true);
  double worst_sub = 0;
  for (const auto& part : e.parts)
    for (const GenTerm& t : part[0].terms())
      for (const Matrix& m : t.mats) worst_sub = std::max(worst_sub, subspace_residual(m, alg));
  o.require(worst_sub < kCoeffSubspaceTol, "coefficient subspace residual " + fmt("%.2e", worst_sub));

  Rng rng(9);
  const Matrix centre = kron(a[0], Matrix::identity(s));
  double worst_fit = 0;
  for (int t = 0; t < 10; ++t) {
    const MatTuple hdir{scaled_to(random_gaussian(2 * s, Field::Real, rng), 0.05 * std::uniform_real_distribution<>(0.1, 1.0)(rng))};
    const MatTuple x{centre + hdir[0]};
    worst_fit = std::max(worst_fit, distance(eval_expansion(e, hdir)[0], f(x)[0]));
  }
  o.require(worst_fit < kReassemblyTol, "reassembly error " + fmt("%.2e", worst_fit));
  o.note("residual " + fmt("%.1e", worst_ls) + ", subspace " + fmt("%.1e", worst_sub) + ", reassembly " +
         fmt("%.1e", worst_fit));
  return o;
}

// Largest residual of the members of `a` against the span of `b`.
double span_gap(const SubspaceBasis& a, const SubspaceBasis& b) {
  double worst = 0;
  for (const Matrix& m : a.basis) worst = std::max(worst, subspace_residual(m, b));
  return worst;
}

Outcome double_centralizer() {
  Outcome o;
  Rng rng(10);
  double worst = 0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + t % 4, g = 1 + t % 2;
    MatTuple a = random_tuple(g, n, Field::Real, rng);
    if (t % 5 == 4) a[0] = E(n, 1, n);  // nilpotent generator
    const SubspaceBasis b = generated_algebra(a, true);
    const SubspaceBasis cc = centralizer(centralizer(b));
    const double gap = std::max(span_gap(b, cc), span_gap(cc, b));
    worst = std::max(worst, gap);
    o.require(cc.dim() == b.dim() && gap < kCentralizerTol, "O case t=" + std::to_string(t));
  }
  double worst_gl = 0;
  for (int t = 0; t < 6; ++t) {
    const std::size_t n = 2 + t % 2;
    const NCPoly p = random_ncpoly(1, 2, Involution::None, rng);
    const FreeMapOracle f = oracle_from_ncpoly(p, 1);
    MatTuple a = random_tuple(1, n, Field::Real, rng);
    if (t % 3 == 2) a[0] = E(n, 1, 2);
    const GenExpansion e = expand_at_point(f, a, 1, 2);
    Matrix c0 = Matrix::zero(n);
    for (const GenTerm& term : e.parts[0][0].terms()) c0 += term.mats[0];
    const SubspaceBasis cc = centralizer(centralizer(generated_algebra(a, false)));
    const double gap = subspace_residual(c0, cc);
    worst_gl = std::max({worst_gl, gap, distance(c0, f(a)[0])});
    o.require(gap < kCentralizerTol && distance(c0, f(a)[0]) < kCentralizerTol, "GL case t=" + std::to_string(t));
  }
  o.note("O-case span gap " + fmt("%.1e", worst) + ", GL-case f(A) residual " + fmt("%.1e", worst_gl));
  return o;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "round-trip reconstruction of 50 random polynomials", round_trip},
      {2, "coefficient extraction hand values (exact)", matenote_hand_values},
      {3, "block and commutator derivative identities", derivative_identities},
      {4, "standard polynomial identities on M_n", amitsur_levitzki},
      {5, "nonuniform counterexample at n = 3, 4", nonuniform_counterexample},
      {6, "sin(xx^t) homogeneous parts and growth", sin_parts},
      {7, "non-smoothness of (xx^t)^(1/3) and (xx^t)^(3/2)", nonsmooth},
      {8, "formal and Newton inversion", inverse_suite},
      {9, "expansion of x1 x1^t + x1 at e12", nonscalar_expansion},
      {10, "double centralizers", double_centralizer},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  bool ok = true;
  for (const Criterion& c : all) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    ok = ok && out.pass;
    std::printf("criterion %2d %s  %s  [%s]\n", c.id, out.pass ? "PASS" : "FAIL", c.title, out.detail.c_str());
    std::fflush(stdout);
  }
  return ok ? 0 : 1;
}
