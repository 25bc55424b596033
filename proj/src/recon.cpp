#include "freenc/recon.hpp"

#include <cmath>
#include <numbers>

#include "freenc/error.hpp"

namespace freenc {

namespace {

// Coefficients of T_0..T_N in the monomial basis.
std::vector<std::vector<double>> chebyshev_monomials(std::size_t N) {
  std::vector<std::vector<double>> t(N + 1, std::vector<double>(N + 1, 0.0));
  t[0][0] = 1.0;
  if (N >= 1) t[1][1] = 1.0;
  for (std::size_t k = 1; k < N; ++k)
    for (std::size_t m = 0; m <= N; ++m) {
      double v = -t[k - 1][m];
      if (m > 0) v += 2.0 * t[k][m - 1];
      t[k + 1][m] = v;
    }
  return t;
}

double spectral_or_zero(const MatTuple& x) { return x.arity() == 0 ? 0.0 : max_spectral_norm(x); }

}  // namespace

std::size_t interpolation_degree(const FreeMapOracle& f, std::size_t D, const InterpolationOptions& opts) {
  if (opts.fit_degree > 0) return std::max(opts.fit_degree, D);
  if (f.smoothness().kind == Smoothness::Kind::Polynomial)
    return std::max<std::size_t>(D, static_cast<std::size_t>(std::max(0, f.smoothness().order)));
  return D + 16;
}

std::vector<MatTuple> homogeneous_parts(const FreeMapOracle& f, const MatTuple& x, std::size_t D,
                                        const InterpolationOptions& opts, const MatTuple* center) {
  const std::size_t N = interpolation_degree(f, D, opts);
  const std::size_t n = x.level();
  double h = opts.h;
  if (h <= 0.0) {
    const double r = f.radius(n);
    const double xn = spectral_or_zero(x);
    const bool poly = f.smoothness().kind == Smoothness::Kind::Polynomial;
    if (std::isinf(r)) {
      h = poly ? 1.0 : 1.0 / std::max(1.0, xn);
    } else {
      const double room = r - (center ? spectral_or_zero(*center) : 0.0);
      if (room <= 0.0) throw DomainError("expansion centre outside the domain");
      h = xn > 0.0 ? std::min(1.0, 0.5 * room / xn) : 1.0;
    }
  }
  // Values at Chebyshev nodes.
  const std::size_t count = N + 1;
  std::vector<double> s(count);
  std::vector<MatTuple> values;
  for (std::size_t j = 0; j < count; ++j) {
    s[j] = std::cos(std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(count));
    MatTuple p = x * Complex(h * s[j]);
    if (center) p += *center;
    values.push_back(f(p));
  }
  // weight[m][j]: contribution of node j to the t^m coefficient.
  const auto tm = chebyshev_monomials(N);
  std::vector<MatTuple> parts;
  for (std::size_t m = 0; m <= D; ++m) {
    MatTuple acc = values[0] * Complex(0.0);
    const double scale = std::pow(h, -static_cast<double>(m));
    for (std::size_t j = 0; j < count; ++j) {
      double w = 0.0;
      for (std::size_t k = m; k <= N; ++k) {
        if (tm[k][m] == 0.0) continue;
        double ck = 2.0 / static_cast<double>(count) *
                    std::cos(std::numbers::pi * static_cast<double>(k) * (static_cast<double>(j) + 0.5) /
                             static_cast<double>(count));
        if (k == 0) ck *= 0.5;
        w += ck * tm[k][m];
      }
      if (w != 0.0) acc += values[j] * Complex(w * scale);
    }
    parts.push_back(std::move(acc));
  }
  return parts;
}

MatTuple homogeneous_part_eval(const FreeMapOracle& f, std::size_t m, const MatTuple& x, std::size_t D,
                               const InterpolationOptions& opts) {
  if (m > D) throw DomainError("homogeneous part above the degree bound");
  return homogeneous_parts(f, x, D, opts)[m];
}

MatenotePlan matenote_plan(const Word& w, std::size_t g, std::size_t level) {
  const std::size_t m = w.degree();
  if (level == 0) level = m + 1;
  if (level < m + 1) throw SizeError("matenote level below deg w + 1");
  if (w.max_var() > g) throw SizeError("matenote word uses more than g variables");
  std::vector<Matrix> a(g, Matrix::zero(level));
  for (std::size_t p = 0; p < m; ++p) {
    const Letter l = w[p];
    if (l.starred)
      a[l.var - 1u].add_to(p + 1, p, 1.0);
    else
      a[l.var - 1u].add_to(p, p + 1, 1.0);
  }
  return {w, level, MatTuple(std::move(a))};
}

std::vector<QMatrix> matenote_plan_exact(const Word& w, std::size_t g, std::size_t level) {
  const MatenotePlan plan = matenote_plan(w, g, level);
  std::vector<QMatrix> out;
  for (const Matrix& m : plan.tuple) {
    QMatrix q(plan.level);
    for (std::size_t i = 0; i < plan.level; ++i)
      for (std::size_t j = 0; j < plan.level; ++j)
        if (m.re(i, j) != 0.0) q(i, j) = Rational(static_cast<long long>(m.re(i, j)));
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<NCPoly> matenote_extract(const HomogeneousEvaluator& f_hom, std::size_t m, std::size_t g,
                                     std::size_t g_out, Involution mode, const MatenoteOptions& opts) {
  std::vector<NCPoly> out(g_out, NCPoly(mode));
  for (const Word& w : enumerate_words(m, g, has_involution(mode))) {
    const MatenotePlan plan = matenote_plan(w, g, opts.level);
    const MatTuple y = f_hom(plan.tuple);
    if (y.arity() != g_out) throw SizeError("matenote: evaluator returned wrong arity");
    for (std::size_t j = 0; j < g_out; ++j) {
      Complex c = y[j](0, m);
      if (std::abs(c.imag()) <= opts.cleanup) c = {c.real(), 0.0};
      if (std::abs(c) > opts.cleanup) out[j].add_term(w, c);
    }
  }
  return out;
}

std::vector<QNCPoly> matenote_extract_exact(const ExactEvaluator& f_hom, std::size_t m, std::size_t g,
                                            std::size_t g_out, Involution mode, std::size_t level) {
  std::vector<QNCPoly> out(g_out, QNCPoly(mode));
  for (const Word& w : enumerate_words(m, g, has_involution(mode))) {
    const auto a = matenote_plan_exact(w, g, level);
    const auto y = f_hom(a);
    if (y.size() != g_out) throw SizeError("matenote: evaluator returned wrong arity");
    for (std::size_t j = 0; j < g_out; ++j) out[j].add_term(w, y[j](0, m));
  }
  return out;
}

Involution extraction_mode(const FreeMapOracle& f) {
  switch (f.group()) {
    case Group::GL:
      return Involution::None;
    case Group::O:
      return Involution::Transpose;
    case Group::U:
      return Involution::Adjoint;
  }
  return Involution::None;
}

TaylorResult taylor_at_zero(const FreeMapOracle& f, std::size_t D, const TaylorOptions& opts) {
  const Involution mode = extraction_mode(f);
  const std::size_t g = f.arity();
  const std::size_t go = f.out_arity();
  TaylorResult res;
  res.series.assign(go, FormalSeries(D, mode));
  auto hom = [&](std::size_t m) {
    return [&f, m, D, &opts](const MatTuple& x) {
      return homogeneous_part_eval(f, m, x, D, opts.interp);
    };
  };
  for (std::size_t m = 0; m <= D; ++m) {
    MatenoteOptions mo = opts.matenote;
    mo.level = m + 1;
    const auto polys = matenote_extract(hom(m), m, g, go, mode, mo);
    for (std::size_t j = 0; j < go; ++j) res.series[j].set_part(m, polys[j]);
    if (opts.check_levels) {
      mo.level = m + 2;
      const auto again = matenote_extract(hom(m), m, g, go, mode, mo);
      double gap = 0.0;
      for (std::size_t j = 0; j < go; ++j) gap = std::max(gap, max_coeff_diff(polys[j], again[j]));
      res.level_checks.push_back({m, m + 2, gap});
      if (gap > opts.tol) res.flagged.push_back(m);
    }
  }
  // Truncation residual on a small ball.
  Rng rng(opts.seed);
  std::vector<NCPoly> full;
  for (const FormalSeries& s : res.series) full.push_back(s.to_poly());
  for (std::size_t t = 0; t < opts.residual_samples; ++t) {
    const std::size_t n = 1 + t % 3;
    const double r = f.radius(n);
    const double radius = opts.residual_radius * (std::isinf(r) ? 1.0 : std::min(1.0, r / 2.0));
    const MatTuple x = random_ball_tuple(g, n, f.field(), radius, rng);
    res.residual = std::max(res.residual, distance(f(x), eval_ncpoly(full, x)));
  }
  return res;
}

ReconResult reconstruct_polynomial(const FreeMapOracle& f, std::size_t d, const ReconOptions& opts) {
  TaylorOptions to;
  to.tol = opts.tol;
  to.interp = opts.interp;
  to.check_levels = false;
  to.residual_samples = 0;
  to.seed = opts.seed;
  const TaylorResult t = taylor_at_zero(f, d, to);
  ReconResult res;
  for (const FormalSeries& s : t.series) res.polys.push_back(s.to_poly());
  Rng rng(opts.seed);
  for (std::size_t level : {d + 1, d + 2}) {
    const double r = f.radius(level);
    const double radius = std::isinf(r) ? 1.0 : r / 2.0;
    double worst = 0.0;
    for (std::size_t k = 0; k < opts.trials; ++k) {
      const MatTuple x = random_ball_tuple(f.arity(), level, f.field(), radius, rng);
      const MatTuple fx = f(x);
      const double resid = distance(fx, eval_ncpoly(res.polys, x)) / std::max(1.0, norm(fx));
      if (resid > worst) {
        worst = resid;
        if (resid > opts.tol) res.witness = Witness{"certificate", level, x, resid, ""};
      }
    }
    res.certificate.push_back({d, level, worst});
    res.max_residual = std::max(res.max_residual, worst);
  }
  res.passed = res.max_residual <= opts.tol;
  if (!res.passed) {
    CheckOptions co;
    co.trials = 5;
    co.tol = opts.tol;
    co.seed = opts.seed;
    res.direct_sums = check_direct_sums(f, {{1, 1}, {1, 2}}, co);
  }
  return res;
}

}  // namespace freenc
