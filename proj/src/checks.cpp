#include <algorithm>
#include <cmath>

#include "freenc/error.hpp"
#include "freenc/linalg.hpp"
#include "freenc/oracle.hpp"

namespace freenc {

void CheckReport::record(Witness w) {
  if (!std::isfinite(w.residual)) w.residual = std::numeric_limits<double>::infinity();
  max_violation = std::max(max_violation, w.residual);
  if (w.residual > tolerance) {
    if (w.check.empty()) w.check = check;
    witnesses.push_back(std::move(w));
    std::stable_sort(witnesses.begin(), witnesses.end(),
                     [](const Witness& a, const Witness& b) { return a.level < b.level; });
  }
}

void CheckReport::merge(const CheckReport& other) {
  trials += other.trials;
  max_violation = std::max(max_violation, other.max_violation);
  for (const Witness& w : other.witnesses) witnesses.push_back(w);
  std::stable_sort(witnesses.begin(), witnesses.end(), [](const Witness& a, const Witness& b) {
    return a.check != b.check ? a.check < b.check : a.level < b.level;
  });
}

namespace {

double sample_radius(const FreeMapOracle& f, std::initializer_list<std::size_t> levels,
                     const CheckOptions& opts) {
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t n : levels) r = std::min(r, f.radius(n));
  return std::isinf(r) ? opts.default_radius : r / 2.0;
}

MatTuple direct_sum_tuple(const MatTuple& a, const MatTuple& b) { return direct_sum(a, b); }

MatTuple commutator(const Matrix& a, const MatTuple& x) {
  std::vector<Matrix> out;
  for (const Matrix& m : x) out.push_back(freenc::commutator(a, m));
  return MatTuple(std::move(out));
}

double scale_of(const MatTuple& y) { return std::max(1.0, norm(y)); }

}  // namespace

CheckReport check_direct_sums(const FreeMapOracle& f,
                              const std::vector<std::pair<std::size_t, std::size_t>>& levels,
                              const CheckOptions& opts) {
  CheckReport rep;
  rep.check = "direct_sum";
  rep.tolerance = opts.tol;
  Rng rng(opts.seed);
  for (const auto& [m, n] : levels) {
    const double r = sample_radius(f, {m, n, m + n}, opts);
    for (std::size_t t = 0; t < opts.trials; ++t) {
      const MatTuple x = random_ball_tuple(f.arity(), m, f.field(), r, rng);
      const MatTuple y = random_ball_tuple(f.arity(), n, f.field(), r, rng);
      const MatTuple xy = direct_sum(x, y);
      ++rep.trials;
      try {
        const MatTuple lhs = f(xy);
        const MatTuple rhs = direct_sum_tuple(f(x), f(y));
        rep.record({rep.check, m + n, xy, distance(lhs, rhs), ""});
      } catch (const Error& e) {
        rep.record({rep.check, m + n, xy, std::numeric_limits<double>::infinity(), e.what()});
      }
    }
  }
  return rep;
}

CheckReport check_similarity(const FreeMapOracle& f, Group group, const std::vector<std::size_t>& levels,
                             const CheckOptions& opts) {
  CheckReport rep;
  rep.check = "similarity_" + to_string(group);
  rep.tolerance = opts.tol;
  Rng rng(opts.seed);
  const Field field = group == Group::U ? Field::Complex : f.field();
  for (std::size_t n : levels) {
    const double r = sample_radius(f, {n}, opts);
    for (std::size_t t = 0; t < opts.trials; ++t) {
      const GroupElement s = random_group_element(group, n, rng);
      MatTuple x = random_ball_tuple(f.arity(), n, field, r, rng);
      // Keep the conjugated point inside a finite domain.
      if (!std::isinf(f.radius(n)) && group == Group::GL) x = x * Complex(1.0 / s.condition);
      ++rep.trials;
      try {
        const MatTuple lhs = f(conjugate(x, s.sigma, group));
        const MatTuple rhs = conjugate(f(x), s.sigma, group);
        rep.record({rep.check, n, x, distance(lhs, rhs) / scale_of(rhs), ""});
      } catch (const Error& e) {
        rep.record({rep.check, n, x, std::numeric_limits<double>::infinity(), e.what()});
      }
    }
  }
  return rep;
}

DerivativeEstimate directional_derivative(const FreeMapOracle& f, const MatTuple& x, const MatTuple& h,
                                          int order, double h0, int richardson_steps) {
  if (order != 1 && order != 2) throw DomainError("directional_derivative: order must be 1 or 2");
  if (richardson_steps < 1) richardson_steps = 1;
  if (h0 <= 0.0) h0 = 1e-3 * (1.0 + norm(x));
  const MatTuple fx = order == 2 ? f(x) : MatTuple();
  auto quotient = [&](double step) {
    const MatTuple fp = f(x + h * Complex(step));
    const MatTuple fm = f(x - h * Complex(step));
    MatTuple q = order == 1 ? (fp - fm) * Complex(0.5 / step)
                            : (fp - fx * Complex(2.0) + fm) * Complex(1.0 / (step * step));
    for (const Matrix& m : q)
      if (!m.is_finite()) throw DomainError("directional_derivative: non-finite evaluation");
    return q;
  };
  // Richardson table; central differences have even error expansions.
  std::vector<std::vector<MatTuple>> t(static_cast<std::size_t>(richardson_steps) + 1);
  double step = h0;
  for (std::size_t i = 0; i < t.size(); ++i, step /= 2.0) {
    t[i].push_back(quotient(step));
    double factor = 4.0;
    for (std::size_t k = 1; k <= i; ++k, factor *= 4.0)
      t[i].push_back(t[i][k - 1] + (t[i][k - 1] - t[i - 1][k - 1]) * Complex(1.0 / (factor - 1.0)));
  }
  const auto& last = t.back();
  DerivativeEstimate est;
  est.value = last.back();
  est.error = distance(last.back(), last[last.size() - 2]);
  return est;
}

MatTuple derivative(const FreeMapOracle& f, const MatTuple& x, const MatTuple& h) {
  if (f.has_derivative()) return f.exact_derivative(x, h);
  return directional_derivative(f, x, h).value;
}

CheckReport check_triangular_identity(const FreeMapOracle& f, const MatTuple& x, const MatTuple& h,
                                      double tol) {
  CheckReport rep;
  rep.check = "triangular";
  rep.tolerance = tol;
  rep.trials = 1;
  const std::size_t n = x.level();
  std::vector<Matrix> zs;
  for (std::size_t k = 0; k < x.arity(); ++k) {
    Matrix z(2 * n, join(x[k].field(), h[k].field()));
    set_block(z, n, 0, 0, x[k]);
    set_block(z, n, 0, 1, h[k]);
    set_block(z, n, 1, 1, x[k]);
    zs.push_back(std::move(z));
  }
  const MatTuple z(std::move(zs));
  try {
    const MatTuple fz = f(z);
    const MatTuple fx = f(x);
    const MatTuple df = derivative(f, x, h);
    double worst = 0.0;
    for (std::size_t k = 0; k < fz.arity(); ++k) {
      worst = std::max(worst, distance(block(fz[k], n, 0, 0), fx[k]));
      worst = std::max(worst, distance(block(fz[k], n, 1, 1), fx[k]));
      worst = std::max(worst, block(fz[k], n, 1, 0).frobenius_norm());
      worst = std::max(worst, distance(block(fz[k], n, 0, 1), df[k]));
    }
    rep.record({rep.check, 2 * n, z, worst / scale_of(fz), ""});
  } catch (const Error& e) {
    rep.record({rep.check, 2 * n, z, std::numeric_limits<double>::infinity(), e.what()});
  }
  return rep;
}

CheckReport check_commutator_identity(const FreeMapOracle& f, const MatTuple& x, const Matrix& a,
                                      double tol, const std::optional<MatTuple>& x2) {
  CheckReport rep;
  rep.check = "commutator";
  rep.tolerance = tol;
  if (a.size() != x.level()) throw SizeError("commutator identity: size of a differs from level");
  if (distance(a, -a.transpose()) > 1e-12 * std::max(1.0, a.frobenius_norm()))
    throw DomainError("commutator identity: a must be skew-symmetric");
  const std::size_t n = x.level();

  ++rep.trials;
  try {
    const MatTuple fx = f(x);
    const MatTuple lhs = derivative(f, x, commutator(a, x));
    const MatTuple rhs = commutator(a, fx);
    rep.record({rep.check, n, x, distance(lhs, rhs) / scale_of(fx), "skew"});
  } catch (const Error& e) {
    rep.record({rep.check, n, x, std::numeric_limits<double>::infinity(), e.what()});
  }

  // Block instance at X1 (+) X2 along [[0, X1-X2], [X1-X2, 0]].
  const MatTuple y = x2 ? *x2 : x * Complex(0.5);
  const MatTuple z = direct_sum(x, y);
  ++rep.trials;
  try {
    std::vector<Matrix> dirs;
    for (std::size_t k = 0; k < x.arity(); ++k) {
      const Matrix d = x[k] - y[k];
      Matrix e(2 * n, d.field());
      set_block(e, n, 0, 1, d);
      set_block(e, n, 1, 0, d);
      dirs.push_back(std::move(e));
    }
    const MatTuple lhs = derivative(f, z, MatTuple(std::move(dirs)));
    const MatTuple fx = f(x);
    const MatTuple fy = f(y);
    double worst = 0.0;
    for (std::size_t k = 0; k < lhs.arity(); ++k) {
      const Matrix diff = fx[k] - fy[k];
      Matrix rhs(2 * n, diff.field());
      set_block(rhs, n, 0, 1, diff);
      set_block(rhs, n, 1, 0, diff);
      worst = std::max(worst, distance(lhs[k], rhs));
    }
    rep.record({rep.check, 2 * n, z, worst / std::max(scale_of(fx), scale_of(fy)), "block"});
  } catch (const Error& e) {
    rep.record({rep.check, 2 * n, z, std::numeric_limits<double>::infinity(), e.what()});
  }
  return rep;
}

}  // namespace freenc
