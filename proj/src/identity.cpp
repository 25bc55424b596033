#include <algorithm>
#include <cmath>
#include <numeric>

#include "freenc/error.hpp"
#include "freenc/recon.hpp"

namespace freenc {

namespace {

int permutation_sign(const std::vector<std::size_t>& p) {
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) sign = -sign;
  return sign;
}

Rational exact_coeff(const Complex& c) {
  if (c.imag() != 0.0) throw DomainError("exact identity testing needs real coefficients");
  return to_rational(NCPoly::constant(c)).coeff(Word::unit());
}

std::vector<QMatrix> random_integer_tuple(std::size_t g, std::size_t n, int range, Rng& rng) {
  std::uniform_int_distribution<int> dist(-range, range);
  std::vector<QMatrix> out;
  for (std::size_t k = 0; k < g; ++k) {
    QMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
    out.push_back(std::move(m));
  }
  return out;
}

MatTuple to_numeric(const std::vector<QMatrix>& q) {
  std::vector<Matrix> out;
  for (const QMatrix& a : q) {
    Matrix m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j) m.set(i, j, a(i, j).convert_to<double>());
    out.push_back(std::move(m));
  }
  return MatTuple(std::move(out));
}

double max_abs(const QMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a(i, j).convert_to<double>()));
  return m;
}

// Upper bound for ||w(X)|| summed over the terms, used to scale residuals.
template <class Poly, class WordsOf>
double magnitude_bound(const Poly& p, const MatTuple& x, WordsOf words_of) {
  std::vector<double> norms;
  for (const Matrix& m : x) norms.push_back(m.frobenius_norm());
  double bound = 0.0;
  for (const auto& [mono, c] : p.terms()) {
    double t = std::abs(c);
    for (const Word& w : words_of(mono))
      for (Letter l : w) t *= norms[l.var - 1u];
    bound += t;
  }
  return bound;
}

template <class Eval, class ExactEval, class Bound>
IdentityVerdict run_identity(std::size_t g, std::size_t n, Field field, const IdentityOptions& opts,
                             Eval eval, ExactEval exact_eval, Bound bound) {
  IdentityVerdict v;
  Rng rng(opts.seed);
  for (std::size_t t = 0; t < opts.trials; ++t) {
    ++v.trials;
    if (opts.exact) {
      const auto x = random_integer_tuple(g, n, opts.entry_range, rng);
      const QMatrix y = exact_eval(x);
      const double r = max_abs(y);
      v.max_residual = std::max(v.max_residual, r);
      if (!y.is_zero()) {
        v.identity = false;
        v.witness = to_numeric(x);
        return v;
      }
    } else {
      const MatTuple x = random_tuple(g, n, field, rng);
      const Matrix y = eval(x);
      const double r = y.frobenius_norm() / std::max(1e-300, bound(x));
      v.max_residual = std::max(v.max_residual, r);
      if (r > opts.tol) {
        v.identity = false;
        v.witness = x;
        return v;
      }
    }
  }
  return v;
}

QTracePoly to_rational_trace(const TracePoly& p) {
  QTracePoly q(p.mode());
  for (const auto& [m, c] : p.terms()) q.add_term(m, exact_coeff(c));
  return q;
}

std::size_t trace_vars(const TracePoly& p) {
  std::size_t g = 1;
  for (const auto& [m, c] : p.terms()) {
    g = std::max<std::size_t>(g, m.tail.max_var());
    for (const Word& w : m.pure) g = std::max<std::size_t>(g, w.max_var());
  }
  return g;
}

Field coeff_field(const auto& p) {
  for (const auto& [m, c] : p.terms())
    if (c.imag() != 0.0) return Field::Complex;
  return p.mode() == Involution::Adjoint ? Field::Complex : Field::Real;
}

}  // namespace

NCPoly standard_polynomial(std::size_t k) {
  if (k == 0) throw DomainError("standard polynomial needs k >= 1");
  if (k > standard_polynomial_max_k)
    throw CapacityError("expanded standard polynomial is limited to k <= " +
                        std::to_string(standard_polynomial_max_k));
  std::vector<std::size_t> perm(2 * k);
  std::iota(perm.begin(), perm.end(), 0);
  NCPoly s;
  do {
    std::vector<Letter> letters;
    for (std::size_t i : perm) letters.push_back(Letter{static_cast<std::uint16_t>(i + 1), false});
    s.add_term(Word(std::move(letters)), static_cast<double>(permutation_sign(perm)));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return s;
}

IdentityVerdict is_identity(const NCPoly& p, std::size_t n, const IdentityOptions& opts) {
  const std::size_t g = std::max<std::size_t>(1, p.num_vars());
  std::optional<QNCPoly> q;
  if (opts.exact) {
    QNCPoly r(p.mode());
    for (const auto& [w, c] : p.terms()) r.add_term(w, exact_coeff(c));
    q = std::move(r);
  }
  return run_identity(
      g, n, coeff_field(p), opts, [&](const MatTuple& x) { return eval_ncpoly(p, x); },
      [&](const std::vector<QMatrix>& x) { return eval_ncpoly(*q, x); },
      [&](const MatTuple& x) {
        return magnitude_bound(p, x, [](const Word& w) { return std::vector<Word>{w}; });
      });
}

IdentityVerdict is_identity(const TracePoly& p, std::size_t n, const IdentityOptions& opts) {
  const std::size_t g = trace_vars(p);
  std::optional<QTracePoly> q;
  if (opts.exact) q = to_rational_trace(p);
  return run_identity(
      g, n, coeff_field(p), opts, [&](const MatTuple& x) { return eval_tracepoly(p, x); },
      [&](const std::vector<QMatrix>& x) { return eval_tracepoly(*q, x); },
      [&](const MatTuple& x) {
        // |tr(w)| <= sqrt(n) ||w||_F for every trace factor.
        const double sq = std::sqrt(static_cast<double>(x.level()));
        double bound = 0.0;
        for (const auto& [m, c] : p.terms()) {
          TracePoly single(p.mode());
          single.add_term(m, c);
          bound += magnitude_bound(single, x, [](const TraceMonomial& t) {
                     std::vector<Word> ws = t.pure;
                     ws.push_back(t.tail);
                     return ws;
                   }) *
                   std::pow(sq, static_cast<double>(m.pure.size()));
        }
        return bound;
      });
}

IdentityVerdict is_standard_identity(std::size_t k, std::size_t n, const IdentityOptions& opts) {
  if (k == 0) throw DomainError("standard polynomial needs k >= 1");
  const std::size_t g = 2 * k;
  double perms = 1.0;
  for (std::size_t i = 2; i <= g; ++i) perms *= static_cast<double>(i);
  return run_identity(
      g, n, Field::Real, opts,
      [&](const MatTuple& x) {
        return standard_poly_eval<Matrix>(x.components(), Matrix::identity(n));
      },
      [&](const std::vector<QMatrix>& x) {
        return standard_poly_eval<QMatrix>(x, QMatrix::identity(n));
      },
      [&](const MatTuple& x) {
        double b = perms;
        for (const Matrix& m : x) b *= m.frobenius_norm();
        return b;
      });
}

}  // namespace freenc
