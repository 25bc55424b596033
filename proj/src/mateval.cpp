#include "freenc/mateval.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>

#include "freenc/eval.hpp"
#include "freenc/linalg.hpp"

namespace freenc {

std::string to_string(Group g) {
  switch (g) {
    case Group::GL:
      return "GL";
    case Group::O:
      return "O";
    case Group::U:
      return "U";
  }
  return "?";
}

namespace {

detail::LetterImages<Matrix> images(const MatTuple& x) {
  return detail::LetterImages<Matrix>(std::span<const Matrix>(x.components()), x.level());
}

}  // namespace

Matrix eval_word(const Word& w, const MatTuple& x) {
  auto img = images(x);
  return detail::eval_word(w, img);
}

Matrix eval_ncpoly(const NCPoly& p, const MatTuple& x) {
  auto img = images(x);
  return detail::eval_terms(p.terms(), img, [](Matrix& acc, const Complex& c, const Matrix& m) {
    acc.add_scaled(c, m);
  });
}

MatTuple eval_ncpoly(const std::vector<NCPoly>& ps, const MatTuple& x) {
  std::vector<Matrix> out;
  out.reserve(ps.size());
  for (const NCPoly& p : ps) out.push_back(eval_ncpoly(p, x));
  return MatTuple(std::move(out));
}

Matrix eval_tracepoly(const TracePoly& p, const MatTuple& x) {
  auto img = images(x);
  Matrix acc(x.level(), x.field());
  for (const auto& [mono, c] : p.terms()) {
    Complex scalar = c;
    for (const Word& w : mono.pure) scalar *= detail::eval_word(w, img).trace();
    acc.add_scaled(scalar, detail::eval_word(mono.tail, img));
  }
  return acc;
}

Matrix eval_genpoly(const GenPoly& p, const MatTuple& x) {
  const std::size_t n = p.coeff_size();
  const std::size_t level = x.level();
  if (n == 0 || level % n != 0)
    throw SizeError("generalized polynomial over M_" + std::to_string(n) +
                    " evaluated at level " + std::to_string(level));
  const std::size_t s = level / n;
  const Matrix id_s = Matrix::identity(s);
  auto img = images(x);
  Matrix acc(level, x.field());
  for (const GenTerm& t : p.terms()) {
    Matrix prod = kron(t.mats.front(), id_s);
    for (std::size_t i = 0; i < t.letters.size(); ++i)
      prod = prod * img(t.letters[i]) * kron(t.mats[i + 1], id_s);
    acc += prod;
  }
  return acc;
}

QMatrix eval_word(const Word& w, std::span<const QMatrix> x) {
  detail::LetterImages<QMatrix> img(x, x.empty() ? 0 : x.front().size());
  return detail::eval_word(w, img);
}

QMatrix eval_ncpoly(const QNCPoly& p, std::span<const QMatrix> x) {
  detail::LetterImages<QMatrix> img(x, x.empty() ? 0 : x.front().size());
  return detail::eval_terms(p.terms(), img,
                            [](QMatrix& acc, const Rational& c, const QMatrix& m) {
                              acc.add_scaled(c, m);
                            });
}

QMatrix eval_tracepoly(const QTracePoly& p, std::span<const QMatrix> x) {
  const std::size_t n = x.empty() ? 0 : x.front().size();
  detail::LetterImages<QMatrix> img(x, n);
  QMatrix acc(n);
  for (const auto& [mono, c] : p.terms()) {
    Rational scalar = c;
    for (const Word& w : mono.pure) scalar *= detail::eval_word(w, img).trace();
    acc.add_scaled(scalar, detail::eval_word(mono.tail, img));
  }
  return acc;
}

MatTuple direct_sum(const MatTuple& x, const MatTuple& y) {
  if (x.arity() != y.arity()) throw SizeError("direct sum of tuples with different arity");
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < x.arity(); ++k) out.push_back(direct_sum(x[k], y[k]));
  return MatTuple(std::move(out));
}

double group_violation(const Matrix& sigma, Group group) {
  const std::size_t n = sigma.size();
  switch (group) {
    case Group::GL:
      return 0.0;
    case Group::O:
      // O_n is real: an imaginary part counts against membership.
      return (sigma * sigma.transpose() - Matrix::identity(n)).max_abs() +
             (sigma.is_complex() ? 0.5 * (sigma - sigma.conj()).max_abs() : 0.0);
    case Group::U:
      return (sigma * sigma.adjoint() - Matrix::identity(n)).max_abs();
  }
  return 0.0;
}

Matrix conjugate(const Matrix& x, const Matrix& sigma, Group group, double tol) {
  if (sigma.size() != x.size()) throw SizeError("conjugating matrix has the wrong size");
  if (group == Group::GL) return sigma * x * linalg::inverse(sigma);
  const double v = group_violation(sigma, group);
  if (v > tol)
    throw DomainError("conjugating matrix is not in " + to_string(group) +
                      " (violation " + std::to_string(v) + ")");
  return sigma * x * (group == Group::O ? sigma.transpose() : sigma.adjoint());
}

MatTuple conjugate(const MatTuple& x, const Matrix& sigma, Group group, double tol) {
  if (x.arity() == 0) return x;
  if (sigma.size() != x.level()) throw SizeError("conjugating matrix has the wrong size");
  Matrix inv;
  if (group == Group::GL) {
    inv = linalg::inverse(sigma);
  } else {
    const double v = group_violation(sigma, group);
    if (v > tol)
      throw DomainError("conjugating matrix is not in " + to_string(group) +
                        " (violation " + std::to_string(v) + ")");
    inv = group == Group::O ? sigma.transpose() : sigma.adjoint();
  }
  std::vector<Matrix> out;
  for (const Matrix& m : x) out.push_back(sigma * m * inv);
  return MatTuple(std::move(out));
}

Matrix random_gaussian(std::size_t n, Field field, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(n, field);
  for (double& v : m.real_plane()) v = normal(rng);
  if (field == Field::Complex) {
    const double h = std::sqrt(0.5);
    for (double& v : m.real_plane()) v *= h;
    for (double& v : m.imag_plane()) v = h * normal(rng);
  }
  return m;
}

MatTuple random_tuple(std::size_t g, std::size_t n, Field field, Rng& rng) {
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < g; ++k) out.push_back(random_gaussian(n, field, rng));
  return MatTuple(std::move(out));
}

MatTuple random_ball_tuple(std::size_t g, std::size_t n, Field field, double radius, Rng& rng) {
  MatTuple x = random_tuple(g, n, field, rng);
  const double nx = norm(x);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double r = radius * uni(rng);
  return nx > 0.0 ? x * Complex(r / nx) : x;
}

GroupElement random_group_element(Group group, std::size_t n, Rng& rng) {
  if (n == 0) throw SizeError("group element of size 0");
  if (group == Group::GL) {
    for (;;) {
      Matrix s = random_gaussian(n, Field::Real, rng);
      const double cond = linalg::condition_number(s);
      if (cond < 1e6) return {std::move(s), cond};
    }
  }
  if (group == Group::O) {
    const Eigen::MatrixXd a = linalg::to_eigen_real(random_gaussian(n, Field::Real, rng));
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR();
    for (Eigen::Index j = 0; j < q.cols(); ++j)
      if (r(j, j) < 0) q.col(j) = -q.col(j);
    return {linalg::from_eigen(q), 1.0};
  }
  const Eigen::MatrixXcd a = linalg::to_eigen_complex(random_gaussian(n, Field::Complex, rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0) q.col(j) *= r(j, j) / mag;
  }
  return {linalg::from_eigen(q), 1.0};
}

GroupElement random_group_element(Group group, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_group_element(group, n, rng);
}

Matrix sym_matrix_function(const MatrixFunction& fn, const Matrix& s,
                           const MatrixFunctionOptions& opts) {
  const double scale = std::max(1.0, s.frobenius_norm());
  if (distance(s, s.star()) > opts.symmetry_tol * scale)
    throw DomainError(std::string("matrix function needs a ") +
                      (s.is_complex() ? "hermitian" : "symmetric") + " argument");
  if (!s.is_finite()) throw DomainError("matrix function of a non-finite matrix");
  const Matrix sym = (s + s.star()) * 0.5;
  const auto eig = linalg::hermitian_eigen(sym);
  double lam_max = 1.0;
  for (double l : eig.values) lam_max = std::max(lam_max, std::abs(l));

  std::vector<double> f(eig.values.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    double l = eig.values[i];
    switch (fn.kind) {
      case MatrixFunction::Kind::Pow:
        if (fn.alpha <= 0) throw DomainError("pow needs a positive exponent");
        if (l < -opts.negative_eig_tol * lam_max)
          throw DomainError("pow of a matrix with negative eigenvalue " + std::to_string(l));
        f[i] = l <= 0 ? 0.0 : std::pow(l, fn.alpha);
        break;
      case MatrixFunction::Kind::Sin:
        f[i] = std::sin(l);
        break;
      case MatrixFunction::Kind::Cos:
        f[i] = std::cos(l);
        break;
    }
  }
  const Matrix& v = eig.vectors;
  Matrix scaled = v;  // columns scaled by f
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) scaled.set(i, j, v(i, j) * f[j]);
  return scaled * v.adjoint();
}

namespace {

// Row-major vec: vec(c b) = (I ⊗ b^T) vec(c), vec(b c) = (b ⊗ I) vec(c).
template <class EM>
EM commutator_operator(std::span<const Matrix> bs, std::size_t n, auto to_eigen) {
  const Eigen::Index nn = static_cast<Eigen::Index>(n * n);
  EM op = EM::Zero(static_cast<Eigen::Index>(bs.size()) * nn, nn);
  for (std::size_t t = 0; t < bs.size(); ++t) {
    const auto b = to_eigen(bs[t]);
    const Eigen::Index off = static_cast<Eigen::Index>(t) * nn;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Eigen::Index row = off + static_cast<Eigen::Index>(i * n + j);
        for (std::size_t k = 0; k < n; ++k) {
          op(row, static_cast<Eigen::Index>(i * n + k)) += b(k, j);
          op(row, static_cast<Eigen::Index>(k * n + j)) -= b(i, k);
        }
      }
  }
  return op;
}

}  // namespace

SubspaceBasis centralizer(std::span<const Matrix> bs, std::size_t n, double rel_cutoff) {
  for (const Matrix& b : bs)
    if (b.size() != n) throw SizeError("centralizer: matrix of the wrong size");
  const bool complex =
      std::any_of(bs.begin(), bs.end(), [](const Matrix& b) { return b.is_complex(); });
  SubspaceBasis out{n, {}};
  // [b, .] has norm up to 2|b|; measure the cutoff against that scale.
  double scale = 0.0;
  for (const Matrix& b : bs) scale = std::max(scale, 2.0 * b.frobenius_norm());
  if (complex) {
    const auto op = commutator_operator<Eigen::MatrixXcd>(
        bs, n, [](const Matrix& m) { return linalg::to_eigen_complex(m); });
    const Eigen::MatrixXcd null = linalg::nullspace(op, rel_cutoff, scale);
    for (Eigen::Index c = 0; c < null.cols(); ++c)
      out.basis.push_back(linalg::unvec(Eigen::VectorXcd(null.col(c)), n, Field::Complex));
  } else {
    const auto op = commutator_operator<Eigen::MatrixXd>(
        bs, n, [](const Matrix& m) { return linalg::to_eigen_real(m); });
    const Eigen::MatrixXd null = linalg::nullspace(op, rel_cutoff, scale);
    for (Eigen::Index c = 0; c < null.cols(); ++c)
      out.basis.push_back(linalg::unvec(Eigen::VectorXd(null.col(c)), n));
  }
  return out;
}

SubspaceBasis centralizer(const SubspaceBasis& b, double rel_cutoff) {
  return centralizer(std::span<const Matrix>(b.basis), b.n, rel_cutoff);
}

Matrix project(const Matrix& m, const SubspaceBasis& v) {
  if (m.size() != v.n) throw SizeError("projection onto a subspace of another size");
  Matrix p(m.size(), m.field());
  for (const Matrix& b : v.basis) p.add_scaled(trace_inner(m, b), b);
  return p;
}

double subspace_residual(const Matrix& m, const SubspaceBasis& v) {
  return distance(m, project(m, v));
}

namespace {

// Gram-Schmidt step, two passes. The candidate is dropped when what is left
// after projection is below tol * max(|cand|, floor).
bool adjoin(SubspaceBasis& v, Matrix cand, double tol, double floor) {
  const double scale = cand.frobenius_norm();
  if (scale == 0.0) return false;
  for (int pass = 0; pass < 2; ++pass)
    for (const Matrix& b : v.basis) cand.add_scaled(-trace_inner(cand, b), b);
  const double rest = cand.frobenius_norm();
  if (rest <= tol * std::max(scale, floor)) return false;
  cand *= Complex(1.0 / rest);
  v.basis.push_back(std::move(cand));
  return true;
}

}  // namespace

SubspaceBasis generated_algebra(const MatTuple& a, bool with_involution, double tol) {
  const std::size_t n = a.level();
  SubspaceBasis v{n, {}};
  if (n == 0) return v;
  std::vector<Matrix> gens;
  for (const Matrix& m : a) {
    gens.push_back(m);
    if (with_involution) gens.push_back(m.star());
  }
  double floor = 1.0;
  for (const Matrix& gm : gens) floor = std::max(floor, gm.frobenius_norm());
  adjoin(v, Matrix::identity(n, a.field()), tol, floor);
  for (const Matrix& gm : gens) adjoin(v, gm, tol, floor);
  // Close under right multiplication by generators until the span is stable.
  for (std::size_t round = 0; round < n * n; ++round) {
    const std::size_t before = v.dim();
    const std::vector<Matrix> current = v.basis;
    for (const Matrix& b : current)
      for (const Matrix& gm : gens) {
        adjoin(v, b * gm, tol, floor);
        if (v.dim() == n * n) return v;
      }
    if (v.dim() == before) break;
  }
  return v;
}

}  // namespace freenc
