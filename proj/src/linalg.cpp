#include "freenc/linalg.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "freenc/error.hpp"

namespace freenc {

namespace linalg {

Eigen::MatrixXd to_eigen_real(const Matrix& a) {
  const std::size_t n = a.size();
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a.re(i, j);
  return m;
}

Eigen::MatrixXcd to_eigen_complex(const Matrix& a) {
  const std::size_t n = a.size();
  Eigen::MatrixXcd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
  return m;
}

Matrix from_eigen(const Eigen::MatrixXd& a) {
  Matrix m(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) m.set(i, j, a(i, j));
  return m;
}

Matrix from_eigen(const Eigen::MatrixXcd& a) {
  Matrix m(static_cast<std::size_t>(a.rows()), Field::Complex);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) m.set(i, j, a(i, j));
  return m;
}

Eigen::VectorXd vec_real(const Matrix& a) {
  const auto plane = a.real_plane();
  return Eigen::Map<const Eigen::VectorXd>(plane.data(), static_cast<Eigen::Index>(plane.size()));
}

Eigen::VectorXcd vec_complex(const Matrix& a) {
  const std::size_t n = a.size();
  Eigen::VectorXcd v(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) v(i * n + j) = a(i, j);
  return v;
}

Matrix unvec(const Eigen::VectorXd& v, std::size_t n) {
  Matrix m(n);
  for (std::size_t k = 0; k < n * n; ++k) m.real_plane()[k] = v(k);
  return m;
}

Matrix unvec(const Eigen::VectorXcd& v, std::size_t n, Field field) {
  Matrix m(n, field);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex z = v(i * n + j);
      m.set(i, j, field == Field::Real ? Complex(z.real()) : z);
    }
  return m;
}

HermitianEigen hermitian_eigen(const Matrix& a) {
  HermitianEigen out;
  if (a.is_complex()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen_complex(a));
    out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    out.vectors = from_eigen(Eigen::MatrixXcd(es.eigenvectors()));
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen_real(a));
    out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    out.vectors = from_eigen(Eigen::MatrixXd(es.eigenvectors()));
  }
  return out;
}

std::vector<double> singular_values(const Matrix& a) {
  Eigen::VectorXd s;
  if (a.is_complex())
    s = Eigen::JacobiSVD<Eigen::MatrixXcd>(to_eigen_complex(a)).singularValues();
  else
    s = Eigen::JacobiSVD<Eigen::MatrixXd>(to_eigen_real(a)).singularValues();
  return {s.data(), s.data() + s.size()};
}

double condition_number(const Matrix& a) {
  const auto s = singular_values(a);
  if (s.empty()) return 1.0;
  if (s.back() == 0.0) return std::numeric_limits<double>::infinity();
  return s.front() / s.back();
}

Matrix inverse(const Matrix& a) {
  const double cond = condition_number(a);
  if (!(cond < 1e14)) throw SingularError("matrix is numerically singular", cond);
  if (a.is_complex()) return from_eigen(Eigen::MatrixXcd(to_eigen_complex(a).inverse()));
  return from_eigen(Eigen::MatrixXd(to_eigen_real(a).inverse()));
}

template <class M>
static M nullspace_impl(const M& m, double rel_cutoff, double scale) {
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0) return M::Identity(cols, cols);
  Eigen::JacobiSVD<M> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = std::max(s.size() ? s(0) : 0.0, scale);
  Eigen::Index rank = 0;
  if (smax > 0.0)
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > rel_cutoff * smax) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

Eigen::MatrixXd nullspace(const Eigen::MatrixXd& m, double rel_cutoff, double scale) {
  return nullspace_impl(m, rel_cutoff, scale);
}
Eigen::MatrixXcd nullspace(const Eigen::MatrixXcd& m, double rel_cutoff, double scale) {
  return nullspace_impl(m, rel_cutoff, scale);
}

}  // namespace linalg

double spectral_norm(const Matrix& a) {
  const auto s = linalg::singular_values(a);
  return s.empty() ? 0.0 : s.front();
}

}  // namespace freenc
