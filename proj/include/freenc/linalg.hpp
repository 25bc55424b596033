#pragma once
// Bridges between freenc::Matrix and Eigen for the decompositions we need.

#include <Eigen/Dense>
#include <vector>

#include "freenc/matrix.hpp"

namespace freenc::linalg {

Eigen::MatrixXd to_eigen_real(const Matrix& a);
Eigen::MatrixXcd to_eigen_complex(const Matrix& a);
Matrix from_eigen(const Eigen::MatrixXd& a);
Matrix from_eigen(const Eigen::MatrixXcd& a);

// Column-stacked vec(a) in row-major entry order, as real or complex vector.
Eigen::VectorXd vec_real(const Matrix& a);
Eigen::VectorXcd vec_complex(const Matrix& a);
Matrix unvec(const Eigen::VectorXd& v, std::size_t n);
Matrix unvec(const Eigen::VectorXcd& v, std::size_t n, Field field);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // columns are orthonormal eigenvectors
};
// Symmetric (real) or hermitian (complex) input assumed; only the lower
// triangle is read.
HermitianEigen hermitian_eigen(const Matrix& a);

std::vector<double> singular_values(const Matrix& a);
double condition_number(const Matrix& a);
// Throws SingularError when the condition number exceeds 1e14.
Matrix inverse(const Matrix& a);

// Orthonormal basis (columns) of the nullspace of m, using singular values
// below rel_cutoff * max(sigma_max, scale) (everything when both are zero).
Eigen::MatrixXd nullspace(const Eigen::MatrixXd& m, double rel_cutoff, double scale = 0.0);
Eigen::MatrixXcd nullspace(const Eigen::MatrixXcd& m, double rel_cutoff, double scale = 0.0);

}  // namespace freenc::linalg
