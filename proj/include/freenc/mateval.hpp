#pragma once
// Numerical evaluation of all polynomial flavors on matrix tuples, group
// sampling, spectral matrix functions and centralizer/span computations.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "freenc/genpoly.hpp"
#include "freenc/matrix.hpp"
#include "freenc/ncpoly.hpp"
#include "freenc/qmatrix.hpp"
#include "freenc/tracepoly.hpp"

namespace freenc {

using Rng = std::mt19937_64;

enum class Group { GL, O, U };
std::string to_string(Group g);

// Starred letters are evaluated as transposes on real tuples and as
// conjugate transposes on complex tuples.
Matrix eval_word(const Word& w, const MatTuple& x);
Matrix eval_ncpoly(const NCPoly& p, const MatTuple& x);
MatTuple eval_ncpoly(const std::vector<NCPoly>& ps, const MatTuple& x);
Matrix eval_tracepoly(const TracePoly& p, const MatTuple& x);
// x must have level n*s; every coefficient a acts as a ⊗ I_s.
Matrix eval_genpoly(const GenPoly& p, const MatTuple& x);

// Exact evaluation on rational tuples (starred letters are transposes).
QMatrix eval_word(const Word& w, std::span<const QMatrix> x);
QMatrix eval_ncpoly(const QNCPoly& p, std::span<const QMatrix> x);
QMatrix eval_tracepoly(const QTracePoly& p, std::span<const QMatrix> x);

MatTuple direct_sum(const MatTuple& x, const MatTuple& y);
// Componentwise sigma X_i sigma^{-1}. For O and U sigma must be orthogonal
// or unitary within tol; for GL it must be invertible.
MatTuple conjugate(const MatTuple& x, const Matrix& sigma, Group group, double tol = 1e-8);
Matrix conjugate(const Matrix& x, const Matrix& sigma, Group group, double tol = 1e-8);
// Residual of sigma against membership in the group (0 for GL if invertible).
double group_violation(const Matrix& sigma, Group group);

struct GroupElement {
  Matrix sigma;
  double condition = 1.0;
};
// GL: Gaussian, resampled until the condition number is below 1e6.
// O/U: Q factor of a Gaussian matrix with R's diagonal sign/phase removed.
GroupElement random_group_element(Group group, std::size_t n, std::uint64_t seed);
GroupElement random_group_element(Group group, std::size_t n, Rng& rng);

Matrix random_gaussian(std::size_t n, Field field, Rng& rng);
MatTuple random_tuple(std::size_t g, std::size_t n, Field field, Rng& rng);
// Uniform radius in [0, radius) along a Gaussian direction, scaled in the
// tuple Frobenius norm.
MatTuple random_ball_tuple(std::size_t g, std::size_t n, Field field, double radius, Rng& rng);

struct MatrixFunction {
  enum class Kind { Pow, Sin, Cos };
  Kind kind = Kind::Sin;
  double alpha = 1.0;

  static MatrixFunction pow(double a) { return {Kind::Pow, a}; }
  static MatrixFunction sin() { return {Kind::Sin, 1.0}; }
  static MatrixFunction cos() { return {Kind::Cos, 1.0}; }
};

struct MatrixFunctionOptions {
  double symmetry_tol = 1e-8;       // relative to max(1, |S|_F)
  double negative_eig_tol = 1e-10;  // relative to max(1, largest |eigenvalue|)
};

// Spectral calculus on symmetric / hermitian S.
Matrix sym_matrix_function(const MatrixFunction& fn, const Matrix& s,
                           const MatrixFunctionOptions& opts = {});

// Subspace of M_n, orthonormal under the trace inner product.
struct SubspaceBasis {
  std::size_t n = 0;
  std::vector<Matrix> basis;

  std::size_t dim() const { return basis.size(); }
};

// {c : c b = b c for all b in bs}; rank cutoff relative to the largest
// singular value of the stacked commutator map.
SubspaceBasis centralizer(std::span<const Matrix> bs, std::size_t n, double rel_cutoff = 1e-10);
SubspaceBasis centralizer(const SubspaceBasis& b, double rel_cutoff = 1e-10);

// Unital algebra generated by the components of a (and their stars).
SubspaceBasis generated_algebra(const MatTuple& a, bool with_involution, double tol = 1e-10);

Matrix project(const Matrix& m, const SubspaceBasis& v);
// Frobenius distance from m to span(v).
double subspace_residual(const Matrix& m, const SubspaceBasis& v);

}  // namespace freenc
