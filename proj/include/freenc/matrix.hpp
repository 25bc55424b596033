#pragma once
// Dense square matrices over R or C, and g-tuples of them.
//
// Storage is planar row-major: a real plane always, an imaginary plane only
// for complex matrices. Products of planes go through freenc::kernels.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "freenc/scalar.hpp"

namespace freenc {

enum class Field { Real, Complex };
std::string to_string(Field f);
inline Field join(Field a, Field b) {
  return (a == Field::Complex || b == Field::Complex) ? Field::Complex : Field::Real;
}

class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, Field field = Field::Real);

  static Matrix zero(std::size_t n, Field field = Field::Real) { return Matrix(n, field); }
  static Matrix identity(std::size_t n, Field field = Field::Real);
  // Matrix unit e_{i,j}, 1-based indices as in the literature.
  static Matrix unit(std::size_t n, std::size_t i, std::size_t j, Field field = Field::Real);
  static Matrix diagonal(std::span<const double> d);
  // Row-major real entries; rows.size() must be a perfect square.
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t size() const { return n_; }
  Field field() const { return field_; }
  bool is_complex() const { return field_ == Field::Complex; }

  // 0-based element access.
  double re(std::size_t i, std::size_t j) const { return re_[i * n_ + j]; }
  double im(std::size_t i, std::size_t j) const { return field_ == Field::Real ? 0.0 : im_[i * n_ + j]; }
  Complex operator()(std::size_t i, std::size_t j) const { return {re(i, j), im(i, j)}; }
  // Promotes to complex when the value has a nonzero imaginary part.
  void set(std::size_t i, std::size_t j, Complex v);
  void add_to(std::size_t i, std::size_t j, Complex v);

  std::span<double> real_plane() { return re_; }
  std::span<const double> real_plane() const { return re_; }
  std::span<double> imag_plane() { return im_; }
  std::span<const double> imag_plane() const { return im_; }

  Matrix as_field(Field f) const;  // Complex -> Real drops the imaginary part

  Matrix transpose() const;
  Matrix adjoint() const;  // conjugate transpose; equals transpose over R
  Matrix conj() const;
  // transpose() over R, adjoint() over C.
  Matrix star() const { return is_complex() ? adjoint() : transpose(); }

  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool is_finite() const;

  Matrix& operator+=(const Matrix& b);
  Matrix& operator-=(const Matrix& b);
  Matrix& operator*=(Complex s);
  // this += s * b
  Matrix& add_scaled(Complex s, const Matrix& b);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) { return a *= Complex(-1.0); }
  friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
  friend Matrix operator*(Complex s, Matrix a) { return a *= s; }
  friend Matrix operator*(Matrix a, double s) { return a *= Complex(s); }
  friend Matrix operator*(double s, Matrix a) { return a *= Complex(s); }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  // Exact entrywise equality (fields are compared through values).
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  void promote();

  std::size_t n_ = 0;
  Field field_ = Field::Real;
  std::vector<double> re_;
  std::vector<double> im_;
};

// Frobenius norm of a - b.
double distance(const Matrix& a, const Matrix& b);
// Largest singular value.
double spectral_norm(const Matrix& a);

Matrix commutator(const Matrix& a, const Matrix& b);
// Block diagonal [[a, 0], [0, b]].
Matrix direct_sum(const Matrix& a, const Matrix& b);
// Kronecker product; a ⊗ b has block (i,j) equal to a_ij * b.
Matrix kron(const Matrix& a, const Matrix& b);
// Block (bi, bj) of size `block` (0-based block indices).
Matrix block(const Matrix& a, std::size_t block, std::size_t bi, std::size_t bj);
void set_block(Matrix& a, std::size_t block, std::size_t bi, std::size_t bj, const Matrix& b);
Matrix power(const Matrix& a, std::size_t k);
std::string to_string(const Matrix& a, int precision = 6);

// Trace inner product <a,b> = tr(a b^*).
Complex trace_inner(const Matrix& a, const Matrix& b);

class MatTuple {
 public:
  MatTuple() = default;
  explicit MatTuple(std::vector<Matrix> components);
  MatTuple(std::initializer_list<Matrix> components);

  static MatTuple zeros(std::size_t g, std::size_t n, Field field = Field::Real);

  std::size_t arity() const { return mats_.size(); }
  std::size_t level() const { return mats_.empty() ? 0 : mats_.front().size(); }
  Field field() const;
  const Matrix& operator[](std::size_t k) const { return mats_[k]; }
  Matrix& operator[](std::size_t k) { return mats_[k]; }
  const std::vector<Matrix>& components() const { return mats_; }
  auto begin() const { return mats_.begin(); }
  auto end() const { return mats_.end(); }

  MatTuple& operator+=(const MatTuple& b);
  MatTuple& operator-=(const MatTuple& b);
  MatTuple& operator*=(Complex s);
  friend MatTuple operator+(MatTuple a, const MatTuple& b) { return a += b; }
  friend MatTuple operator-(MatTuple a, const MatTuple& b) { return a -= b; }
  friend MatTuple operator*(MatTuple a, Complex s) { return a *= s; }
  friend MatTuple operator*(Complex s, MatTuple a) { return a *= s; }
  friend MatTuple operator*(double s, MatTuple a) { return a *= Complex(s); }

  MatTuple as_field(Field f) const;

 private:
  std::vector<Matrix> mats_;
};

// sqrt of the sum of squared Frobenius norms.
double norm(const MatTuple& x);
// Largest spectral norm among the components.
double max_spectral_norm(const MatTuple& x);
double distance(const MatTuple& a, const MatTuple& b);

}  // namespace freenc
