#include "freenc/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "freenc/error.hpp"
#include "freenc/kernels.hpp"

namespace freenc {

std::string to_string(Field f) { return f == Field::Real ? "real" : "complex"; }

Matrix::Matrix(std::size_t n, Field field) : n_(n), field_(field), re_(n * n, 0.0) {
  if (field_ == Field::Complex) im_.assign(n * n, 0.0);
}

Matrix Matrix::identity(std::size_t n, Field field) {
  Matrix m(n, field);
  for (std::size_t i = 0; i < n; ++i) m.re_[i * n + i] = 1.0;
  return m;
}

Matrix Matrix::unit(std::size_t n, std::size_t i, std::size_t j, Field field) {
  if (i < 1 || j < 1 || i > n || j > n)
    throw SizeError("matrix unit e_{" + std::to_string(i) + "," + std::to_string(j) +
                    "} outside M_" + std::to_string(n));
  Matrix m(n, field);
  m.re_[(i - 1) * n + (j - 1)] = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.re_[i * d.size() + i] = d[i];
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t n = rows.size();
  Matrix m(n);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != n) throw SizeError("from_rows: matrix must be square");
    std::size_t j = 0;
    for (double v : row) m.re_[i * n + j++] = v;
    ++i;
  }
  return m;
}

void Matrix::promote() {
  if (field_ == Field::Complex) return;
  field_ = Field::Complex;
  im_.assign(n_ * n_, 0.0);
}

void Matrix::set(std::size_t i, std::size_t j, Complex v) {
  if (v.imag() != 0.0) promote();
  re_[i * n_ + j] = v.real();
  if (field_ == Field::Complex) im_[i * n_ + j] = v.imag();
}

void Matrix::add_to(std::size_t i, std::size_t j, Complex v) {
  if (v.imag() != 0.0) promote();
  re_[i * n_ + j] += v.real();
  if (field_ == Field::Complex) im_[i * n_ + j] += v.imag();
}

Matrix Matrix::as_field(Field f) const {
  Matrix out = *this;
  if (f == Field::Complex) {
    out.promote();
  } else {
    out.field_ = Field::Real;
    out.im_.clear();
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(n_, field_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      t.re_[j * n_ + i] = re_[i * n_ + j];
      if (field_ == Field::Complex) t.im_[j * n_ + i] = im_[i * n_ + j];
    }
  return t;
}

Matrix Matrix::conj() const {
  Matrix c = *this;
  for (double& v : c.im_) v = -v;
  return c;
}

Matrix Matrix::adjoint() const { return transpose().conj(); }

Complex Matrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::frobenius_norm() const {
  double s = kernels::dot(re_.size(), re_.data(), re_.data());
  if (field_ == Field::Complex) s += kernels::dot(im_.size(), im_.data(), im_.data());
  return std::sqrt(s);
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (std::size_t k = 0; k < re_.size(); ++k)
    m = std::max(m, std::hypot(re_[k], field_ == Field::Complex ? im_[k] : 0.0));
  return m;
}

bool Matrix::is_finite() const {
  auto fin = [](double v) { return std::isfinite(v); };
  return std::all_of(re_.begin(), re_.end(), fin) && std::all_of(im_.begin(), im_.end(), fin);
}

namespace {
void check_same_size(const Matrix& a, const Matrix& b) {
  if (a.size() != b.size())
    throw SizeError("matrix size mismatch: " + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()));
}
}  // namespace

Matrix& Matrix::add_scaled(Complex s, const Matrix& b) {
  check_same_size(*this, b);
  if (s.imag() != 0.0 || b.is_complex()) promote();
  const std::size_t len = re_.size();
  kernels::axpy(len, s.real(), b.re_.data(), re_.data());
  if (b.is_complex()) {
    kernels::axpy(len, -s.imag(), b.im_.data(), re_.data());
    kernels::axpy(len, s.real(), b.im_.data(), im_.data());
  }
  if (s.imag() != 0.0) kernels::axpy(len, s.imag(), b.re_.data(), im_.data());
  return *this;
}

Matrix& Matrix::operator+=(const Matrix& b) { return add_scaled(Complex(1.0), b); }
Matrix& Matrix::operator-=(const Matrix& b) { return add_scaled(Complex(-1.0), b); }

Matrix& Matrix::operator*=(Complex s) {
  if (s.imag() == 0.0) {
    for (double& v : re_) v *= s.real();
    for (double& v : im_) v *= s.real();
    return *this;
  }
  promote();
  for (std::size_t k = 0; k < re_.size(); ++k) {
    const Complex z = Complex(re_[k], im_[k]) * s;
    re_[k] = z.real();
    im_[k] = z.imag();
  }
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  check_same_size(a, b);
  const std::size_t n = a.size();
  Matrix c(n, join(a.field(), b.field()));
  kernels::gemm(n, n, n, a.re_.data(), b.re_.data(), c.re_.data());
  if (!c.is_complex()) return c;
  if (a.is_complex() && b.is_complex())
    kernels::gemm_acc(n, n, n, -1.0, a.im_.data(), b.im_.data(), c.re_.data());
  if (b.is_complex()) kernels::gemm_acc(n, n, n, 1.0, a.re_.data(), b.im_.data(), c.im_.data());
  if (a.is_complex()) kernels::gemm_acc(n, n, n, 1.0, a.im_.data(), b.re_.data(), c.im_.data());
  return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

double distance(const Matrix& a, const Matrix& b) { return (a - b).frobenius_norm(); }

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  const std::size_t m = a.size(), n = b.size();
  Matrix out(m + n, join(a.field(), b.field()));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out.set(i, j, a(i, j));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.set(m + i, m + j, b(i, j));
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t m = a.size(), n = b.size();
  Matrix out(m * n, join(a.field(), b.field()));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex(0.0)) continue;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) out.set(i * n + k, j * n + l, aij * b(k, l));
    }
  return out;
}

Matrix block(const Matrix& a, std::size_t size, std::size_t bi, std::size_t bj) {
  if ((bi + 1) * size > a.size() || (bj + 1) * size > a.size())
    throw SizeError("block index outside matrix");
  Matrix out(size, a.field());
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) out.set(i, j, a(bi * size + i, bj * size + j));
  return out;
}

void set_block(Matrix& a, std::size_t size, std::size_t bi, std::size_t bj, const Matrix& b) {
  if (b.size() != size || (bi + 1) * size > a.size() || (bj + 1) * size > a.size())
    throw SizeError("block index outside matrix");
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) a.set(bi * size + i, bj * size + j, b(i, j));
}

Matrix power(const Matrix& a, std::size_t k) {
  Matrix r = Matrix::identity(a.size(), a.field());
  for (std::size_t i = 0; i < k; ++i) r = r * a;
  return r;
}

std::string to_string(const Matrix& a, int precision) {
  std::string s;
  char buf[64];
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += '[';
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (j) s += ' ';
      const Complex z = a(i, j);
      if (a.is_complex() && z.imag() != 0.0)
        std::snprintf(buf, sizeof buf, "%.*g%+.*gi", precision, z.real(), precision, z.imag());
      else
        std::snprintf(buf, sizeof buf, "%.*g", precision, z.real());
      s += buf;
    }
    s += "]\n";
  }
  return s;
}

Complex trace_inner(const Matrix& a, const Matrix& b) {
  check_same_size(a, b);
  // sum_ij a_ij conj(b_ij)
  const auto ar = a.real_plane(), br = b.real_plane();
  double re = kernels::dot(ar.size(), ar.data(), br.data());
  double im = 0.0;
  if (a.is_complex() && b.is_complex()) {
    re += kernels::dot(ar.size(), a.imag_plane().data(), b.imag_plane().data());
    im += kernels::dot(ar.size(), a.imag_plane().data(), br.data());
    im -= kernels::dot(ar.size(), ar.data(), b.imag_plane().data());
  } else if (a.is_complex()) {
    im += kernels::dot(ar.size(), a.imag_plane().data(), br.data());
  } else if (b.is_complex()) {
    im -= kernels::dot(ar.size(), ar.data(), b.imag_plane().data());
  }
  return {re, im};
}

MatTuple::MatTuple(std::vector<Matrix> components) : mats_(std::move(components)) {
  for (const Matrix& m : mats_)
    if (m.size() != mats_.front().size()) throw SizeError("tuple components differ in size");
}

MatTuple::MatTuple(std::initializer_list<Matrix> components)
    : MatTuple(std::vector<Matrix>(components)) {}

MatTuple MatTuple::zeros(std::size_t g, std::size_t n, Field field) {
  return MatTuple(std::vector<Matrix>(g, Matrix(n, field)));
}

Field MatTuple::field() const {
  Field f = Field::Real;
  for (const Matrix& m : mats_) f = join(f, m.field());
  return f;
}

MatTuple& MatTuple::operator+=(const MatTuple& b) {
  if (b.arity() != arity()) throw SizeError("tuple arity mismatch");
  for (std::size_t k = 0; k < arity(); ++k) mats_[k] += b.mats_[k];
  return *this;
}

MatTuple& MatTuple::operator-=(const MatTuple& b) {
  if (b.arity() != arity()) throw SizeError("tuple arity mismatch");
  for (std::size_t k = 0; k < arity(); ++k) mats_[k] -= b.mats_[k];
  return *this;
}

MatTuple& MatTuple::operator*=(Complex s) {
  for (Matrix& m : mats_) m *= s;
  return *this;
}

MatTuple MatTuple::as_field(Field f) const {
  std::vector<Matrix> out;
  out.reserve(mats_.size());
  for (const Matrix& m : mats_) out.push_back(m.as_field(f));
  return MatTuple(std::move(out));
}

double norm(const MatTuple& x) {
  double s = 0.0;
  for (const Matrix& m : x) {
    const double f = m.frobenius_norm();
    s += f * f;
  }
  return std::sqrt(s);
}

double max_spectral_norm(const MatTuple& x) {
  double s = 0.0;
  for (const Matrix& m : x) s = std::max(s, spectral_norm(m));
  return s;
}

double distance(const MatTuple& a, const MatTuple& b) { return norm(a - b); }

}  // namespace freenc
