#pragma once
// Exact rational square matrices for the identity-testing paths.

#include <string>
#include <vector>

#include "freenc/error.hpp"
#include "freenc/scalar.hpp"

namespace freenc {

class QMatrix {
 public:
  QMatrix() = default;
  explicit QMatrix(std::size_t n) : n_(n), a_(n * n) {}

  static QMatrix zero(std::size_t n) { return QMatrix(n); }
  static QMatrix identity(std::size_t n) {
    QMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1;
    return m;
  }
  // 1-based matrix unit.
  static QMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
    QMatrix m(n);
    m.a_[(i - 1) * n + (j - 1)] = 1;
    return m;
  }

  std::size_t size() const { return n_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }

  QMatrix transpose() const {
    QMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t.a_[j * n_ + i] = a_[i * n_ + j];
    return t;
  }
  QMatrix star() const { return transpose(); }

  Rational trace() const {
    Rational t = 0;
    for (std::size_t i = 0; i < n_; ++i) t += a_[i * n_ + i];
    return t;
  }

  bool is_zero() const {
    for (const Rational& q : a_)
      if (q != 0) return false;
    return true;
  }

  QMatrix& operator+=(const QMatrix& b) {
    check(b);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += b.a_[k];
    return *this;
  }
  QMatrix& operator-=(const QMatrix& b) {
    check(b);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= b.a_[k];
    return *this;
  }
  QMatrix& operator*=(const Rational& s) {
    for (Rational& q : a_) q *= s;
    return *this;
  }
  QMatrix& add_scaled(const Rational& s, const QMatrix& b) {
    check(b);
    for (std::size_t k = 0; k < a_.size(); ++k)
      if (b.a_[k] != 0) a_[k] += s * b.a_[k];
    return *this;
  }

  friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
  friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
  friend QMatrix operator-(QMatrix a) { return a *= Rational(-1); }
  friend QMatrix operator*(QMatrix a, const Rational& s) { return a *= s; }
  friend QMatrix operator*(const Rational& s, QMatrix a) { return a *= s; }
  friend QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    a.check(b);
    const std::size_t n = a.n_;
    QMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const Rational& aik = a.a_[i * n + k];
        if (aik == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (b.a_[k * n + j] != 0) c.a_[i * n + j] += aik * b.a_[k * n + j];
      }
    return c;
  }
  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  void check(const QMatrix& b) const {
    if (b.n_ != n_) throw SizeError("rational matrix size mismatch");
  }

  std::size_t n_ = 0;
  std::vector<Rational> a_;
};

std::string to_string(const QMatrix& m);

}  // namespace freenc
