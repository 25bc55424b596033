#pragma once
// Noncommutative polynomials: sparse maps Word -> coefficient.

#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "freenc/error.hpp"
#include "freenc/scalar.hpp"
#include "freenc/word.hpp"

namespace freenc {

inline double magnitude(const Complex& z) { return std::abs(z); }
inline double magnitude(const Rational& q) { return std::abs(q.convert_to<double>()); }

template <class C>
class BasicNCPoly {
 public:
  using Coeff = C;
  using TermMap = std::map<Word, C>;

  explicit BasicNCPoly(Involution mode = Involution::None) : mode_(mode) {}

  static BasicNCPoly constant(const C& c, Involution mode = Involution::None) {
    BasicNCPoly p(mode);
    p.add_term(Word::unit(), c);
    return p;
  }
  static BasicNCPoly monomial(const Word& w, const C& c, Involution mode = Involution::None) {
    BasicNCPoly p(mode);
    p.add_term(w, c);
    return p;
  }
  static BasicNCPoly variable(std::uint16_t k, Involution mode = Involution::None,
                              bool starred = false) {
    return monomial(Word::letter(k, starred), C(1), mode);
  }

  Involution mode() const { return mode_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  // -1 for the zero polynomial.
  int degree() const {
    return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.degree());
  }
  int min_degree() const {
    return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.degree());
  }
  bool is_homogeneous() const { return degree() == min_degree(); }

  std::uint16_t num_vars() const {
    std::uint16_t m = 0;
    for (const auto& [w, c] : terms_) m = std::max(m, w.max_var());
    return m;
  }

  C coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? C(0) : it->second;
  }

  // Exact-zero results are removed.
  void add_term(const Word& w, const C& c) {
    if (mode_ == Involution::None && w.has_starred())
      throw ModeError("starred letter in involution-free polynomial: " + to_string(w));
    if (is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (freenc::is_zero(it->second)) terms_.erase(it);
    }
  }

  BasicNCPoly homogeneous_part(std::size_t m) const {
    BasicNCPoly out(mode_);
    for (const auto& [w, c] : terms_)
      if (w.degree() == m) out.terms_.emplace(w, c);
    return out;
  }

  BasicNCPoly truncated(std::size_t max_degree) const {
    BasicNCPoly out(mode_);
    for (const auto& [w, c] : terms_)
      if (w.degree() <= max_degree) out.terms_.emplace(w, c);
    return out;
  }

  // Explicit numeric cleanup; symbolic operations only prune exact zeros.
  BasicNCPoly cleaned(double tol) const {
    BasicNCPoly out(mode_);
    for (const auto& [w, c] : terms_)
      if (magnitude(c) > tol) out.terms_.emplace(w, c);
    return out;
  }

  BasicNCPoly with_mode(Involution mode) const {
    BasicNCPoly out(mode);
    for (const auto& [w, c] : terms_) out.add_term(w, c);
    return out;
  }

  BasicNCPoly involution() const {
    if (mode_ == Involution::None)
      throw ModeError("involution of a polynomial in an involution-free algebra");
    BasicNCPoly out(mode_);
    for (const auto& [w, c] : terms_)
      out.add_term(word_involution(w), mode_ == Involution::Adjoint ? conj_coeff(c) : c);
    return out;
  }

  BasicNCPoly& operator+=(const BasicNCPoly& q) {
    check_mode(q);
    for (const auto& [w, c] : q.terms_) add_term(w, c);
    return *this;
  }
  BasicNCPoly& operator-=(const BasicNCPoly& q) {
    check_mode(q);
    for (const auto& [w, c] : q.terms_) add_term(w, -c);
    return *this;
  }
  BasicNCPoly& operator*=(const C& s) {
    if (is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [w, c] : terms_) c *= s;
    return *this;
  }

  friend BasicNCPoly operator+(BasicNCPoly p, const BasicNCPoly& q) { return p += q; }
  friend BasicNCPoly operator-(BasicNCPoly p, const BasicNCPoly& q) { return p -= q; }
  friend BasicNCPoly operator-(BasicNCPoly p) { return p *= C(-1); }
  friend BasicNCPoly operator*(BasicNCPoly p, const C& s) { return p *= s; }
  friend BasicNCPoly operator*(const C& s, BasicNCPoly p) { return p *= s; }

  friend BasicNCPoly operator*(const BasicNCPoly& p, const BasicNCPoly& q) {
    return multiply_truncated(p, q, static_cast<std::size_t>(-1));
  }

  // Product keeping only words of degree <= max_degree.
  static BasicNCPoly multiply_truncated(const BasicNCPoly& p, const BasicNCPoly& q,
                                        std::size_t max_degree) {
    p.check_mode(q);
    BasicNCPoly out(p.mode_);
    for (const auto& [u, a] : p.terms_) {
      if (u.degree() > max_degree) break;
      for (const auto& [v, b] : q.terms_) {
        if (u.degree() + v.degree() > max_degree) break;
        out.add_term(u * v, a * b);
      }
    }
    return out;
  }

  friend bool operator==(const BasicNCPoly& a, const BasicNCPoly& b) {
    return a.mode_ == b.mode_ && a.terms_ == b.terms_;
  }

  void check_mode(const BasicNCPoly& q) const {
    if (q.mode_ != mode_)
      throw ModeError("mode mismatch: " + to_string(mode_) + " vs " + to_string(q.mode_));
  }

 private:
  static bool is_zero(const C& c) { return freenc::is_zero(c); }

  Involution mode_;
  TermMap terms_;
};

using NCPoly = BasicNCPoly<Complex>;
using QNCPoly = BasicNCPoly<Rational>;

// Largest coefficientwise difference |p_w - q_w| (modes are not compared).
template <class C>
double max_coeff_diff(const BasicNCPoly<C>& p, const BasicNCPoly<C>& q) {
  double worst = 0.0;
  for (const auto& [w, c] : p.terms()) worst = std::max(worst, magnitude(c - q.coeff(w)));
  for (const auto& [w, c] : q.terms())
    if (p.terms().find(w) == p.terms().end()) worst = std::max(worst, magnitude(c));
  return worst;
}

inline QNCPoly to_rational(const NCPoly& p) {
  QNCPoly out(p.mode());
  for (const auto& [w, c] : p.terms()) {
    if (c.imag() != 0.0) throw ModeError("complex coefficient has no rational image");
    out.add_term(w, Rational(c.real()));
  }
  return out;
}

inline NCPoly to_numeric(const QNCPoly& p) {
  NCPoly out(p.mode());
  for (const auto& [w, c] : p.terms()) out.add_term(w, Complex(c.template convert_to<double>(), 0.0));
  return out;
}

}  // namespace freenc
