#pragma once
// Trace polynomials: noncommutative polynomials whose coefficients are
// polynomials in formal traces tr(w) of cyclic classes of words.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "freenc/ncpoly.hpp"

namespace freenc {

// Real involution identifies tr(w) with tr(w^t); over the complex field
// tr(w^*) is the conjugate of tr(w), so only rotations are identified.
inline bool trace_star_mode(Involution mode) { return mode == Involution::Transpose; }

struct TraceMonomial {
  std::vector<Word> pure;  // sorted canonical representatives, with multiplicity
  Word tail;

  // Canonicalizes every factor and sorts.
  static TraceMonomial make(std::vector<Word> traces, Word tail, Involution mode);

  std::size_t degree() const {
    std::size_t d = tail.degree();
    for (const Word& w : pure) d += w.degree();
    return d;
  }
  bool is_pure() const { return tail.empty(); }

  TraceMonomial operator*(const TraceMonomial& rhs) const;

  friend bool operator==(const TraceMonomial&, const TraceMonomial&) = default;
  friend std::strong_ordering operator<=>(const TraceMonomial& a, const TraceMonomial& b);
};

std::string to_string(const TraceMonomial& m);

template <class C>
class BasicTracePoly {
 public:
  using Coeff = C;
  using TermMap = std::map<TraceMonomial, C>;

  explicit BasicTracePoly(Involution mode = Involution::None) : mode_(mode) {}

  static BasicTracePoly from_ncpoly(const BasicNCPoly<C>& p) {
    BasicTracePoly out(p.mode());
    for (const auto& [w, c] : p.terms()) out.add_term(TraceMonomial{{}, w}, c);
    return out;
  }

  Involution mode() const { return mode_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_pure() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& kv) { return kv.first.is_pure(); });
  }

  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.degree()));
    return d;
  }

  C coeff(const TraceMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? C(0) : it->second;
  }

  // The monomial is re-canonicalized under this polynomial's mode.
  void add_term(const TraceMonomial& m, const C& c) {
    const TraceMonomial key = TraceMonomial::make(m.pure, m.tail, mode_);
    auto check = [&](const Word& w) {
      if (mode_ == Involution::None && w.has_starred())
        throw ModeError("starred letter in involution-free trace polynomial");
    };
    check(key.tail);
    for (const Word& w : key.pure) check(w);
    if (freenc::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (freenc::is_zero(it->second)) terms_.erase(it);
    }
  }

  BasicTracePoly& operator+=(const BasicTracePoly& q) {
    check_mode(q);
    for (const auto& [m, c] : q.terms_) add_term(m, c);
    return *this;
  }
  BasicTracePoly& operator-=(const BasicTracePoly& q) {
    check_mode(q);
    for (const auto& [m, c] : q.terms_) add_term(m, -c);
    return *this;
  }
  BasicTracePoly& operator*=(const C& s) {
    if (freenc::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend BasicTracePoly operator+(BasicTracePoly p, const BasicTracePoly& q) { return p += q; }
  friend BasicTracePoly operator-(BasicTracePoly p, const BasicTracePoly& q) { return p -= q; }
  friend BasicTracePoly operator*(BasicTracePoly p, const C& s) { return p *= s; }
  friend BasicTracePoly operator*(const BasicTracePoly& p, const BasicTracePoly& q) {
    p.check_mode(q);
    BasicTracePoly out(p.mode_);
    for (const auto& [a, x] : p.terms_)
      for (const auto& [b, y] : q.terms_) out.add_term(a * b, x * y);
    return out;
  }
  friend bool operator==(const BasicTracePoly& a, const BasicTracePoly& b) {
    return a.mode_ == b.mode_ && a.terms_ == b.terms_;
  }

  void check_mode(const BasicTracePoly& q) const {
    if (q.mode_ != mode_)
      throw ModeError("mode mismatch: " + to_string(mode_) + " vs " + to_string(q.mode_));
  }

 private:
  Involution mode_;
  TermMap terms_;
};

using TracePoly = BasicTracePoly<Complex>;
using QTracePoly = BasicTracePoly<Rational>;

// tr(w) as a pure trace polynomial.
template <class C = Complex>
BasicTracePoly<C> trace_of(const Word& w, Involution mode = Involution::None) {
  BasicTracePoly<C> p(mode);
  p.add_term(TraceMonomial{{w}, Word::unit()}, C(1));
  return p;
}

}  // namespace freenc
