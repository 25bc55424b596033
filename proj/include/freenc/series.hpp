#pragma once
// Truncated graded formal series over the free algebra.

#include <vector>

#include "freenc/ncpoly.hpp"

namespace freenc {

class FormalSeries {
 public:
  FormalSeries(std::size_t order, Involution mode);

  // Splits p by degree; terms above `order` are dropped.
  static FormalSeries from_poly(const NCPoly& p, std::size_t order);

  std::size_t order() const { return parts_.size() - 1; }
  Involution mode() const { return mode_; }
  const NCPoly& part(std::size_t m) const { return parts_.at(m); }
  const std::vector<NCPoly>& parts() const { return parts_; }
  // Throws if p is not homogeneous of degree m (zero is allowed).
  void set_part(std::size_t m, NCPoly p);

  NCPoly to_poly() const;
  FormalSeries truncated(std::size_t order) const;
  FormalSeries involution() const;
  FormalSeries with_mode(Involution mode) const;

  FormalSeries& operator+=(const FormalSeries& b);
  FormalSeries& operator-=(const FormalSeries& b);
  FormalSeries& operator*=(Complex s);
  friend FormalSeries operator+(FormalSeries a, const FormalSeries& b) { return a += b; }
  friend FormalSeries operator-(FormalSeries a, const FormalSeries& b) { return a -= b; }
  friend FormalSeries operator*(FormalSeries a, Complex s) { return a *= s; }
  // Product truncated at min of the two orders.
  friend FormalSeries operator*(const FormalSeries& a, const FormalSeries& b);

 private:
  Involution mode_;
  std::vector<NCPoly> parts_;
};

using SeriesTuple = std::vector<FormalSeries>;

// (x_1, ..., x_g) truncated at `order`.
SeriesTuple identity_tuple(std::size_t g, std::size_t order, Involution mode);

// Substitutes G_k for x_k (and the involution of G_k for x_k^t) in F.
// Requires every G_k to have zero constant part; the result is truncated at
// min(order F, order G_k).
FormalSeries series_compose(const FormalSeries& f, const SeriesTuple& g);
SeriesTuple series_compose(const SeriesTuple& f, const SeriesTuple& g);

// Largest coefficient difference over all parts of all components.
double series_distance(const SeriesTuple& a, const SeriesTuple& b);

}  // namespace freenc
