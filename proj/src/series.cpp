#include "freenc/series.hpp"

#include <algorithm>
#include <limits>

namespace freenc {

FormalSeries::FormalSeries(std::size_t order, Involution mode)
    : mode_(mode), parts_(order + 1, NCPoly(mode)) {}

FormalSeries FormalSeries::from_poly(const NCPoly& p, std::size_t order) {
  FormalSeries s(order, p.mode());
  for (const auto& [w, c] : p.terms())
    if (w.degree() <= order) s.parts_[w.degree()].add_term(w, c);
  return s;
}

void FormalSeries::set_part(std::size_t m, NCPoly p) {
  if (m > order()) throw SizeError("series part beyond truncation order");
  if (!p.is_zero() && (p.degree() != static_cast<int>(m) || !p.is_homogeneous()))
    throw SizeError("series part " + std::to_string(m) + " is not homogeneous of that degree");
  p.check_mode(parts_[m]);
  parts_[m] = std::move(p);
}

NCPoly FormalSeries::to_poly() const {
  NCPoly out(mode_);
  for (const NCPoly& p : parts_) out += p;
  return out;
}

FormalSeries FormalSeries::truncated(std::size_t order) const {
  FormalSeries out(order, mode_);
  for (std::size_t m = 0; m <= std::min(order, this->order()); ++m) out.parts_[m] = parts_[m];
  return out;
}

FormalSeries FormalSeries::involution() const {
  FormalSeries out(order(), mode_);
  for (std::size_t m = 0; m < parts_.size(); ++m) out.parts_[m] = parts_[m].involution();
  return out;
}

FormalSeries FormalSeries::with_mode(Involution mode) const {
  FormalSeries out(order(), mode);
  for (std::size_t m = 0; m < parts_.size(); ++m) out.parts_[m] = parts_[m].with_mode(mode);
  return out;
}

FormalSeries& FormalSeries::operator+=(const FormalSeries& b) {
  if (b.order() < order()) *this = truncated(b.order());
  for (std::size_t m = 0; m < parts_.size(); ++m) parts_[m] += b.parts_[m];
  return *this;
}

FormalSeries& FormalSeries::operator-=(const FormalSeries& b) {
  if (b.order() < order()) *this = truncated(b.order());
  for (std::size_t m = 0; m < parts_.size(); ++m) parts_[m] -= b.parts_[m];
  return *this;
}

FormalSeries& FormalSeries::operator*=(Complex s) {
  for (NCPoly& p : parts_) p *= s;
  return *this;
}

FormalSeries operator*(const FormalSeries& a, const FormalSeries& b) {
  const std::size_t order = std::min(a.order(), b.order());
  const NCPoly prod = NCPoly::multiply_truncated(a.to_poly(), b.to_poly(), order);
  return FormalSeries::from_poly(prod, order);
}

SeriesTuple identity_tuple(std::size_t g, std::size_t order, Involution mode) {
  SeriesTuple out;
  for (std::size_t k = 1; k <= g; ++k)
    out.push_back(FormalSeries::from_poly(NCPoly::variable(static_cast<std::uint16_t>(k), mode), order));
  return out;
}

FormalSeries series_compose(const FormalSeries& f, const SeriesTuple& g) {
  if (g.empty()) throw SizeError("composition with an empty tuple");
  std::size_t order = f.order();
  const Involution mode = g.front().mode();
  for (const FormalSeries& s : g) {
    if (s.mode() != mode) throw ModeError("inner series have different modes");
    if (!s.part(0).is_zero())
      throw DomainError("inner series must have zero constant part for composition");
    order = std::min(order, s.order());
  }
  const std::uint16_t vars = f.to_poly().num_vars();
  if (vars > g.size())
    throw SizeError("outer series uses x" + std::to_string(vars) + " but only " +
                    std::to_string(g.size()) + " inner series were given");

  std::vector<NCPoly> plain, starred;
  for (const FormalSeries& s : g) plain.push_back(s.truncated(order).to_poly());
  starred.resize(g.size(), NCPoly(mode));
  std::vector<bool> have_starred(g.size(), false);
  auto substitute = [&](Letter l) -> const NCPoly& {
    const std::size_t k = l.var - 1u;
    if (!l.starred) return plain[k];
    if (!have_starred[k]) {
      starred[k] = plain[k].involution();  // throws ModeError when mode is None
      have_starred[k] = true;
    }
    return starred[k];
  };

  NCPoly acc(mode);
  for (std::size_t m = 0; m <= order; ++m) {
    for (const auto& [w, c] : f.part(m).terms()) {
      NCPoly prod = NCPoly::constant(Complex(1.0), mode);
      for (Letter l : w) prod = NCPoly::multiply_truncated(prod, substitute(l), order);
      acc += prod * c;
    }
  }
  return FormalSeries::from_poly(acc, order);
}

SeriesTuple series_compose(const SeriesTuple& f, const SeriesTuple& g) {
  SeriesTuple out;
  out.reserve(f.size());
  for (const FormalSeries& s : f) out.push_back(series_compose(s, g));
  return out;
}

double series_distance(const SeriesTuple& a, const SeriesTuple& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    worst = std::max(worst, max_coeff_diff(a[k].to_poly(), b[k].to_poly()));
  return worst;
}

}  // namespace freenc
