#include "freenc/oracle.hpp"

#include <cmath>

#include "freenc/error.hpp"

namespace freenc {

std::string to_string(const Smoothness& s) {
  switch (s.kind) {
    case Smoothness::Kind::Continuous:
      return "continuous";
    case Smoothness::Kind::Ck:
      return "C" + std::to_string(s.order);
    case Smoothness::Kind::Smooth:
      return "smooth";
    case Smoothness::Kind::Analytic:
      return "analytic";
    case Smoothness::Kind::Polynomial:
      return "polynomial(" + std::to_string(s.order) + ")";
  }
  return "?";
}

FreeMapOracle::FreeMapOracle(std::string name, std::size_t g, std::size_t g_out, Field field,
                             Group group, Smoothness smoothness, Evaluator eval)
    : name_(std::move(name)),
      g_(g),
      g_out_(g_out),
      field_(field),
      group_(group),
      smoothness_(smoothness),
      eval_(std::move(eval)) {
  if (!eval_) throw Error("oracle without evaluator");
}

double FreeMapOracle::radius(std::size_t level) const {
  return radius_ ? radius_(level) : std::numeric_limits<double>::infinity();
}

bool FreeMapOracle::in_domain(const MatTuple& x) const {
  const double r = radius(x.level());
  if (std::isinf(r)) return true;
  return max_spectral_norm(x) < r;
}

MatTuple FreeMapOracle::operator()(const MatTuple& x) const {
  if (x.arity() != g_)
    throw SizeError(name_ + ": expected " + std::to_string(g_) + " arguments, got " +
                    std::to_string(x.arity()));
  if (!in_domain(x))
    throw DomainError(name_ + ": point outside the domain radius at level " +
                      std::to_string(x.level()));
  MatTuple y = eval_(x);
  if (y.arity() != g_out_) throw SizeError(name_ + ": evaluator returned wrong arity");
  return y;
}

MatTuple FreeMapOracle::exact_derivative(const MatTuple& x, const MatTuple& h) const {
  if (!derivative_) throw Error(name_ + ": no exact derivative");
  if (x.arity() != g_ || h.arity() != g_) throw SizeError(name_ + ": derivative arity mismatch");
  return derivative_(x, h);
}

FreeMapOracle& FreeMapOracle::set_radius(Radius r) {
  radius_ = std::move(r);
  return *this;
}

FreeMapOracle& FreeMapOracle::set_derivative(Derivative d) {
  derivative_ = std::move(d);
  return *this;
}

FreeMapOracle FreeMapOracle::without_derivative() const {
  FreeMapOracle f = *this;
  f.derivative_ = nullptr;
  return f;
}

Matrix eval_ncpoly_derivative(const NCPoly& p, const MatTuple& x, const MatTuple& h) {
  const std::size_t n = x.level();
  if (h.level() != n || h.arity() != x.arity()) throw SizeError("derivative direction shape mismatch");
  Field field = join(x.field(), h.field());
  for (const auto& [w, c] : p.terms())
    if (c.imag() != 0.0) field = Field::Complex;
  auto image = [&](const MatTuple& t, Letter l) -> Matrix {
    if (l.var < 1 || l.var > t.arity()) throw SizeError("letter index out of range");
    const Matrix& m = t[l.var - 1u];
    return l.starred ? m.star() : m;
  };
  Matrix acc = Matrix::zero(n, field);
  for (const auto& [w, c] : p.terms()) {
    const std::size_t d = w.degree();
    if (d == 0) continue;
    // suffix[i] = x(w_i) ... x(w_{d-1})
    std::vector<Matrix> suffix(d + 1);
    suffix[d] = Matrix::identity(n);
    for (std::size_t i = d; i-- > 0;) suffix[i] = image(x, w[i]) * suffix[i + 1];
    Matrix prefix = Matrix::identity(n);
    for (std::size_t i = 0; i < d; ++i) {
      acc.add_scaled(c, prefix * image(h, w[i]) * suffix[i + 1]);
      prefix = prefix * image(x, w[i]);
    }
  }
  return acc;
}

namespace {

Group group_for(Involution mode, Field field) {
  if (mode == Involution::None) return Group::GL;
  if (mode == Involution::Adjoint || field == Field::Complex) return Group::U;
  return Group::O;
}

}  // namespace

FreeMapOracle oracle_from_ncpoly(const std::vector<NCPoly>& ps, std::size_t g, Field field) {
  if (ps.empty()) throw SizeError("oracle_from_ncpoly: empty tuple");
  const Involution mode = ps.front().mode();
  int degree = 0;
  std::size_t vars = 1;
  for (const NCPoly& p : ps) {
    p.check_mode(ps.front());
    degree = std::max(degree, p.degree());
    vars = std::max<std::size_t>(vars, p.num_vars());
  }
  if (g == 0) g = vars;
  if (g < vars) throw SizeError("oracle_from_ncpoly: polynomial uses more than g variables");
  if (mode == Involution::Adjoint) field = Field::Complex;
  FreeMapOracle f("poly", g, ps.size(), field, group_for(mode, field), Smoothness::polynomial(degree),
                  [ps](const MatTuple& x) { return eval_ncpoly(ps, x); });
  f.set_derivative([ps](const MatTuple& x, const MatTuple& h) {
    std::vector<Matrix> out;
    for (const NCPoly& p : ps) out.push_back(eval_ncpoly_derivative(p, x, h));
    return MatTuple(std::move(out));
  });
  return f;
}

FreeMapOracle oracle_from_ncpoly(const NCPoly& p, std::size_t g, Field field) {
  return oracle_from_ncpoly(std::vector<NCPoly>{p}, g, field);
}

FreeMapOracle oracle_from_tracepoly(const TracePoly& p, std::size_t g, Field field) {
  std::size_t vars = 1;
  for (const auto& [m, c] : p.terms()) {
    vars = std::max<std::size_t>(vars, m.tail.max_var());
    for (const Word& w : m.pure) vars = std::max<std::size_t>(vars, w.max_var());
  }
  if (g == 0) g = vars;
  if (p.mode() == Involution::Adjoint) field = Field::Complex;
  return FreeMapOracle("trace", g, 1, field, group_for(p.mode(), field),
                       Smoothness::polynomial(std::max(0, p.degree())),
                       [p](const MatTuple& x) { return MatTuple{eval_tracepoly(p, x)}; });
}

}  // namespace freenc
