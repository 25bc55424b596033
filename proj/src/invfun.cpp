#include "freenc/invfun.hpp"

#include <cmath>

#include "freenc/error.hpp"

namespace freenc {

namespace {

std::vector<Letter> alphabet(std::size_t g, Involution mode) {
  std::vector<Letter> out;
  for (std::size_t k = 1; k <= g; ++k) {
    out.push_back(Letter{static_cast<std::uint16_t>(k), false});
    if (has_involution(mode)) out.push_back(Letter{static_cast<std::uint16_t>(k), true});
  }
  return out;
}

Involution common_mode(const SeriesTuple& f) {
  if (f.empty()) throw SizeError("empty series tuple");
  for (const FormalSeries& s : f)
    if (s.mode() != f.front().mode()) throw ModeError("series tuple with mixed modes");
  return f.front().mode();
}

FormalSeries linear_series(const std::vector<Letter>& letters, const Eigen::RowVectorXcd& row,
                           std::size_t order, Involution mode) {
  FormalSeries s(order, mode);
  NCPoly p(mode);
  for (std::size_t i = 0; i < letters.size(); ++i) p.add_term(Word{letters[i]}, row(static_cast<Eigen::Index>(i)));
  if (order >= 1) s.set_part(1, p);
  return s;
}

bool is_complex(const FreeMapOracle& f, const MatTuple& a) {
  return f.field() == Field::Complex || f.group() == Group::U || a.field() == Field::Complex;
}

double operator_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace

LinearPart linear_part(const SeriesTuple& f) {
  const Involution mode = common_mode(f);
  const std::size_t g = f.size();
  LinearPart lp;
  lp.letters = alphabet(g, mode);
  const auto L = static_cast<Eigen::Index>(lp.letters.size());
  lp.matrix = Eigen::MatrixXcd::Zero(L, L);
  for (Eigen::Index r = 0; r < L; ++r) {
    const Letter out = lp.letters[static_cast<std::size_t>(r)];
    if (out.var > g) throw SizeError("linear part: more variables than components");
    NCPoly p = f[out.var - 1u].order() >= 1 ? f[out.var - 1u].part(1) : NCPoly(mode);
    if (out.starred) p = p.involution();
    for (const auto& [w, c] : p.terms()) {
      const Letter in = w[0];
      if (in.var > g) throw SizeError("linear part uses variable x" + std::to_string(in.var));
      const auto col = static_cast<Eigen::Index>(
          std::find(lp.letters.begin(), lp.letters.end(), in) - lp.letters.begin());
      lp.matrix(r, col) += c;
    }
  }
  return lp;
}

SeriesTuple formal_inverse(const SeriesTuple& f_in, std::size_t D) {
  const Involution mode = common_mode(f_in);
  const std::size_t g = f_in.size();
  SeriesTuple f;
  for (const FormalSeries& s : f_in) {
    FormalSeries t(D, mode);
    for (std::size_t m = 1; m <= std::min(D, s.order()); ++m) t.set_part(m, s.part(m));
    if (!s.part(0).is_zero()) throw DomainError("formal_inverse: nonzero constant part");
    f.push_back(std::move(t));
  }
  if (D == 0) return identity_tuple(g, 0, mode);
  const LinearPart lp = linear_part(f);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(lp.matrix);
  const double det = std::abs(lp.matrix.determinant());
  if (!(det > 1e-10)) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(lp.matrix);
    const auto& sv = svd.singularValues();
    const double cond = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
    throw SingularError("linear part is singular (|det| = " + std::to_string(det) + ")", cond);
  }
  const Eigen::MatrixXcd inv = lu.inverse();
  // N: linear change of variables with F o N having identity linear part.
  SeriesTuple lin;
  for (std::size_t k = 1; k <= g; ++k) {
    const auto row = static_cast<Eigen::Index>(
        std::find(lp.letters.begin(), lp.letters.end(), Letter{static_cast<std::uint16_t>(k), false}) -
        lp.letters.begin());
    lin.push_back(linear_series(lp.letters, inv.row(row), D, mode));
  }
  SeriesTuple q = series_compose(f, lin);
  for (FormalSeries& s : q) s.set_part(1, NCPoly(mode));
  // H~ = y - Q o H~, one more correct degree per pass.
  const SeriesTuple id = identity_tuple(g, D, mode);
  SeriesTuple h = id;
  for (std::size_t pass = 1; pass < D; ++pass) {
    const SeriesTuple qh = series_compose(q, h);
    for (std::size_t k = 0; k < g; ++k) h[k] = id[k] - qh[k];
  }
  return series_compose(lin, h);
}

Eigen::VectorXd to_coordinates(const MatTuple& x, bool complex) {
  const std::size_t n = x.level();
  const std::size_t per = n * n;
  Eigen::VectorXd v(static_cast<Eigen::Index>(x.arity() * per * (complex ? 2 : 1)));
  std::size_t idx = 0;
  for (const Matrix& m : x)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v(static_cast<Eigen::Index>(idx++)) = m.re(i, j);
  if (complex)
    for (const Matrix& m : x)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) v(static_cast<Eigen::Index>(idx++)) = m.im(i, j);
  return v;
}

MatTuple from_coordinates(const Eigen::VectorXd& v, std::size_t g, std::size_t n, bool complex) {
  const std::size_t per = n * n;
  if (static_cast<std::size_t>(v.size()) != g * per * (complex ? 2 : 1))
    throw SizeError("coordinate vector has the wrong length");
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < g; ++k) {
    Matrix m(n, complex ? Field::Complex : Field::Real);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t r = k * per + i * n + j;
        const double im = complex ? v(static_cast<Eigen::Index>(g * per + r)) : 0.0;
        m.set(i, j, Complex(v(static_cast<Eigen::Index>(r)), im));
      }
    out.push_back(std::move(m));
  }
  return MatTuple(std::move(out));
}

Eigen::MatrixXd real_jacobian(const FreeMapOracle& f, const MatTuple& x, bool complex) {
  const std::size_t g = f.arity();
  const std::size_t n = x.level();
  const auto cols = static_cast<Eigen::Index>(g * n * n * (complex ? 2 : 1));
  const auto rows = static_cast<Eigen::Index>(f.out_arity() * n * n * (complex ? 2 : 1));
  Eigen::MatrixXd jac(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(cols);
    e(c) = 1.0;
    const MatTuple dir = from_coordinates(e, g, n, complex);
    jac.col(c) = to_coordinates(derivative(f, x, dir), complex);
  }
  return jac;
}

NewtonTrace newton_invert(const FreeMapOracle& f, const MatTuple& y, const MatTuple& x0,
                          const NewtonOptions& opts) {
  if (f.arity() != f.out_arity()) throw SizeError("newton_invert needs g = g'");
  if (y.arity() != f.out_arity() || x0.arity() != f.arity() || x0.level() != y.level())
    throw SizeError("newton_invert: target and start have incompatible shapes");
  const bool complex = is_complex(f, y) || x0.field() == Field::Complex;
  const std::size_t n = y.level();
  NewtonTrace tr;
  tr.x = complex ? x0.as_field(Field::Complex) : x0;
  auto residual_at = [&](const MatTuple& x, double& res) {
    try {
      const MatTuple r = f(x) - y;
      res = norm(r);
      return std::isfinite(res);
    } catch (const DomainError&) {
      return false;
    }
  };
  double res = 0.0;
  if (!residual_at(tr.x, res)) throw DomainError("newton_invert: start point outside the domain");
  tr.iterates.push_back({res, 0.0});
  Eigen::MatrixXd j0;
  for (std::size_t it = 0; it < opts.maxit && res >= opts.tol; ++it) {
    const Eigen::MatrixXd jac = real_jacobian(f, tr.x, complex);
    if (it == 0) j0 = jac;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
    const auto& sv = svd.singularValues();
    tr.condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
    if (!(tr.condition < opts.max_condition))
      throw SingularError("newton_invert: singular Jacobian", tr.condition);
    const Eigen::VectorXd rvec = to_coordinates(f(tr.x) - y, complex);
    const Eigen::VectorXd delta = jac.fullPivLu().solve(rvec);
    const MatTuple step = from_coordinates(delta, f.arity(), n, complex);
    double lambda = 1.0;
    MatTuple cand = tr.x - step;
    double cand_res = 0.0;
    bool ok = residual_at(cand, cand_res);
    std::size_t halvings = 0;
    while ((!ok || cand_res > res) && halvings < opts.max_halvings) {
      lambda /= 2.0;
      ++halvings;
      cand = tr.x - step * Complex(lambda);
      ok = residual_at(cand, cand_res);
    }
    if (!ok || cand_res > res) {
      tr.message = "damping failed after " + std::to_string(halvings) + " halvings";
      break;
    }
    tr.x = cand;
    res = cand_res;
    tr.iterates.push_back({res, lambda * norm(step)});
  }
  tr.converged = res < opts.tol;
  if (!tr.converged && tr.message.empty()) tr.message = "maximum iterations reached";
  if (tr.converged) tr.message = "converged";

  if (opts.trust_radius && j0.size() > 0) {
    const MatTuple start = complex ? x0.as_field(Field::Complex) : x0;
    const double dist = distance(tr.x, start);
    if (dist > 0.0) {
      const MatTuple u = (tr.x - start) * Complex(1.0 / dist);
      const Eigen::MatrixXd j0inv = j0.fullPivLu().inverse();
      const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(j0.rows(), j0.cols());
      double r = 2.0 * dist;
      for (int k = 0; k <= 12; ++k, r /= 2.0) {
        const MatTuple p = start + u * Complex(r);
        if (!f.in_domain(p)) continue;
        if (operator_norm(eye - j0inv * real_jacobian(f, p, complex)) < 0.5) {
          tr.trust_radius = r;
          break;
        }
      }
    }
  }
  return tr;
}

NewtonTrace newton_invert(const FreeMapOracle& f, const MatTuple& y, const NewtonOptions& opts) {
  return newton_invert(f, y, MatTuple::zeros(f.arity(), y.level(), y.field()), opts);
}

SeriesTuple implicit_solve(const SeriesTuple& f, std::size_t nx, std::size_t D) {
  const Involution mode = common_mode(f);
  const std::size_t ny = f.size();
  const std::size_t g = nx + ny;
  SeriesTuple aug = identity_tuple(nx, D, mode);
  for (const FormalSeries& s : f) aug.push_back(s.truncated(std::min(D, s.order())));
  for (FormalSeries& s : aug)
    if (s.order() < D) {
      FormalSeries t(D, mode);
      for (std::size_t m = 0; m <= s.order(); ++m) t.set_part(m, s.part(m));
      s = t;
    }
  for (const FormalSeries& s : aug)
    for (std::size_t m = 1; m <= s.order(); ++m)
      for (const auto& [w, c] : s.part(m).terms())
        if (w.max_var() > g) throw SizeError("implicit_solve: series uses more than nx + ny variables");
  SeriesTuple inv;
  try {
    inv = formal_inverse(aug, D);
  } catch (const SingularError& e) {
    throw SingularError("implicit_solve: D_2 f(0,0) is singular", e.condition());
  }
  // h(x) = second block of the inverse at (x, 0).
  SeriesTuple sub = identity_tuple(nx, D, mode);
  for (std::size_t k = 0; k < ny; ++k) sub.push_back(FormalSeries(D, mode));
  SeriesTuple h;
  for (std::size_t k = 0; k < ny; ++k) h.push_back(series_compose(inv[nx + k], sub));
  return h;
}

NewtonTrace implicit_solve(const FreeMapOracle& f, std::size_t nx, const MatTuple& xhat, const MatTuple& y0,
                           const NewtonOptions& opts) {
  const std::size_t ny = f.out_arity();
  if (f.arity() != nx + ny) throw SizeError("implicit_solve: oracle arity must be nx + ny");
  if (xhat.arity() != nx || y0.arity() != ny) throw SizeError("implicit_solve: point shapes");
  // Newton on the section y -> f(xhat, y); x is held fixed.
  FreeMapOracle section(
      f.name() + "|x", ny, ny, f.field(), f.group(), f.smoothness(), [f, xhat, nx](const MatTuple& y) {
        std::vector<Matrix> all(xhat.components());
        for (const Matrix& m : y) all.push_back(m);
        return f(MatTuple(std::move(all)));
      });
  if (f.has_derivative())
    section.set_derivative([f, xhat](const MatTuple& y, const MatTuple& h) {
      std::vector<Matrix> pt(xhat.components());
      std::vector<Matrix> dir;
      for (const Matrix& m : xhat) dir.push_back(Matrix::zero(m.size()));
      for (const Matrix& m : y) pt.push_back(m);
      for (const Matrix& m : h) dir.push_back(m);
      return f.exact_derivative(MatTuple(std::move(pt)), MatTuple(std::move(dir)));
    });
  const MatTuple zero = MatTuple::zeros(ny, y0.level());
  return newton_invert(section, zero, y0, opts);
}

InjectivityReport injectivity_check(const FreeMapOracle& f, const MatTuple& x1, const MatTuple& x2, double tol) {
  InjectivityReport rep;
  rep.value_gap = distance(f(x1), f(x2));
  if (distance(x1, x2) <= tol) {
    rep.note = "X1 = X2: trivially consistent";
    return rep;
  }
  if (rep.value_gap >= tol) {
    rep.note = "f(X1) != f(X2): no test applicable";
    return rep;
  }
  rep.applicable = true;
  const std::size_t n = x1.level();
  const MatTuple z = direct_sum(x1, x2);
  std::vector<Matrix> dirs;
  for (std::size_t k = 0; k < x1.arity(); ++k) {
    const Matrix d = x1[k] - x2[k];
    Matrix e(2 * n, d.field());
    set_block(e, n, 0, 1, d);
    set_block(e, n, 1, 0, d);
    dirs.push_back(std::move(e));
  }
  const MatTuple e(std::move(dirs));
  rep.offdiag_image = norm(derivative(f, z, e)) / norm(e);
  const bool complex = is_complex(f, z);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(real_jacobian(f, z, complex));
  const auto& sv = svd.singularValues();
  rep.min_singular_value = sv(sv.size() - 1);
  rep.note = "f(X1) = f(X2) with X1 != X2: derivative at X1 (+) X2 is singular";
  return rep;
}

}  // namespace freenc
