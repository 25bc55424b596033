#include <cmath>
#include <numbers>

#include "freenc/error.hpp"
#include "freenc/linalg.hpp"
#include "freenc/oracle.hpp"

namespace freenc {

namespace {

Matrix hermitian_part(const Matrix& s) { return (s + s.star()) * 0.5; }

Smoothness pow_smoothness(double alpha) {
  if (alpha == std::floor(alpha)) return Smoothness::polynomial(static_cast<int>(2 * alpha));
  const int k = static_cast<int>(std::floor(alpha));
  return k == 0 ? Smoothness::continuous() : Smoothness::ck(k);
}

// Arguments of h_k evaluated on (x1, x2, x3).
template <class M>
std::vector<M> h_arguments(std::size_t k, const M& x1, const M& x2, const M& x3, const M& one) {
  const auto args = nonuniform_arguments(k);
  std::size_t top = 0;
  for (const auto& [i, j] : args) top = std::max({top, i, j});
  std::vector<M> p1{one}, p2{one};
  for (std::size_t e = 1; e <= top; ++e) {
    p1.push_back(p1.back() * x1);
    p2.push_back(p2.back() * x2);
  }
  const M x3sq = x3 * x3;
  std::vector<M> out;
  for (const auto& [i, j] : args) out.push_back(x3sq * p2[i - 1] * p1[j - 1] - p2[i] * p1[j]);
  return out;
}

template <class M>
M h_eval(std::size_t k, const M& x1, const M& x2, const M& x3, const M& one) {
  const std::vector<M> args = h_arguments(k, x1, x2, x3, one);
  return standard_poly_eval<M>(args, one);
}

double factorial(std::size_t k) {
  double f = 1.0;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
  return f;
}

}  // namespace

FreeMapOracle pow_xxt(double alpha) {
  if (!(alpha > 0.0)) throw DomainError("pow_xxt: alpha must be positive");
  return FreeMapOracle("pow_xxt", 1, 1, Field::Real, Group::O, pow_smoothness(alpha),
                       [alpha](const MatTuple& x) {
                         const Matrix s = hermitian_part(x[0] * x[0].star());
                         return MatTuple{sym_matrix_function(MatrixFunction::pow(alpha), s)};
                       });
}

FreeMapOracle sinxxt() {
  return FreeMapOracle("sinxxt", 1, 1, Field::Real, Group::O, Smoothness::analytic(),
                       [](const MatTuple& x) {
                         const Matrix s = hermitian_part(x[0] * x[0].star());
                         return MatTuple{sym_matrix_function(MatrixFunction::sin(), s)};
                       });
}

FreeMapOracle smooth_nonanalytic(int J) {
  if (J < 0) throw DomainError("smooth_nonanalytic: J must be nonnegative");
  std::vector<double> weights;
  for (int j = 0; j <= J; ++j) {
    const double w = std::exp(-std::sqrt(std::ldexp(1.0, j)));
    if (w == 0.0) break;  // remaining terms underflow
    weights.push_back(w);
  }
  return FreeMapOracle(
      "smooth_nonanalytic", 1, 1, Field::Real, Group::O, Smoothness::smooth(),
      [weights](const MatTuple& x) {
        const Matrix s = x[0] + x[0].star();
        const auto eig = linalg::hermitian_eigen(s);
        const std::size_t n = s.size();
        std::vector<double> fv(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < weights.size(); ++j)
            fv[i] += weights[j] * std::cos(std::ldexp(eig.values[i], static_cast<int>(j)));
        Matrix scaled = eig.vectors;
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c) scaled.set(r, c, scaled(r, c) * fv[c]);
        return MatTuple{scaled * eig.vectors.star()};
      });
}

std::vector<std::pair<std::size_t, std::size_t>> nonuniform_arguments(std::size_t k) {
  if (k == 0) throw DomainError("nonuniform: k must be at least 1");
  std::vector<std::pair<std::size_t, std::size_t>> a{{1, 1}};
  for (std::size_t j = 2; j <= k; ++j) {
    a.emplace_back(j, j);
    a.emplace_back(j - 1, j);
  }
  a.emplace_back(k + 1, k + 1);
  return a;
}

NCPoly nonuniform_z(std::size_t i, std::size_t j) {
  if (i == 0 || j == 0) throw DomainError("nonuniform_z: indices are 1-based");
  std::vector<Letter> a{{3, false}, {3, false}};
  a.insert(a.end(), i - 1, Letter{2, false});
  a.insert(a.end(), j - 1, Letter{1, false});
  std::vector<Letter> b(i, Letter{2, false});
  b.insert(b.end(), j, Letter{1, false});
  NCPoly z;
  z.add_term(Word(std::move(a)), 1.0);
  z.add_term(Word(std::move(b)), -1.0);
  return z;
}

std::size_t nonuniform_h_degree(std::size_t k) {
  std::size_t d = 0;
  for (const auto& [i, j] : nonuniform_arguments(k)) {
    const NCPoly z = nonuniform_z(i, j);
    if (!z.is_homogeneous()) throw Error("nonuniform_z is not homogeneous");
    d += static_cast<std::size_t>(z.degree());
  }
  return d;
}

NCPoly nonuniform_h_poly(std::size_t k) {
  if (k > 3) throw CapacityError("symbolic h_k is limited to k <= 3");
  std::vector<NCPoly> args;
  for (const auto& [i, j] : nonuniform_arguments(k)) args.push_back(nonuniform_z(i, j));
  return standard_poly_eval<NCPoly>(args, NCPoly::constant(1.0));
}

Matrix nonuniform_h(std::size_t k, const MatTuple& x) {
  if (x.arity() != 3) throw SizeError("nonuniform_h: three arguments expected");
  return h_eval<Matrix>(k, x[0], x[1], x[2], Matrix::identity(x.level()));
}

QMatrix nonuniform_h(std::size_t k, std::span<const QMatrix> x) {
  if (x.size() != 3) throw SizeError("nonuniform_h: three arguments expected");
  return h_eval<QMatrix>(k, x[0], x[1], x[2], QMatrix::identity(x[0].size()));
}

FreeMapOracle nonuniform() {
  return FreeMapOracle("nonuniform", 3, 1, Field::Real, Group::O, Smoothness::analytic(),
                       [](const MatTuple& x) {
                         const std::size_t n = x.level();
                         if (n > nonuniform_max_level)
                           throw CapacityError("nonuniform: level above " +
                                               std::to_string(nonuniform_max_level));
                         Matrix arg = Matrix::zero(n, x.field());
                         // S_2k vanishes on M_n for k >= n.
                         for (std::size_t k = 1; k < n; ++k) {
                           const Matrix h = nonuniform_h(k, x);
                           arg.add_scaled(factorial(k), h + h.star());
                         }
                         return MatTuple{sym_matrix_function(MatrixFunction::sin(), hermitian_part(arg))};
                       });
}

std::vector<QMatrix> nonuniform_witness_exact(std::size_t n, bool corrected) {
  if (n == 0) throw DomainError("nonuniform witness needs n >= 1");
  const std::size_t m = n + 1;
  QMatrix x1(m), x2(m), x3 = QMatrix::identity(m);
  for (std::size_t i = 1; i <= n; ++i) {
    x1(i - 1, i) = 1;
    x2(i, i - 1) = 1;
  }
  x3(n - 1, n) = corrected ? Rational(1, 2) : Rational(1);
  return {x1, x2, x3};
}

MatTuple nonuniform_witness(std::size_t n, bool corrected) {
  const auto q = nonuniform_witness_exact(n, corrected);
  std::vector<Matrix> out;
  for (const QMatrix& a : q) {
    Matrix m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j) m.set(i, j, a(i, j).convert_to<double>());
    out.push_back(std::move(m));
  }
  return MatTuple(std::move(out));
}

double nonuniform_witness_scale(std::size_t n) {
  const double deg = static_cast<double>(nonuniform_h_degree(n));
  return std::pow(std::numbers::pi / (2.0 * factorial(n + 1)), 1.0 / deg);
}

FreeMapOracle builtin_map(const std::string& name, const std::map<std::string, double>& params) {
  auto param = [&](const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (name == "pow_xxt") {
    double alpha = param("alpha", 0.5);
    if (params.count("m")) {
      const double m = params.at("m");
      if (m < 2) throw DomainError("pow_xxt: m must be at least 2");
      alpha = 1.0 / m;
    }
    if (params.count("k")) {
      const double k = params.at("k");
      if (k < 1) throw DomainError("pow_xxt: k must be at least 1");
      alpha = k + 0.5;
    }
    return pow_xxt(alpha);
  }
  if (name == "sinxxt") return sinxxt();
  if (name == "smooth_nonanalytic") return smooth_nonanalytic(static_cast<int>(param("J", 40)));
  if (name == "nonuniform") return nonuniform();
  throw Error("unknown builtin map '" + name + "'");
}

std::vector<std::string> builtin_names() {
  return {"nonuniform", "pow_xxt", "sinxxt", "smooth_nonanalytic"};
}

}  // namespace freenc
