#pragma once
// Black-box free maps: level-indexed evaluators with metadata, built-in
// examples, and checkers for the free-map axioms and derivative identities.

#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "freenc/mateval.hpp"

namespace freenc {

struct Smoothness {
  enum class Kind { Continuous, Ck, Smooth, Analytic, Polynomial };
  Kind kind = Kind::Analytic;
  int order = 0;  // k for Ck, d for Polynomial

  static Smoothness continuous() { return {Kind::Continuous, 0}; }
  static Smoothness ck(int k) { return {Kind::Ck, k}; }
  static Smoothness smooth() { return {Kind::Smooth, 0}; }
  static Smoothness analytic() { return {Kind::Analytic, 0}; }
  static Smoothness polynomial(int d) { return {Kind::Polynomial, d}; }
};
std::string to_string(const Smoothness& s);

class FreeMapOracle {
 public:
  using Evaluator = std::function<MatTuple(const MatTuple&)>;
  // Exact directional derivative Df(X)(H).
  using Derivative = std::function<MatTuple(const MatTuple& x, const MatTuple& h)>;
  // Domain radius delta_n in the spectral norm; infinity for entire maps.
  using Radius = std::function<double(std::size_t level)>;

  FreeMapOracle(std::string name, std::size_t g, std::size_t g_out, Field field, Group group,
                Smoothness smoothness, Evaluator eval);

  const std::string& name() const { return name_; }
  std::size_t arity() const { return g_; }
  std::size_t out_arity() const { return g_out_; }
  Field field() const { return field_; }
  Group group() const { return group_; }
  const Smoothness& smoothness() const { return smoothness_; }

  double radius(std::size_t level) const;
  bool in_domain(const MatTuple& x) const;
  // Throws SizeError on wrong arity and DomainError outside the radius.
  MatTuple operator()(const MatTuple& x) const;

  bool has_derivative() const { return static_cast<bool>(derivative_); }
  MatTuple exact_derivative(const MatTuple& x, const MatTuple& h) const;

  FreeMapOracle& set_radius(Radius r);
  FreeMapOracle& set_derivative(Derivative d);
  FreeMapOracle without_derivative() const;

 private:
  std::string name_;
  std::size_t g_;
  std::size_t g_out_;
  Field field_;
  Group group_;
  Smoothness smoothness_;
  Evaluator eval_;
  Radius radius_;
  Derivative derivative_;
};

// Group is GL for involution-free polynomials, O for real polynomials with
// starred letters and U in adjoint mode. g defaults to the largest variable
// index occurring (at least 1).
FreeMapOracle oracle_from_ncpoly(const std::vector<NCPoly>& ps, std::size_t g = 0,
                                 Field field = Field::Real);
FreeMapOracle oracle_from_ncpoly(const NCPoly& p, std::size_t g = 0, Field field = Field::Real);
// Trace polynomials are similarity-equivariant but not free maps in general.
FreeMapOracle oracle_from_tracepoly(const TracePoly& p, std::size_t g = 0,
                                    Field field = Field::Real);

// Exact derivative of polynomial evaluation: sum over letter positions.
Matrix eval_ncpoly_derivative(const NCPoly& p, const MatTuple& x, const MatTuple& h);

// ---- built-in maps ---------------------------------------------------------

// (x x^t)^alpha
FreeMapOracle pow_xxt(double alpha);
// sin(x x^t)
FreeMapOracle sinxxt();
// sum_{j<=J} exp(-sqrt(2^j)) cos(2^j (x + x^t))
FreeMapOracle smooth_nonanalytic(int J = 40);
// sin(sum_k k! (h_k + h_k^t)) in three variables; at level n only k < n
// contribute. Levels above nonuniform_max_level are refused.
FreeMapOracle nonuniform();
inline constexpr std::size_t nonuniform_max_level = 10;

// Registry used by the command line: pow_xxt (alpha), sinxxt,
// smooth_nonanalytic (J), nonuniform. Unknown names throw Error.
FreeMapOracle builtin_map(const std::string& name, const std::map<std::string, double>& params = {});
std::vector<std::string> builtin_names();

// Signed sum over all orderings of the arguments, by dynamic programming
// over subsets. Works for any ring-like T with +, -, * and a unit.
template <class T>
T standard_poly_eval(std::span<const T> args, const T& one) {
  const std::size_t r = args.size();
  if (r > 24) throw CapacityError("standard polynomial with more than 24 arguments");
  // Layered over subset size; only the previous layer is kept.
  std::map<std::uint32_t, T> prev{{0u, one}};
  for (std::size_t p = 1; p <= r; ++p) {
    std::map<std::uint32_t, T> cur;
    for (const auto& [mask, val] : prev) {
      for (std::size_t i = 0; i < r; ++i) {
        const std::uint32_t bit = 1u << i;
        if (mask & bit) continue;
        const std::uint32_t full = mask | bit;
        // args[i] leads; its sign counts the smaller indices in the subset.
        const int below = std::popcount(full & (bit - 1u));
        T term = args[i] * val;
        auto it = cur.find(full);
        if (it == cur.end()) {
          if (below % 2) term = -term;
          cur.emplace(full, std::move(term));
        } else if (below % 2) {
          it->second = it->second - term;
        } else {
          it->second = it->second + term;
        }
      }
    }
    prev = std::move(cur);
  }
  return prev.begin()->second;
}

// z_ij = x3^2 x2^(i-1) x1^(j-1) - x2^i x1^j
NCPoly nonuniform_z(std::size_t i, std::size_t j);
// Argument list z11, z22, z12, z33, z23, ..., zkk, z(k-1)k, z(k+1)(k+1).
std::vector<std::pair<std::size_t, std::size_t>> nonuniform_arguments(std::size_t k);
// Degree of h_k from the degrees of its homogeneous arguments.
std::size_t nonuniform_h_degree(std::size_t k);
// Symbolic h_k; refused above k = 3.
NCPoly nonuniform_h_poly(std::size_t k);
Matrix nonuniform_h(std::size_t k, const MatTuple& x);
QMatrix nonuniform_h(std::size_t k, std::span<const QMatrix> x);

// x1 = sum e_{i,i+1}, x2 = sum e_{i+1,i}, x3 = I + c e_{n,n+1} in M_{n+1},
// with c = 1/2 (corrected) or c = 1 (as printed in the literature).
std::vector<QMatrix> nonuniform_witness_exact(std::size_t n, bool corrected = true);
MatTuple nonuniform_witness(std::size_t n, bool corrected = true);
// Scale c with (n+1)! c^deg(h_n) = pi/2.
double nonuniform_witness_scale(std::size_t n);

// ---- checkers --------------------------------------------------------------

struct Witness {
  std::string check;
  std::size_t level = 0;
  MatTuple input;
  double residual = 0.0;
  std::string note;
};

struct CheckReport {
  std::string check;
  std::size_t trials = 0;
  double tolerance = 0.0;
  double max_violation = 0.0;
  std::vector<Witness> witnesses;  // residual above tolerance, sorted by level

  bool passed() const { return witnesses.empty(); }
  void record(Witness w);
  void merge(const CheckReport& other);
};

struct CheckOptions {
  std::size_t trials = 25;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  // Sampling radius when the oracle's radius is infinite.
  double default_radius = 1.0;
};

// ||f(X+Y) - f(X)+f(Y)|| over random X, Y at levels (m, n).
CheckReport check_direct_sums(const FreeMapOracle& f,
                              const std::vector<std::pair<std::size_t, std::size_t>>& levels,
                              const CheckOptions& opts = {});
// ||f(s X s^-1) - s f(X) s^-1|| relative to max(1, ||s f(X) s^-1||).
CheckReport check_similarity(const FreeMapOracle& f, Group group, const std::vector<std::size_t>& levels,
                             const CheckOptions& opts = {});

struct DerivativeEstimate {
  MatTuple value;
  double error = 0.0;  // difference of the last two extrapolants
};
// Central differences with step halving and Richardson extrapolation.
// h0 <= 0 selects 1e-3 (1 + ||X||).
DerivativeEstimate directional_derivative(const FreeMapOracle& f, const MatTuple& x, const MatTuple& h,
                                          int order = 1, double h0 = 0.0, int richardson_steps = 3);
// Exact derivative when the oracle has one, otherwise the estimate above.
MatTuple derivative(const FreeMapOracle& f, const MatTuple& x, const MatTuple& h);

// f([[X,H],[0,X]]) against [[f(X), Df(X)(H)], [0, f(X)]].
CheckReport check_triangular_identity(const FreeMapOracle& f, const MatTuple& x, const MatTuple& h,
                                      double tol = 1e-6);
// Df(X)([a,X]) against [a, f(X)] for skew a, and the block instance at
// X (+) x2 with a = [[0,I],[-I,0]]. x2 defaults to X/2.
CheckReport check_commutator_identity(const FreeMapOracle& f, const MatTuple& x, const Matrix& a,
                                      double tol = 1e-6, const std::optional<MatTuple>& x2 = {});

}  // namespace freenc
