#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "freenc/linalg.hpp"
#include "freenc/mateval.hpp"
#include "freenc/textio.hpp"

using namespace freenc;
using namespace freenc::linalg;

namespace {

Matrix E(std::size_t n, std::size_t i, std::size_t j) { return Matrix::unit(n, i, j); }
TracePoly T(const std::string& s) { return textio::tracepoly_from_string(s); }

// Word product computed with Eigen directly.
Eigen::MatrixXd eigen_word(const Word& w, const MatTuple& x) {
  const auto n = static_cast<Eigen::Index>(x.level());
  Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(n, n);
  for (Letter l : w) {
    Eigen::MatrixXd m = to_eigen_real(x[l.var - 1]);
    acc = acc * (l.starred ? Eigen::MatrixXd(m.transpose()) : m);
  }
  return acc;
}

}  // namespace

TEST_SUITE("mateval") {
  TEST_CASE("word evaluation examples") {
    const MatTuple x2{E(2, 1, 2)};
    CHECK(eval_word(Word::unit(), x2) == Matrix::identity(2));
    CHECK(distance(eval_word(textio::parse_word("x1 x1*"), x2), E(2, 1, 1)) == 0.0);
    const MatTuple x3{E(3, 1, 2), E(3, 2, 3)};
    CHECK(distance(eval_word(textio::parse_word("x1 x2"), x3), E(3, 1, 3)) == 0.0);
  }

  TEST_CASE("word evaluation agrees with Eigen products") {
    Rng rng(11);
    for (int t = 0; t < 30; ++t) {
      const MatTuple x = random_tuple(2, 1 + t % 5, Field::Real, rng);
      const Word w = textio::parse_word(t % 2 ? "x1 x2* x1 x1*" : "x2 x2 x1*");
      CHECK((to_eigen_real(eval_word(w, x)) - eigen_word(w, x)).norm() < 1e-12);
    }
  }

  TEST_CASE("trace polynomial examples") {
    const Matrix d = Matrix::diagonal(std::vector<double>{1.0, 2.0});
    CHECK(distance(eval_tracepoly(T("TRPOLY1\n1 : tr(x1)\n"), MatTuple{d}), 3.0 * Matrix::identity(2)) < 1e-15);
    CHECK(distance(eval_tracepoly(T("TRPOLY1 mode=transpose\n1 : tr(x1 x1*) x1\n"), MatTuple{E(2, 1, 2)}),
                   E(2, 1, 2)) < 1e-15);
    const MatTuple commuting{d, Matrix::diagonal(std::vector<double>{5.0, -1.0})};
    CHECK(eval_tracepoly(T("TRPOLY1\n1 : x1 x2\n-1 : x2 x1\n"), commuting).frobenius_norm() < 1e-15);
  }

  TEST_CASE("generalized polynomial block evaluation") {
    // e11 x1 e12 x2 e22 on M_4 with n = s = 2 gives e12 (x) A_11 B_22.
    const std::size_t n = 2, s = 2;
    GenPoly p(n, Involution::None);
    p.add_term({{E(n, 1, 1), E(n, 1, 2), E(n, 2, 2)}, {Letter{1, false}, Letter{2, false}}});
    Rng rng(12);
    const MatTuple x = random_tuple(2, n * s, Field::Real, rng);
    const Matrix expect = kron(E(n, 1, 2), block(x[0], s, 0, 0) * block(x[1], s, 1, 1));
    CHECK(distance(eval_genpoly(p, x), expect) < 1e-13);

    GenPoly scalar(n, Involution::None);
    scalar.add_term({{2.5 * Matrix::identity(n), Matrix::identity(n)}, {Letter{1, false}}});
    CHECK(distance(eval_genpoly(scalar, x), 2.5 * x[0]) < 1e-13);
  }

  TEST_CASE("generalized polynomials with equal basis expansions evaluate equally") {
    Rng rng(13);
    const std::size_t n = 2;
    for (int t = 0; t < 10; ++t) {
      GenPoly p(n, Involution::Transpose);
      p.add_term({{random_gaussian(n, Field::Real, rng), random_gaussian(n, Field::Real, rng),
                   random_gaussian(n, Field::Real, rng)},
                  {Letter{1, false}, Letter{1, true}}});
      const GenPoly q = genpoly_from_basis(genpoly_expand_basis(p), n, Involution::Transpose);
      const MatTuple x = random_tuple(1, n * 3, Field::Real, rng);
      CHECK(distance(eval_genpoly(p, x), eval_genpoly(q, x)) < 1e-10);
    }
  }

  TEST_CASE("direct sums and conjugation") {
    Rng rng(14);
    const MatTuple x = random_tuple(2, 2, Field::Real, rng), y = random_tuple(2, 3, Field::Real, rng);
    const MatTuple s = direct_sum(x, y);
    CHECK(s.level() == 5);
    CHECK(distance(conjugate(x, Matrix::identity(2), Group::GL)[0], x[0]) < 1e-15);
    // Permutation (1 2 3) -> rows and columns move together.
    Matrix perm(3);
    perm.set(0, 1, 1.0);
    perm.set(1, 2, 1.0);
    perm.set(2, 0, 1.0);
    const Matrix c = conjugate(y[0], perm, Group::O);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(c(i, j) == y[0]((i + 1) % 3, (j + 1) % 3));
  }

  TEST_CASE("random group elements") {
    Rng rng(15);
    for (std::size_t n : {1u, 2u, 4u}) {
      const Matrix o = random_group_element(Group::O, n, rng).sigma;
      CHECK(distance(o * o.transpose(), Matrix::identity(n)) < 1e-12);
      const Matrix u = random_group_element(Group::U, n, rng).sigma;
      CHECK(distance(u * u.adjoint(), Matrix::identity(n, Field::Complex)) < 1e-12);
      const GroupElement g = random_group_element(Group::GL, n, rng);
      CHECK(std::isfinite(g.condition));
      { const auto sv = singular_values(g.sigma); CHECK(*std::min_element(sv.begin(), sv.end()) > 0.0); }
    }
  }

  TEST_CASE("symmetric matrix functions") {
    using std::numbers::pi;
    const Matrix s = (pi / 2) * (E(3, 1, 3) + E(3, 3, 1));
    CHECK(distance(sym_matrix_function(MatrixFunction::sin(), s), E(3, 1, 3) + E(3, 3, 1)) < 1e-12);
    const Matrix d = Matrix::diagonal(std::vector<double>{4.0, 9.0});
    CHECK(distance(sym_matrix_function(MatrixFunction::pow(0.5), d), Matrix::diagonal(std::vector<double>{2.0, 3.0})) <
          1e-12);
    CHECK(distance(sym_matrix_function(MatrixFunction::cos(), Matrix::zero(3)), Matrix::identity(3)) < 1e-15);
    CHECK_THROWS(sym_matrix_function(MatrixFunction::pow(0.5), Matrix::diagonal(std::vector<double>{1.0, -1.0})));
  }

  TEST_CASE("centralizers") {
    CHECK(centralizer(std::span<const Matrix>{}, 3).dim() == 9);
    std::vector<Matrix> units;
    for (std::size_t i = 1; i <= 3; ++i)
      for (std::size_t j = 1; j <= 3; ++j) units.push_back(E(3, i, j));
    CHECK(centralizer(units, 3).dim() == 1);
    const std::vector<Matrix> d{Matrix::diagonal(std::vector<double>{1.0, 2.0})};
    const SubspaceBasis c = centralizer(d, 2);
    CHECK(c.dim() == 2);
    for (const Matrix& m : c.basis) CHECK(std::abs(m(0, 1)) + std::abs(m(1, 0)) < 1e-12);
  }

  TEST_CASE("centralizer of the scalars is everything") {
    // A lone scalar generator with rounding noise must not lose dimensions.
    for (std::size_t n : {2u, 3u, 4u}) {
      Matrix s = Matrix::identity(n) * (1.0 / std::sqrt(static_cast<double>(n)));
      s.add_to(0, 1, 1e-17);
      CHECK(centralizer(std::vector<Matrix>{s}, n).dim() == n * n);
    }
  }

  TEST_CASE("generated algebras") {
    const MatTuple a{E(2, 1, 2)};
    CHECK(generated_algebra(a, false).dim() == 2);
    CHECK(generated_algebra(a, true).dim() == 4);
    CHECK(generated_algebra(MatTuple{Matrix::zero(3)}, true).dim() == 1);
  }

  TEST_CASE("subspace residuals and the double centralizer") {
    const SubspaceBasis v = generated_algebra(MatTuple{E(3, 1, 2)}, false);
    for (const Matrix& m : v.basis) CHECK(subspace_residual(m, v) < 1e-12);
    CHECK(subspace_residual(E(3, 2, 1), v) == doctest::Approx(1.0).epsilon(1e-12));
    Rng rng(16);
    const MatTuple a = random_tuple(2, 3, Field::Real, rng);
    const SubspaceBasis cc = centralizer(centralizer(generated_algebra(a, false)));
    for (const Matrix& m : a) CHECK(subspace_residual(m, cc) < 1e-8);
  }
}
