#include <doctest.h>

#include "freenc/demo.hpp"
#include "freenc/recon.hpp"
#include "freenc/textio.hpp"

using namespace freenc;

namespace {

Matrix E(std::size_t n, std::size_t i, std::size_t j) { return Matrix::unit(n, i, j); }
NCPoly P(const std::string& s) { return textio::ncpoly_from_string(s); }
Word W(const char* s) { return textio::parse_word(s); }

QNCPoly Q(const std::string& s) { return to_rational(P(s)); }

}  // namespace

TEST_SUITE("recon") {
  TEST_CASE("homogeneous parts of a polynomial") {
    const FreeMapOracle f = oracle_from_ncpoly(P("NCPOLY1\n1 : x1\n1 : x1 x1\n3 : 1\n"));
    const MatTuple x{E(2, 1, 2) + E(2, 2, 1)};
    const auto parts = homogeneous_parts(f, x, 2);
    REQUIRE(parts.size() == 3);
    CHECK(distance(parts[0][0], 3.0 * Matrix::identity(2)) < 1e-12);
    CHECK(distance(parts[1][0], x[0]) < 1e-12);
    CHECK(distance(parts[2][0], Matrix::identity(2)) < 1e-12);
  }

  TEST_CASE("homogeneous part of sin(xx^t)") {
    Rng rng(31);
    const MatTuple x = random_tuple(1, 3, Field::Real, rng);
    const MatTuple p2 = homogeneous_part_eval(sinxxt(), 2, x, 10);
    CHECK(distance(p2[0], x[0] * x[0].transpose()) < 1e-6 * (1 + p2[0].frobenius_norm()));
  }

  TEST_CASE("matenote plans") {
    const MatenotePlan p = matenote_plan(W("x1 x1*"), 1);
    CHECK(p.level == 3);
    CHECK(distance(p.tuple[0], E(3, 1, 2) + E(3, 3, 2)) == 0.0);
    const Matrix a = p.tuple[0];
    CHECK((a * a.transpose())(0, 2) == Complex(1));
    CHECK((a.transpose() * a)(0, 2) == Complex(0));
    const MatenotePlan q = matenote_plan(W("x1 x2"), 2);
    CHECK(distance(q.tuple[0], E(3, 1, 2)) == 0.0);
    CHECK(distance(q.tuple[1], E(3, 2, 3)) == 0.0);
  }

  TEST_CASE("exact matenote micro-cases") {
    auto exact_eval = [](const QNCPoly& p) {
      return [p](std::span<const QMatrix> x) { return std::vector<QMatrix>{eval_ncpoly(p, x)}; };
    };
    const QNCPoly sym = Q("NCPOLY1\n1 : x1 x2\n1 : x2 x1\n");
    auto got = matenote_extract_exact(exact_eval(sym), 2, 2, 1, Involution::None);
    CHECK(got[0] == sym);
    const QNCPoly id = Q("NCPOLY1\n1 : x1\n");
    CHECK(matenote_extract_exact(exact_eval(id), 1, 1, 1, Involution::None)[0] == id);
    const QNCPoly xxt = Q("NCPOLY1 mode=transpose\n1 : x1 x1*\n");
    got = matenote_extract_exact(exact_eval(xxt), 2, 1, 1, Involution::Transpose);
    CHECK(got[0] == xxt);
    CHECK(got[0].coeff(W("x1* x1")) == 0);
  }

  TEST_CASE("exact matenote recovers random homogeneous polynomials") {
    Rng rng(32);
    for (int t = 0; t < 10; ++t) {
      const auto mode = t % 2 ? Involution::Transpose : Involution::None;
      const std::size_t m = 1 + t % 3;
      NCPoly r = random_ncpoly(2, m, mode, rng).homogeneous_part(m);
      QNCPoly q(mode);
      for (const auto& [w, c] : r.terms()) q.add_term(w, Rational(static_cast<long>(std::round(4 * c.real())), 4));
      auto f = [q](std::span<const QMatrix> x) { return std::vector<QMatrix>{eval_ncpoly(q, x)}; };
      CHECK(matenote_extract_exact(f, m, 2, 1, mode)[0] == q);
      // Extraction at a larger level reads the same entry.
      CHECK(matenote_extract_exact(f, m, 2, 1, mode, m + 2)[0] == q);
    }
  }

  TEST_CASE("taylor recovers polynomial oracles") {
    Rng rng(33);
    for (int t = 0; t < 6; ++t) {
      const auto mode = t % 2 ? Involution::Transpose : Involution::None;
      const NCPoly p = random_ncpoly(1 + t % 3, 1 + t % 4, mode, rng);
      const TaylorResult r = taylor_at_zero(oracle_from_ncpoly(p), static_cast<std::size_t>(p.degree()));
      CHECK(r.flagged.empty());
      CHECK(max_coeff_diff(r.series[0].to_poly().cleaned(1e-9), p) < 1e-8);
    }
    const TaylorResult z = taylor_at_zero(oracle_from_ncpoly(NCPoly(Involution::None), 1), 3);
    CHECK(z.series[0].to_poly().cleaned(1e-9).is_zero());
  }

  TEST_CASE("taylor of sin(xx^t)") {
    const TaylorResult r = taylor_at_zero(sinxxt(), 6);
    const auto& s = r.series[0];
    CHECK(max_coeff_diff(s.part(2).cleaned(1e-7), P("NCPOLY1 mode=transpose\n1 : x1 x1*\n")) < 1e-6);
    CHECK(max_coeff_diff(s.part(6).cleaned(1e-7),
                         P("NCPOLY1 mode=transpose\n-0.16666666666666666 : x1 x1* x1 x1* x1 x1*\n")) < 1e-6);
    for (std::size_t m : {1u, 3u, 4u, 5u}) CHECK(s.part(m).cleaned(1e-7).is_zero());
  }

  TEST_CASE("certified reconstruction") {
    FreeMapOracle trI("trI", 1, 1, Field::Real, Group::GL, Smoothness::polynomial(1),
                      [](const MatTuple& x) { return MatTuple{x[0].trace().real() * Matrix::identity(x.level())}; });
    const ReconResult bad = reconstruct_polynomial(trI, 1);
    CHECK_FALSE(bad.passed);
    REQUIRE(bad.direct_sums);
    CHECK_FALSE(bad.direct_sums->passed());

    const NCPoly p = P("NCPOLY1\n1 : x1 x2 x1*\n");
    const ReconResult ok = reconstruct_polynomial(oracle_from_ncpoly(p), 3);
    CHECK(ok.passed);
    CHECK(max_coeff_diff(ok.polys[0].cleaned(1e-9), p) < 1e-8);

    const ReconResult c = reconstruct_polynomial(oracle_from_ncpoly(P("NCPOLY1\n2.5 : 1\n"), 1), 0);
    CHECK(c.passed);
    CHECK(max_coeff_diff(c.polys[0].cleaned(1e-9), P("NCPOLY1\n2.5 : 1\n")) < 1e-9);
  }

  TEST_CASE("expansion at a matrix point: x1^2") {
    Rng rng(34);
    const MatTuple a = random_tuple(1, 2, Field::Real, rng);
    const FreeMapOracle f = oracle_from_ncpoly(P("NCPOLY1\n1 : x1 x1\n"));
    const std::size_t s = 3;
    const GenExpansion e = expand_at_point(f, a, 2, s);
    CHECK(e.ok());
    const Matrix as = kron(a[0], Matrix::identity(s));
    for (int t = 0; t < 3; ++t) {
      const MatTuple h = random_tuple(1, 2 * s, Field::Real, rng);
      CHECK(distance(eval_genpoly(e.parts[1][0], h), as * h[0] + h[0] * as) < 1e-8);
      CHECK(distance(eval_genpoly(e.parts[2][0], h), h[0] * h[0]) < 1e-8);
      CHECK(distance(eval_genpoly(e.parts[0][0], h), as * as) < 1e-8);
    }
  }

  TEST_CASE("expansion at a scalar point reduces to taylor") {
    const NCPoly p = P("NCPOLY1\n1 : x1\n-2 : x1 x1\n");
    const GenExpansion e = expand_at_point(oracle_from_ncpoly(p), MatTuple{Matrix::zero(1)}, 2, 3);
    CHECK(e.ok());
    for (std::size_t m = 0; m <= 2; ++m) {
      NCPoly got(Involution::None);
      for (const GenTerm& t : e.parts[m][0].terms()) {
        Complex c = 1.0;
        for (const Matrix& a : t.mats) c *= a(0, 0);
        got.add_term(Word(t.letters), c);
      }
      CHECK(max_coeff_diff(got.cleaned(1e-9), p.homogeneous_part(m)) < 1e-9);
    }
  }

  TEST_CASE("expansion of x1 x1^t at e12 has coefficients in F<A, A^t>") {
    const MatTuple a{E(2, 1, 2)};
    const GenExpansion e = expand_at_point(oracle_from_ncpoly(P("NCPOLY1\n1 : x1 x1*\n")), a, 2, 3);
    CHECK(e.ok());
    const SubspaceBasis full = generated_algebra(a, true);
    CHECK(full.dim() == 4);
    for (const auto& part : e.parts)
      for (const GenTerm& t : part[0].terms())
        for (const Matrix& m : t.mats) CHECK(subspace_residual(m, full) < 1e-8);
  }

  TEST_CASE("expansion capacity limits") {
    const FreeMapOracle f = oracle_from_ncpoly(P("NCPOLY1\n1 : x1\n"));
    CHECK_THROWS_AS(expand_at_point(f, MatTuple{Matrix::zero(2)}, expand_max_degree + 1, 2), CapacityError);
  }
}
