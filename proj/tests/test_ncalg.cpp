#include <doctest.h>

#include <random>
#include <set>

#include "freenc/demo.hpp"
#include "freenc/genpoly.hpp"
#include "freenc/mateval.hpp"
#include "freenc/series.hpp"
#include "freenc/textio.hpp"
#include "freenc/tracepoly.hpp"

using namespace freenc;

namespace {

Word W(const char* s) { return textio::parse_word(s); }
NCPoly P(const std::string& body, Involution mode) {
  std::string header = "NCPOLY1 mode=";
  header += mode == Involution::None ? "free" : (mode == Involution::Transpose ? "transpose" : "adjoint");
  return textio::ncpoly_from_string(header + "\n" + body);
}

// All rotations of w (and of its involution in star mode), least element.
Word brute_canonical(const Word& w, bool star) {
  std::set<Word> cands;
  for (std::size_t r = 0; r < std::max<std::size_t>(1, w.degree()); ++r) {
    cands.insert(w.rotated(r));
    if (star) cands.insert(word_involution(w).rotated(r));
  }
  return *cands.begin();
}

Word random_word(std::size_t len, std::size_t g, bool star, std::mt19937_64& rng) {
  std::vector<Letter> ls;
  std::uniform_int_distribution<int> v(1, static_cast<int>(g)), s(0, star ? 1 : 0);
  for (std::size_t i = 0; i < len; ++i) ls.push_back(Letter{static_cast<std::uint16_t>(v(rng)), s(rng) == 1});
  return Word(ls);
}

// Substitution by explicit multiplication of the component polynomials.
NCPoly substitute(const NCPoly& f, const std::vector<NCPoly>& g, std::size_t D) {
  NCPoly out(f.mode());
  for (const auto& [w, c] : f.terms()) {
    NCPoly acc = NCPoly::constant(1.0, f.mode());
    for (Letter l : w) {
      const NCPoly& gk = g[l.var - 1];
      acc = NCPoly::multiply_truncated(acc, l.starred ? gk.involution() : gk, D);
    }
    out += acc * c;
  }
  return out.truncated(D);
}

}  // namespace

TEST_SUITE("ncalg") {
  TEST_CASE("word involution") {
    CHECK(word_involution(Word::unit()) == Word::unit());
    CHECK(word_involution(W("x1 x2")) == W("x2* x1*"));
    CHECK(word_involution(W("x1* x2 x1")) == W("x1* x2* x1"));
    std::mt19937_64 rng(4);
    for (int t = 0; t < 50; ++t) {
      const Word w = random_word(1 + t % 6, 3, true, rng);
      CHECK(word_involution(word_involution(w)) == w);
    }
  }

  TEST_CASE("cyclic canonical forms") {
    CHECK(cyclic_canonical(W("x2 x1"), false) == W("x1 x2"));
    CHECK(cyclic_canonical(W("x1"), false) == W("x1"));
    CHECK(cyclic_canonical(Word::unit(), true) == Word::unit());
    CHECK(cyclic_canonical(W("x1 x2*"), true) == cyclic_canonical(W("x2 x1*"), true));
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
      const bool star = t % 2 == 1;
      const Word w = random_word(1 + t % 7, 3, true, rng);
      const Word c = cyclic_canonical(w, star);
      CHECK(c == brute_canonical(w, star));
      CHECK(cyclic_canonical(c, star) == c);
      for (std::size_t r = 0; r < w.degree(); ++r) CHECK(cyclic_canonical(w.rotated(r), star) == c);
    }
  }

  TEST_CASE("word enumeration counts") {
    CHECK(enumerate_words(3, 2, false).size() == 8);
    CHECK(enumerate_words(3, 2, true).size() == 64);
    CHECK(enumerate_words(0, 3, true).size() == 1);
  }

  TEST_CASE("polynomial arithmetic") {
    const auto m = Involution::None;
    const NCPoly x1 = NCPoly::variable(1, m), x2 = NCPoly::variable(2, m);
    CHECK((x1 * x2).coeff(W("x1 x2")) == Complex(1));
    CHECK((x1 * x2).size() == 1);
    const NCPoly c = x1 * x2 - x2 * x1;
    CHECK(c.size() == 2);
    CHECK((c + x2 * x1 - x1 * x2).is_zero());
    CHECK_THROWS_AS(NCPoly::variable(1, Involution::None, true), ModeError);
    CHECK_THROWS_AS(x1 + NCPoly::variable(1, Involution::Transpose), ModeError);
  }

  TEST_CASE("trace monomials") {
    const auto mode = Involution::Transpose;
    const TraceMonomial a = TraceMonomial::make({W("x1")}, W("x2"), mode);
    const TraceMonomial b = TraceMonomial::make({}, W("x1"), mode);
    const TraceMonomial ab = a * b;
    CHECK(ab.pure == std::vector<Word>{W("x1")});
    CHECK(ab.tail == W("x2 x1"));
    // tr(x2 x1) and tr(x1* x2*) = tr((x2 x1)^t) are one variable in the real case.
    CHECK(TraceMonomial::make({W("x2 x1")}, {}, mode) == TraceMonomial::make({W("x1* x2*")}, {}, mode));
    CHECK(TraceMonomial::make({W("x2 x1")}, {}, Involution::None) ==
          TraceMonomial::make({W("x1 x2")}, {}, Involution::None));
    // Complex case: tr(w)* is not tr(w*), so only rotations are identified.
    CHECK(!(TraceMonomial::make({W("x2 x1")}, {}, Involution::Adjoint) ==
            TraceMonomial::make({W("x1* x2*")}, {}, Involution::Adjoint)));
  }

  TEST_CASE("generalized polynomial basis expansion") {
    const std::size_t n = 2;
    GenPoly p(n, Involution::None);
    p.add_term({{Matrix::unit(n, 1, 1), Matrix::unit(n, 1, 2), Matrix::unit(n, 2, 2)},
                {Letter{1, false}, Letter{2, false}}});
    const auto e = genpoly_expand_basis(p);
    REQUIRE(e.size() == 1);
    CHECK(e.begin()->second == Complex(1));
    CHECK(genpoly_expand_basis(GenPoly(n, Involution::None)).empty());

    GenPoly q(n, Involution::None);
    q.add_term({{Matrix::unit(n, 1, 1) + Matrix::unit(n, 1, 2), Matrix::unit(n, 2, 1)}, {Letter{1, false}}});
    const auto eq = genpoly_expand_basis(q);
    CHECK(eq.size() == 2);
    for (const auto& [mono, c] : eq) CHECK(c == Complex(1));
  }

  TEST_CASE("generalized polynomial boundary merge") {
    const std::size_t n = 2;
    std::mt19937_64 rng(6);
    const Matrix a = random_gaussian(n, Field::Real, rng), b = random_gaussian(n, Field::Real, rng);
    const Matrix c = random_gaussian(n, Field::Real, rng), d = random_gaussian(n, Field::Real, rng);
    GenPoly p(n, Involution::None), q(n, Involution::None);
    p.add_term({{a, b}, {Letter{1, false}}});
    q.add_term({{c, d}, {Letter{2, false}}});
    const GenPoly pq = p * q;
    REQUIRE(pq.terms().size() == 1);
    CHECK(distance(pq.terms()[0].mats[1], b * c) < 1e-14);
  }

  TEST_CASE("series composition examples") {
    const auto m = Involution::None;
    const std::size_t D = 3;
    const FormalSeries g = FormalSeries::from_poly(P("1 : x1\n1 : x1 x1\n", m), D);
    const FormalSeries id = FormalSeries::from_poly(P("1 : x1\n", m), D);
    CHECK(series_distance({series_compose(id, {g})}, {g}) < 1e-15);
    const FormalSeries sq = FormalSeries::from_poly(P("1 : x1 x1\n", m), D);
    const NCPoly got = series_compose(sq, {g}).to_poly();
    CHECK(max_coeff_diff(got, P("1 : x1 x1\n2 : x1 x1 x1\n", m)) < 1e-15);
  }

  TEST_CASE("series composition agrees with explicit substitution") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
      const auto mode = t % 2 ? Involution::Transpose : Involution::None;
      const std::size_t g = 1 + t % 2, D = 4;
      const NCPoly f = random_ncpoly(g, 1 + t % 3, mode, rng);
      std::vector<NCPoly> gs;
      SeriesTuple gser;
      for (std::size_t k = 0; k < g; ++k) {
        NCPoly gk = random_ncpoly(g, 1 + (t + k) % 3, mode, rng);
        gk = gk - gk.homogeneous_part(0);
        gs.push_back(gk);
        gser.push_back(FormalSeries::from_poly(gk, D));
      }
      const NCPoly expect = substitute(f, gs, D);
      const NCPoly got = series_compose(FormalSeries::from_poly(f, D), gser).to_poly();
      CHECK(max_coeff_diff(got, expect) < 1e-12);
    }
  }

  TEST_CASE("series substitution respects the involution numerically") {
    const auto mode = Involution::Transpose;
    const std::size_t D = 4;
    const FormalSeries f = FormalSeries::from_poly(P("1 : x1*\n", mode), D);
    const NCPoly gp = P("1 : x1\n1 : x1 x1\n", mode);
    const NCPoly h = series_compose(f, {FormalSeries::from_poly(gp, D)}).to_poly();
    std::mt19937_64 rng(8);
    for (int t = 0; t < 5; ++t) {
      const MatTuple x = random_tuple(1, 2, Field::Real, rng);
      const Matrix expect = eval_ncpoly(gp, x).transpose();
      CHECK(distance(eval_ncpoly(h, x), expect) < 1e-12);
    }
  }
}
