#include <doctest.h>

#include "freenc/demo.hpp"
#include "freenc/textio.hpp"

using namespace freenc;

namespace {

Involution random_mode(Rng& rng) {
  switch (rng() % 3) {
    case 0:
      return Involution::None;
    case 1:
      return Involution::Transpose;
    default:
      return Involution::Adjoint;
  }
}

NCPoly random_complex_poly(Rng& rng, Involution mode) {
  NCPoly p = random_ncpoly(1 + rng() % 3, rng() % 5, mode, rng);
  if (mode == Involution::Adjoint) p *= Complex(0.5, -1.25);
  return p;
}

Word random_word(std::size_t len, Involution mode, Rng& rng) {
  std::vector<Letter> ls;
  for (std::size_t i = 0; i < len; ++i)
    ls.push_back(Letter{static_cast<std::uint16_t>(1 + rng() % 3), has_involution(mode) && rng() % 2 == 1});
  return Word(ls);
}

}  // namespace

TEST_SUITE("textio") {
  TEST_CASE("complex scalars") {
    CHECK(textio::parse_complex("1.5") == Complex(1.5, 0));
    CHECK(textio::parse_complex("0.5+2i") == Complex(0.5, 2));
    CHECK(textio::parse_complex("3-1e-2i") == Complex(3, -0.01));
    CHECK(textio::parse_complex("2i") == Complex(0, 2));
    CHECK(textio::parse_complex("-i") == Complex(0, -1));
    CHECK_THROWS(textio::parse_complex("abc"));
  }

  TEST_CASE("NCPOLY1 round trip") {
    Rng rng(51);
    for (int t = 0; t < 100; ++t) {
      const NCPoly p = random_complex_poly(rng, random_mode(rng));
      const NCPoly q = textio::ncpoly_from_string(textio::write_ncpoly(p));
      CHECK(q == p);
      CHECK(q.mode() == p.mode());
    }
    const std::vector<NCPoly> tup{textio::ncpoly_from_string("NCPOLY1\n1 : x1\n"),
                                  textio::ncpoly_from_string("NCPOLY1\n-2 : x2 x1\n3 : 1\n")};
    CHECK(textio::ncpoly_tuple_from_string(textio::write_ncpoly_tuple(tup)) == tup);
  }

  TEST_CASE("TRPOLY1 round trip") {
    Rng rng(52);
    std::normal_distribution<double> nd;
    for (int t = 0; t < 100; ++t) {
      const Involution mode = random_mode(rng);
      TracePoly p(mode);
      for (int k = 0; k < 1 + t % 4; ++k) {
        std::vector<Word> traces;
        for (std::size_t j = 0; j < rng() % 3; ++j) traces.push_back(random_word(1 + rng() % 3, mode, rng));
        p.add_term(TraceMonomial::make(traces, random_word(rng() % 3, mode, rng), mode), Complex(nd(rng), 0));
      }
      CHECK(textio::tracepoly_from_string(textio::write_tracepoly(p)) == p);
    }
  }

  TEST_CASE("GENPOLY1 round trip") {
    Rng rng(53);
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = 1 + t % 3;
      const Involution mode = t % 2 ? Involution::Transpose : Involution::None;
      const Field field = t % 5 == 0 ? Field::Complex : Field::Real;
      GenPoly p(n, mode);
      for (int k = 0; k < 1 + t % 3; ++k) {
        GenTerm term;
        const Word w = random_word(k, mode, rng);
        term.letters = w.letters();
        for (std::size_t j = 0; j <= term.letters.size(); ++j) term.mats.push_back(random_gaussian(n, field, rng));
        p.add_term(term);
      }
      const GenPoly q = textio::genpoly_from_string(textio::write_genpoly(p));
      REQUIRE(q.terms().size() == p.terms().size());
      for (std::size_t i = 0; i < p.terms().size(); ++i) {
        CHECK(q.terms()[i].letters == p.terms()[i].letters);
        for (std::size_t j = 0; j < p.terms()[i].mats.size(); ++j)
          CHECK(q.terms()[i].mats[j] == p.terms()[i].mats[j]);
      }
    }
  }

  TEST_CASE("MTX1 round trip") {
    Rng rng(54);
    for (int t = 0; t < 100; ++t) {
      const Field field = t % 2 ? Field::Complex : Field::Real;
      const MatTuple x = random_tuple(1 + t % 3, 1 + t % 4, field, rng);
      const MatTuple y = textio::mattuple_from_string(textio::write_mattuple(x));
      REQUIRE(y.arity() == x.arity());
      CHECK(y.field() == x.field());
      for (std::size_t k = 0; k < x.arity(); ++k) CHECK(y[k] == x[k]);
    }
  }

  TEST_CASE("parse errors carry line and column") {
    try {
      textio::ncpoly_from_string("NCPOLY1\n1 : x1\n2 : x1 y2\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(e.column() > 1);
    }
    CHECK_THROWS_AS(textio::mattuple_from_string("MTX1 n=2 g=1 field=real\n1 2\n3\n"), ParseError);
    CHECK_THROWS_AS(textio::ncpoly_from_string("NCPOLY2\n"), ParseError);
    CHECK_THROWS_AS(textio::ncpoly_from_string("NCPOLY1 mode=free\n1 : x1*\n"), Error);
  }

  TEST_CASE("comments and blank lines") {
    const NCPoly p = textio::ncpoly_from_string("# header comment\nNCPOLY1\n\n# term\n2 : x1 x2\n");
    CHECK(p.coeff(textio::parse_word("x1 x2")) == Complex(2));
  }
}
