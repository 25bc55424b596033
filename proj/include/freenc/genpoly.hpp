#pragma once
// Generalized polynomials: elements of M_n(F) * F<X>, i.e. sums of terms
// a_0 u_1 a_1 ... u_l a_l with n x n coefficient matrices a_i and letters u_i.

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

#include "freenc/matrix.hpp"
#include "freenc/word.hpp"

namespace freenc {

struct GenTerm {
  std::vector<Matrix> mats;     // letters.size() + 1 coefficient matrices
  std::vector<Letter> letters;

  std::size_t degree() const { return letters.size(); }
};

// e_{i_0 j_0} u_1 e_{i_1 j_1} ... u_l e_{i_l j_l}, indices 1-based.
struct BasisMonomial {
  std::vector<std::uint16_t> rows;  // I
  std::vector<std::uint16_t> cols;  // J
  Word letters;                     // K

  friend bool operator==(const BasisMonomial&, const BasisMonomial&) = default;
  friend auto operator<=>(const BasisMonomial& a, const BasisMonomial& b) {
    if (auto c = a.letters <=> b.letters; c != 0) return c;
    if (auto c = a.rows <=> b.rows; c != 0) return c;
    return a.cols <=> b.cols;
  }
};

using BasisExpansion = std::map<BasisMonomial, Complex>;

class GenPoly {
 public:
  GenPoly(std::size_t n, Involution mode) : n_(n), mode_(mode) {}

  std::size_t coeff_size() const { return n_; }
  Involution mode() const { return mode_; }
  const std::vector<GenTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int degree() const;

  // Validates sizes, matrix count and mode.
  void add_term(GenTerm t);

  GenPoly& operator+=(const GenPoly& q);
  GenPoly& operator*=(Complex s);
  friend GenPoly operator+(GenPoly p, const GenPoly& q) { return p += q; }
  friend GenPoly operator*(GenPoly p, Complex s) { return p *= s; }
  // (a x b)(c y d) = a x (bc) y d
  friend GenPoly operator*(const GenPoly& p, const GenPoly& q);

  GenPoly homogeneous_part(std::size_t m) const;

 private:
  void check_compatible(const GenPoly& q) const;

  std::size_t n_;
  Involution mode_;
  std::vector<GenTerm> terms_;
};

// Unique expansion over matrix units; exact zeros are dropped.
BasisExpansion genpoly_expand_basis(const GenPoly& p);
// Inverse of genpoly_expand_basis: one term per basis monomial.
GenPoly genpoly_from_basis(const BasisExpansion& e, std::size_t n, Involution mode);
// Largest coefficient difference of the two basis expansions.
double basis_distance(const BasisExpansion& a, const BasisExpansion& b);

}  // namespace freenc
