#include <Eigen/Dense>
#include <cmath>

#include "freenc/error.hpp"
#include "freenc/linalg.hpp"
#include "freenc/recon.hpp"

namespace freenc {

namespace {

std::vector<Letter> letter_alphabet(std::size_t g, bool with_involution) {
  std::vector<Letter> out;
  for (std::size_t k = 1; k <= g; ++k) {
    out.push_back(Letter{static_cast<std::uint16_t>(k), false});
    if (with_involution) out.push_back(Letter{static_cast<std::uint16_t>(k), true});
  }
  return out;
}

// Mixed-radix counter over `digits` positions with base `base`.
bool advance(std::vector<std::size_t>& idx, std::size_t base) {
  for (std::size_t p = idx.size(); p-- > 0;) {
    if (++idx[p] < base) return true;
    idx[p] = 0;
  }
  return false;
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

SubspaceBasis coefficient_algebra(const MatTuple& a, Group group) {
  if (group == Group::GL) return centralizer(centralizer(generated_algebra(a, false)));
  return generated_algebra(a, true);
}

GenExpansion expand_at_point(const FreeMapOracle& f, const MatTuple& a, std::size_t D, std::size_t s_eval,
                             const ExpandOptions& opts) {
  const std::size_t n = a.level();
  const std::size_t g = f.arity();
  if (a.arity() != g) throw SizeError("expand_at_point: centre arity differs from the oracle");
  if (D > expand_max_degree) throw CapacityError("expand_at_point: degree above " + std::to_string(expand_max_degree));
  if (n > expand_max_level) throw CapacityError("expand_at_point: level above " + std::to_string(expand_max_level));
  if (s_eval <= D) throw DomainError("expand_at_point: s_eval must exceed the degree bound");

  GenExpansion e;
  e.center = a;
  e.group = f.group();
  e.mode = extraction_mode(f);
  e.s_eval = s_eval;
  e.coeff_basis = coefficient_algebra(a, f.group());
  const std::size_t dim = e.coeff_basis.dim();
  if (dim > expand_max_dim)
    throw CapacityError("expand_at_point: coefficient algebra of dimension " + std::to_string(dim) +
                        " exceeds " + std::to_string(expand_max_dim));
  const auto alphabet = letter_alphabet(g, has_involution(e.mode));
  const std::size_t L = alphabet.size();
  std::size_t max_unknowns = 0;
  for (std::size_t m = 0; m <= D; ++m) max_unknowns = std::max(max_unknowns, ipow(dim, m + 1) * ipow(L, m));
  if (max_unknowns > expand_max_unknowns)
    throw CapacityError("expand_at_point: " + std::to_string(max_unknowns) + " unknowns exceed " +
                        std::to_string(expand_max_unknowns));

  // Samples of the homogeneous parts of H -> f(A (x) I_s + H) at level n s.
  const std::size_t N = n * s_eval;
  const Field field = f.group() == Group::U ? Field::Complex : join(f.field(), a.field());
  std::vector<Matrix> centre_mats;
  for (const Matrix& ak : a) centre_mats.push_back(kron(ak, Matrix::identity(s_eval)));
  const MatTuple centre(std::move(centre_mats));
  const std::size_t samples = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil(opts.oversample * static_cast<double>(max_unknowns) /
                                            static_cast<double>(N * N))));
  Rng rng(opts.seed);
  std::vector<MatTuple> hs;
  std::vector<std::vector<MatTuple>> parts;  // parts[sample][m]
  for (std::size_t k = 0; k < samples; ++k) {
    MatTuple h = random_tuple(g, N, field, rng);
    h = h * Complex(1.0 / std::max(1e-300, norm(h)));
    parts.push_back(homogeneous_parts(f, h, D, opts.interp, &centre));
    hs.push_back(std::move(h));
  }

  std::vector<Matrix> lifted;  // b_i (x) I_s
  for (const Matrix& b : e.coeff_basis.basis) lifted.push_back(kron(b, Matrix::identity(s_eval)));
  const std::size_t go = f.out_arity();

  for (std::size_t m = 0; m <= D; ++m) {
    const std::size_t unknowns = ipow(dim, m + 1) * ipow(L, m);
    const std::size_t rows = samples * N * N;
    Eigen::MatrixXcd design(rows, unknowns);
    Eigen::MatrixXcd rhs(rows, go);
    // Unknown layout: letter sequence major, basis sequence minor.
    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> layout;
    {
      std::vector<std::size_t> li(m, 0);
      do {
        std::vector<std::size_t> bi(m + 1, 0);
        do layout.emplace_back(li, bi);
        while (advance(bi, dim));
      } while (advance(li, L));
    }
    for (std::size_t k = 0; k < samples; ++k) {
      std::vector<Matrix> images;  // letter images at H
      for (const Letter& l : alphabet) {
        const Matrix& hk = hs[k][l.var - 1u];
        images.push_back(l.starred ? hk.star() : hk);
      }
      for (std::size_t u = 0; u < unknowns; ++u) {
        const auto& [li, bi] = layout[u];
        Matrix mono = lifted[bi[0]];
        for (std::size_t p = 0; p < m; ++p) mono = mono * images[li[p]] * lifted[bi[p + 1]];
        for (std::size_t i = 0; i < N; ++i)
          for (std::size_t j = 0; j < N; ++j) design(k * N * N + i * N + j, u) = mono(i, j);
      }
      for (std::size_t o = 0; o < go; ++o)
        for (std::size_t i = 0; i < N; ++i)
          for (std::size_t j = 0; j < N; ++j) rhs(k * N * N + i * N + j, o) = parts[k][m][o](i, j);
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod;
    cod.setThreshold(opts.rank_cutoff);
    cod.compute(design);
    const Eigen::MatrixXcd sol = cod.solve(rhs);
    const double resid = (design * sol - rhs).norm() / std::max(1.0, rhs.norm());
    e.residuals.push_back(resid);
    e.nullity.push_back(unknowns - static_cast<std::size_t>(cod.rank()));
    if (!(resid <= opts.tol)) e.flagged.push_back(m);

    std::vector<GenPoly> out(go, GenPoly(n, e.mode));
    for (std::size_t o = 0; o < go; ++o)
      for (std::size_t u = 0; u < unknowns; ++u) {
        Complex c = sol(u, o);
        if (field == Field::Real) c = {c.real(), 0.0};
        if (std::abs(c) <= opts.cleanup) continue;
        const auto& [li, bi] = layout[u];
        GenTerm t;
        for (std::size_t p = 0; p <= m; ++p) t.mats.push_back(e.coeff_basis.basis[bi[p]]);
        t.mats[0] *= c;
        for (std::size_t p = 0; p < m; ++p) t.letters.push_back(alphabet[li[p]]);
        out[o].add_term(std::move(t));
      }
    e.parts.push_back(std::move(out));
  }
  return e;
}

MatTuple eval_expansion(const GenExpansion& e, const MatTuple& h) {
  const std::size_t go = e.parts.empty() ? 0 : e.parts.front().size();
  std::vector<Matrix> out(go, Matrix::zero(h.level()));
  for (const auto& part : e.parts)
    for (std::size_t o = 0; o < go; ++o) out[o] += eval_genpoly(part[o], h);
  return MatTuple(std::move(out));
}

}  // namespace freenc
