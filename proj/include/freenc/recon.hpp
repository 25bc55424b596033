#pragma once
// Reconstruction of free maps from evaluations.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "freenc/oracle.hpp"
#include "freenc/series.hpp"

namespace freenc {

// ---- homogeneous parts -----------------------------------------------------

struct InterpolationOptions {
  double h = 0.0;              // <= 0: automatic
  std::size_t fit_degree = 0;  // 0: automatic
};

// Fit degree used for an oracle and degree bound D.
std::size_t interpolation_degree(const FreeMapOracle& f, std::size_t D, const InterpolationOptions& opts);

// Coefficients of t^0..t^D of t -> f(c + t X), from a Chebyshev fit in t on
// [-h, h]. c defaults to 0.
std::vector<MatTuple> homogeneous_parts(const FreeMapOracle& f, const MatTuple& x, std::size_t D,
                                        const InterpolationOptions& opts = {},
                                        const MatTuple* center = nullptr);
MatTuple homogeneous_part_eval(const FreeMapOracle& f, std::size_t m, const MatTuple& x, std::size_t D,
                               const InterpolationOptions& opts = {});

// ---- matenote extraction ---------------------------------------------------

// Shift-unit tuple for the word w: letter p of w contributes e_{p,p+1} to
// a_k when it is x_k and e_{p+1,p} when it is x_k^t. level defaults to
// deg w + 1.
struct MatenotePlan {
  Word word;
  std::size_t level = 0;
  MatTuple tuple;
};
MatenotePlan matenote_plan(const Word& w, std::size_t g, std::size_t level = 0);
std::vector<QMatrix> matenote_plan_exact(const Word& w, std::size_t g, std::size_t level = 0);

using HomogeneousEvaluator = std::function<MatTuple(const MatTuple&)>;
using ExactEvaluator = std::function<std::vector<QMatrix>(std::span<const QMatrix>)>;

struct MatenoteOptions {
  std::size_t level = 0;  // 0: m + 1
  double cleanup = 1e-9;
};

// Coefficient of every degree-m word read at entry (1, m+1), one polynomial
// per output component.
std::vector<NCPoly> matenote_extract(const HomogeneousEvaluator& f_hom, std::size_t m, std::size_t g,
                                     std::size_t g_out, Involution mode, const MatenoteOptions& opts = {});
std::vector<QNCPoly> matenote_extract_exact(const ExactEvaluator& f_hom, std::size_t m, std::size_t g,
                                            std::size_t g_out, Involution mode, std::size_t level = 0);

// Involution mode matching the symmetry group of an oracle.
Involution extraction_mode(const FreeMapOracle& f);

// ---- Taylor series at 0 ----------------------------------------------------

struct DegreeReport {
  std::size_t degree = 0;
  std::size_t level = 0;
  double residual = 0.0;
};

struct TaylorOptions {
  double tol = 1e-8;
  InterpolationOptions interp;
  MatenoteOptions matenote;
  bool check_levels = true;  // re-extract at level m + 2
  std::size_t residual_samples = 10;
  double residual_radius = 0.1;
  std::uint64_t seed = 0;
};

struct TaylorResult {
  std::vector<FormalSeries> series;         // one per output component
  std::vector<DegreeReport> level_checks;   // level m+1 vs m+2 coefficient gaps
  std::vector<std::size_t> flagged;         // degrees with inconsistent levels
  double residual = 0.0;                    // max ||f(X) - sum f_m(X)|| on samples
};

TaylorResult taylor_at_zero(const FreeMapOracle& f, std::size_t D, const TaylorOptions& opts = {});

// ---- polynomial reconstruction with certificate ----------------------------

struct ReconOptions {
  double tol = 1e-8;
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  InterpolationOptions interp;
};

struct ReconResult {
  std::vector<NCPoly> polys;
  std::vector<DegreeReport> certificate;  // per level d+1, d+2
  double max_residual = 0.0;
  bool passed = false;
  std::optional<Witness> witness;
  std::optional<CheckReport> direct_sums;  // run when the certificate fails
};

ReconResult reconstruct_polynomial(const FreeMapOracle& f, std::size_t d, const ReconOptions& opts = {});

// ---- expansion at a non-scalar point ---------------------------------------

struct ExpandOptions {
  double tol = 1e-6;
  std::uint64_t seed = 0;
  double oversample = 2.0;
  double rank_cutoff = 1e-10;
  double cleanup = 1e-10;
  InterpolationOptions interp;
};

inline constexpr std::size_t expand_max_degree = 3;
inline constexpr std::size_t expand_max_level = 3;
inline constexpr std::size_t expand_max_dim = 4;
inline constexpr std::size_t expand_max_unknowns = 4096;

struct GenExpansion {
  MatTuple center;
  Group group = Group::GL;
  Involution mode = Involution::None;
  std::size_t s_eval = 0;
  SubspaceBasis coeff_basis;
  std::vector<std::vector<GenPoly>> parts;  // parts[m][output]
  std::vector<double> residuals;            // relative least-squares residual per degree
  std::vector<std::size_t> nullity;         // null-space dimension per degree
  std::vector<std::size_t> flagged;         // degrees with residual above tol

  bool ok() const { return flagged.empty(); }
};

// Coefficient algebra: C(C(F<A>)) for GL, F<A, A^*> for O and U.
SubspaceBasis coefficient_algebra(const MatTuple& a, Group group);

GenExpansion expand_at_point(const FreeMapOracle& f, const MatTuple& a, std::size_t D, std::size_t s_eval,
                             const ExpandOptions& opts = {});
// sum_m f_m(H) for H at level n*s.
MatTuple eval_expansion(const GenExpansion& e, const MatTuple& h);

// ---- identity testing ------------------------------------------------------

inline constexpr std::size_t standard_polynomial_max_k = 4;
// S_2k expanded over all (2k)! permutations.
NCPoly standard_polynomial(std::size_t k);

struct IdentityOptions {
  std::size_t trials = 25;
  std::uint64_t seed = 0;
  bool exact = false;
  double tol = 1e-8;     // numeric mode, relative to a term-magnitude bound
  int entry_range = 3;   // exact mode samples integers in [-r, r]
};

struct IdentityVerdict {
  bool identity = true;
  std::size_t trials = 0;
  double max_residual = 0.0;
  std::optional<MatTuple> witness;
};

IdentityVerdict is_identity(const NCPoly& p, std::size_t n, const IdentityOptions& opts = {});
IdentityVerdict is_identity(const TracePoly& p, std::size_t n, const IdentityOptions& opts = {});
// S_2k on M_n without expanding the permutation sum.
IdentityVerdict is_standard_identity(std::size_t k, std::size_t n, const IdentityOptions& opts = {});

}  // namespace freenc
