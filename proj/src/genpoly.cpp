#include "freenc/genpoly.hpp"

#include <algorithm>
#include <cmath>

#include "freenc/error.hpp"

namespace freenc {

int GenPoly::degree() const {
  int d = -1;
  for (const GenTerm& t : terms_) d = std::max(d, static_cast<int>(t.degree()));
  return d;
}

void GenPoly::add_term(GenTerm t) {
  if (t.mats.size() != t.letters.size() + 1)
    throw SizeError("generalized term needs one more matrix than letters");
  for (const Matrix& m : t.mats)
    if (m.size() != n_) throw SizeError("coefficient matrix size differs from n");
  if (mode_ == Involution::None)
    for (Letter l : t.letters)
      if (l.starred) throw ModeError("starred letter in involution-free generalized polynomial");
  terms_.push_back(std::move(t));
}

void GenPoly::check_compatible(const GenPoly& q) const {
  if (q.n_ != n_) throw SizeError("generalized polynomials over different coefficient sizes");
  if (q.mode_ != mode_) throw ModeError("mode mismatch between generalized polynomials");
}

GenPoly& GenPoly::operator+=(const GenPoly& q) {
  check_compatible(q);
  terms_.insert(terms_.end(), q.terms_.begin(), q.terms_.end());
  return *this;
}

GenPoly& GenPoly::operator*=(Complex s) {
  for (GenTerm& t : terms_) t.mats.front() *= s;
  return *this;
}

GenPoly operator*(const GenPoly& p, const GenPoly& q) {
  p.check_compatible(q);
  GenPoly out(p.n_, p.mode_);
  for (const GenTerm& a : p.terms_)
    for (const GenTerm& b : q.terms_) {
      GenTerm t;
      t.mats.assign(a.mats.begin(), a.mats.end() - 1);
      t.mats.push_back(a.mats.back() * b.mats.front());
      t.mats.insert(t.mats.end(), b.mats.begin() + 1, b.mats.end());
      t.letters = a.letters;
      t.letters.insert(t.letters.end(), b.letters.begin(), b.letters.end());
      out.terms_.push_back(std::move(t));
    }
  return out;
}

GenPoly GenPoly::homogeneous_part(std::size_t m) const {
  GenPoly out(n_, mode_);
  for (const GenTerm& t : terms_)
    if (t.degree() == m) out.terms_.push_back(t);
  return out;
}

namespace {

struct Entry {
  std::uint16_t i, j;
  Complex v;
};

std::vector<Entry> nonzero_entries(const Matrix& a) {
  std::vector<Entry> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      const Complex v = a(i, j);
      if (v != Complex(0.0))
        out.push_back({static_cast<std::uint16_t>(i + 1), static_cast<std::uint16_t>(j + 1), v});
    }
  return out;
}

// Odometer step over the per-slot entry lists; false once exhausted.
bool advance(std::vector<std::size_t>& pick, const std::vector<std::vector<Entry>>& entries) {
  for (std::size_t k = entries.size(); k-- > 0;) {
    if (++pick[k] < entries[k].size()) return true;
    pick[k] = 0;
  }
  return false;
}

}  // namespace

BasisExpansion genpoly_expand_basis(const GenPoly& p) {
  BasisExpansion out;
  for (const GenTerm& t : p.terms()) {
    std::vector<std::vector<Entry>> entries;
    entries.reserve(t.mats.size());
    for (const Matrix& m : t.mats) entries.push_back(nonzero_entries(m));
    if (std::any_of(entries.begin(), entries.end(), [](const auto& e) { return e.empty(); }))
      continue;
    const Word letters(t.letters);
    std::vector<std::size_t> pick(entries.size(), 0);
    for (;;) {
      BasisMonomial key{{}, {}, letters};
      Complex c = 1.0;
      for (std::size_t k = 0; k < entries.size(); ++k) {
        const Entry& e = entries[k][pick[k]];
        key.rows.push_back(e.i);
        key.cols.push_back(e.j);
        c *= e.v;
      }
      auto [it, inserted] = out.try_emplace(std::move(key), c);
      if (!inserted) {
        it->second += c;
        if (it->second == Complex(0.0)) out.erase(it);
      }
      if (!advance(pick, entries)) break;
    }
  }
  return out;
}

GenPoly genpoly_from_basis(const BasisExpansion& e, std::size_t n, Involution mode) {
  GenPoly out(n, mode);
  for (const auto& [key, c] : e) {
    GenTerm t;
    for (std::size_t k = 0; k < key.rows.size(); ++k)
      t.mats.push_back(Matrix::unit(n, key.rows[k], key.cols[k]));
    t.mats.front() *= c;
    t.letters = key.letters.letters();
    out.add_term(std::move(t));
  }
  return out;
}

double basis_distance(const BasisExpansion& a, const BasisExpansion& b) {
  double worst = 0.0;
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    worst = std::max(worst, std::abs(v - (it == b.end() ? Complex(0.0) : it->second)));
  }
  for (const auto& [k, v] : b)
    if (a.find(k) == a.end()) worst = std::max(worst, std::abs(v));
  return worst;
}

}  // namespace freenc
