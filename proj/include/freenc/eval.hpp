#pragma once
// Evaluation of words, polynomials and trace polynomials on tuples of
// matrices, generic over the matrix type (Matrix or QMatrix).

#include <span>
#include <string>
#include <vector>

#include "freenc/error.hpp"
#include "freenc/ncpoly.hpp"
#include "freenc/tracepoly.hpp"

namespace freenc::detail {

// Letter images x_k and x_k^star, computed once per evaluation.
template <class M>
class LetterImages {
 public:
  LetterImages(std::span<const M> xs, std::size_t level) : xs_(xs), level_(level) {
    stars_.resize(xs.size());
    have_.assign(xs.size(), false);
  }

  std::size_t level() const { return level_; }

  const M& operator()(Letter l) {
    if (l.var < 1 || l.var > xs_.size())
      throw SizeError("letter x" + std::to_string(l.var) + " but tuple has " +
                      std::to_string(xs_.size()) + " components");
    const std::size_t k = l.var - 1u;
    if (!l.starred) return xs_[k];
    if (!have_[k]) {
      stars_[k] = xs_[k].star();
      have_[k] = true;
    }
    return stars_[k];
  }

 private:
  std::span<const M> xs_;
  std::size_t level_;
  std::vector<M> stars_;
  std::vector<bool> have_;
};

template <class M>
M eval_word(const Word& w, LetterImages<M>& img) {
  if (w.empty()) return M::identity(img.level());
  M acc = img(w[0]);
  for (std::size_t i = 1; i < w.degree(); ++i) acc = acc * img(w[i]);
  return acc;
}

// Consecutive words in graded-lex order share prefixes; products of the
// shared prefix are reused.
template <class M, class C, class Scale>
M eval_terms(const std::map<Word, C>& terms, LetterImages<M>& img, Scale scale_add) {
  const std::size_t n = img.level();
  M acc = M::zero(n);
  std::vector<M> prefix{M::identity(n)};
  const Word* prev = nullptr;
  for (const auto& [w, c] : terms) {
    std::size_t common = 0;
    if (prev != nullptr)
      while (common < w.degree() && common < prev->degree() && w[common] == (*prev)[common])
        ++common;
    prefix.resize(common + 1);
    for (std::size_t i = common; i < w.degree(); ++i) prefix.push_back(prefix.back() * img(w[i]));
    scale_add(acc, c, prefix.back());
    prev = &w;
  }
  return acc;
}

}  // namespace freenc::detail
