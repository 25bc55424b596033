#include "freenc/word.hpp"

#include <algorithm>

#include "freenc/error.hpp"

namespace freenc {

std::string to_string(Involution m) {
  switch (m) {
    case Involution::None:
      return "free";
    case Involution::Transpose:
      return "transpose";
    case Involution::Adjoint:
      return "adjoint";
  }
  return "?";
}

bool Word::has_starred() const {
  return std::any_of(letters_.begin(), letters_.end(), [](Letter l) { return l.starred; });
}

std::uint16_t Word::max_var() const {
  std::uint16_t m = 0;
  for (Letter l : letters_) m = std::max(m, l.var);
  return m;
}

Word Word::operator*(const Word& rhs) const {
  std::vector<Letter> out;
  out.reserve(letters_.size() + rhs.letters_.size());
  out.insert(out.end(), letters_.begin(), letters_.end());
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return Word(std::move(out));
}

Word Word::rotated(std::size_t shift) const {
  if (letters_.empty()) return *this;
  std::vector<Letter> out(letters_);
  std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(shift % out.size()), out.end());
  return Word(std::move(out));
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                b.letters_.begin(), b.letters_.end());
}

Word word_involution(const Word& w, Involution mode) {
  if (mode == Involution::None && w.has_starred())
    throw ModeError("starred letter in involution-free word " + to_string(w));
  std::vector<Letter> out;
  out.reserve(w.degree());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) out.push_back(it->star());
  return Word(std::move(out));
}

Word cyclic_canonical(const Word& w, bool star_mode) {
  Word best = w;
  for (std::size_t r = 1; r < w.degree(); ++r) best = std::min(best, w.rotated(r));
  if (star_mode) {
    const Word inv = word_involution(w);
    for (std::size_t r = 0; r < std::max<std::size_t>(inv.degree(), 1); ++r)
      best = std::min(best, inv.rotated(r));
  }
  return best;
}

std::vector<Word> enumerate_words(std::size_t degree, std::size_t vars, bool with_involution) {
  const std::size_t alphabet = with_involution ? 2 * vars : vars;
  std::vector<Word> out;
  if (alphabet == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  std::vector<std::size_t> digits(degree, 0);
  for (;;) {
    std::vector<Letter> letters;
    letters.reserve(degree);
    for (std::size_t d : digits) {
      if (with_involution)
        letters.push_back(Letter::from_code(static_cast<std::uint32_t>(d)));
      else
        letters.push_back(Letter{static_cast<std::uint16_t>(d + 1), false});
    }
    out.emplace_back(std::move(letters));
    std::size_t pos = degree;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < alphabet) break;
      digits[pos] = 0;
      if (pos == 0) return out;
    }
    if (degree == 0) return out;
  }
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.degree(); ++i) {
    if (i) s += ' ';
    s += 'x';
    s += std::to_string(w[i].var);
    if (w[i].starred) s += '*';
  }
  return s;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Letter l : w) {
    h ^= l.code() + 1;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace freenc
