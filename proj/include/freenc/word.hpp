#pragma once
// Words in the letters x_k and x_k^t (x_k^* over the complex field).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace freenc {

// Symbolic involution of the algebra. Transpose: real field, x^t.
// Adjoint: complex field, x^*, coefficients are conjugated.
enum class Involution { None, Transpose, Adjoint };

inline bool has_involution(Involution m) { return m != Involution::None; }
std::string to_string(Involution m);

struct Letter {
  std::uint16_t var = 1;  // 1-based variable index
  bool starred = false;

  // Order x_1 < x_1^t < x_2 < x_2^t < ...
  constexpr std::uint32_t code() const { return 2u * (var - 1u) + (starred ? 1u : 0u); }
  static constexpr Letter from_code(std::uint32_t c) {
    return Letter{static_cast<std::uint16_t>(c / 2 + 1), (c % 2) == 1};
  }
  constexpr Letter star() const { return Letter{var, !starred}; }

  friend constexpr bool operator==(Letter a, Letter b) { return a.code() == b.code(); }
  friend constexpr auto operator<=>(Letter a, Letter b) { return a.code() <=> b.code(); }
};

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}

  static Word unit() { return {}; }
  static Word letter(std::uint16_t var, bool starred = false) { return Word{Letter{var, starred}}; }

  std::size_t degree() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  bool has_starred() const;
  std::uint16_t max_var() const;

  Word operator*(const Word& rhs) const;
  Word rotated(std::size_t shift) const;

  friend bool operator==(const Word&, const Word&) = default;
  // Graded lexicographic: shorter words first, then letterwise.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  std::vector<Letter> letters_;
};

// Reversal with every starred flag flipped. Throws ModeError if `mode` is
// None and w contains starred letters.
Word word_involution(const Word& w, Involution mode = Involution::Transpose);

// Least rotation of w; with star_mode, least over rotations of w and of
// word_involution(w).
Word cyclic_canonical(const Word& w, bool star_mode);

// All words of the given degree over `vars` variables, graded-lex order.
// With involution every variable contributes x_k and x_k^t.
std::vector<Word> enumerate_words(std::size_t degree, std::size_t vars, bool with_involution);

// "1" for the unit word, otherwise space-separated "x<k>" / "x<k>*".
std::string to_string(const Word& w);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace freenc
