#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace nctrace {

// A finite sequence of variable indices (1-based); the empty word is the unit
// monomial. Words order by length first, then lexicographically by letter.
class Word {
 public:
  using Letter = std::uint8_t;
  static constexpr int kMaxLetter = 255;

  Word() = default;
  Word(std::initializer_list<int> letters);
  explicit Word(std::vector<Letter> letters);

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }
  const std::vector<Letter>& letters() const noexcept { return letters_; }

  void push_back(int letter);
  Letter max_letter() const noexcept;

  // "(1,2,3)"; the empty word prints as "()".
  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  std::vector<Letter> letters_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

// I -> I^op
Word involute_word(const Word& word);

// J followed by K.
Word concat(const Word& first, const Word& second);

// Left rotation: rotate((a,b,c), 1) = (b,c,a).
Word rotate(const Word& word, std::size_t shift);

// Start index of the lexicographically least rotation (Booth's algorithm, O(n)).
std::size_t least_rotation(std::span<const Word::Letter> letters);

struct CyclicClass {
  Word representative;

  friend bool operator==(const CyclicClass&, const CyclicClass&) = default;
  friend auto operator<=>(const CyclicClass& a, const CyclicClass& b) {
    return a.representative <=> b.representative;
  }
};

CyclicClass cyclic_canonical(const Word& word);

// Number of words of length <= max_len over nvars letters.
std::size_t word_count(int nvars, int max_len);

// Position of `word` in the degree-then-lexicographic enumeration.
std::size_t word_index(const Word& word, int nvars);

// All words of length <= max_len in degree-then-lexicographic order. This is
// the basis order shared by moment matrices, Gram problems and GNS models.
std::vector<Word> words_up_to(int nvars, int max_len);

// The word (j, j, ..., j) of the given length.
Word power_word(int letter, int length);

}  // namespace nctrace
