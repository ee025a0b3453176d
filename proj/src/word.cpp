#include "nctrace/word.hpp"

#include <algorithm>

#include "nctrace/errors.hpp"

namespace nctrace {

namespace {

Word::Letter checked_letter(int letter) {
  if (letter < 1 || letter > Word::kMaxLetter) {
    throw Error(ErrorCode::InvalidArgument,
                "word letter " + std::to_string(letter) + " outside 1.." +
                    std::to_string(Word::kMaxLetter));
  }
  return static_cast<Word::Letter>(letter);
}

}  // namespace

Word::Word(std::initializer_list<int> letters) {
  letters_.reserve(letters.size());
  for (int l : letters) letters_.push_back(checked_letter(l));
}

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
  for (Letter l : letters_) checked_letter(l);
}

void Word::push_back(int letter) { letters_.push_back(checked_letter(letter)); }

Word::Letter Word::max_letter() const noexcept {
  return letters_.empty() ? 0 : *std::max_element(letters_.begin(), letters_.end());
}

std::string Word::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(letters_[i]);
  }
  out += ')';
  return out;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto l : w) {
    h ^= l;
    h *= 1099511628211ull;
  }
  return h ^ w.size();
}

Word involute_word(const Word& word) {
  return Word(std::vector<Word::Letter>(word.letters().rbegin(), word.letters().rend()));
}

Word concat(const Word& first, const Word& second) {
  std::vector<Word::Letter> letters;
  letters.reserve(first.size() + second.size());
  letters.insert(letters.end(), first.begin(), first.end());
  letters.insert(letters.end(), second.begin(), second.end());
  return Word(std::move(letters));
}

Word rotate(const Word& word, std::size_t shift) {
  if (word.empty()) return word;
  std::vector<Word::Letter> letters = word.letters();
  std::rotate(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(shift % letters.size()),
              letters.end());
  return Word(std::move(letters));
}

std::size_t least_rotation(std::span<const Word::Letter> s) {
  const std::size_t n = s.size();
  if (n < 2) return 0;
  // Failure function over the doubled string.
  std::vector<std::ptrdiff_t> f(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    const auto sj = s[j % n];
    std::ptrdiff_t i = f[j - k - 1];
    while (i != -1 && sj != s[(k + static_cast<std::size_t>(i) + 1) % n]) {
      if (sj < s[(k + static_cast<std::size_t>(i) + 1) % n]) k = j - static_cast<std::size_t>(i) - 1;
      i = f[static_cast<std::size_t>(i)];
    }
    if (i == -1 && sj != s[k % n]) {
      if (sj < s[k % n]) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return k % n;
}

CyclicClass cyclic_canonical(const Word& word) {
  return CyclicClass{rotate(word, least_rotation(word.letters()))};
}

std::size_t word_count(int nvars, int max_len) {
  if (max_len < 0) return 0;
  std::size_t total = 0, layer = 1;
  for (int len = 0; len <= max_len; ++len) {
    total += layer;
    layer *= static_cast<std::size_t>(nvars);
  }
  return total;
}

std::size_t word_index(const Word& word, int nvars) {
  std::size_t offset = word_count(nvars, static_cast<int>(word.size()) - 1);
  std::size_t rank = 0;
  for (auto l : word) rank = rank * static_cast<std::size_t>(nvars) + (l - 1u);
  return offset + rank;
}

std::vector<Word> words_up_to(int nvars, int max_len) {
  if (nvars < 1) throw Error(ErrorCode::InvalidArgument, "nvars must be positive");
  std::vector<Word> out;
  out.reserve(word_count(nvars, max_len));
  if (max_len < 0) return out;
  out.emplace_back();
  std::size_t layer_begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    const std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (int l = 1; l <= nvars; ++l) {
        Word w = out[i];
        w.push_back(l);
        out.push_back(std::move(w));
      }
    }
    layer_begin = layer_end;
  }
  return out;
}

Word power_word(int letter, int length) {
  Word w;
  for (int i = 0; i < length; ++i) w.push_back(letter);
  return w;
}

}  // namespace nctrace
