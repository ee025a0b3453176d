#include "nctrace/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "nctrace/errors.hpp"

namespace nctrace {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

class PolyParser {
 public:
  PolyParser(std::string_view text, int nvars) : text_(text), nvars_(nvars) {}

  NCPoly parse() {
    NCPoly result(nvars_);
    skip_space();
    if (at_end()) fail(pos_, "empty input");

    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      ++pos_;
    }
    add(result, negate);
    for (;;) {
      skip_space();
      if (at_end()) break;
      const char c = peek();
      if (c == '+' || c == '-') {
        ++pos_;
        add(result, c == '-');
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c))) fail(pos_, std::string("unknown variable '") + c + "'");
      fail(pos_, std::string("unexpected character '") + c + "'");
    }
    return result;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  [[noreturn]] static void fail(std::size_t offset, const std::string& message) {
    throw ParseError(offset, message);
  }

  // Whitespace, plus whole lines whose first non-blank character is '#'.
  void skip_space() {
    while (!at_end()) {
      const char c = peek();
      if (c == '\n') {
        line_start_ = true;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else if (c == '#' && line_start_) {
        while (!at_end() && peek() != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  // Any non-blank token clears the line-start flag.
  void consume(std::size_t n = 1) {
    pos_ += n;
    line_start_ = false;
  }

  void add(NCPoly& result, bool negate) {
    skip_space();
    if (at_end()) fail(pos_, "expected a term");
    const auto [coeff, word] = parse_term();
    result.add_term(word, negate ? -coeff : coeff);
  }

  std::pair<cplx, Word> parse_term() {
    const char c = peek();
    if (c == '(' || c == '.' || is_digit(c) || c == '+' || c == '-') {
      const cplx coeff = parse_coeff();
      skip_space();
      if (peek() == '*') {
        consume();
        skip_space();
        return {coeff, parse_word()};
      }
      return {coeff, Word{}};
    }
    if (c == 'Y') return {cplx{1.0, 0.0}, parse_word()};
    if (std::isalpha(static_cast<unsigned char>(c))) fail(pos_, std::string("unknown variable '") + c + "'");
    fail(pos_, std::string("expected a term, found '") + c + "'");
  }

  cplx parse_coeff() {
    if (peek() != '(') return {parse_decimal(), 0.0};
    consume();
    skip_space();
    const double re = parse_decimal();
    skip_space();
    if (peek() != ',') fail(pos_, "malformed coefficient: expected ','");
    consume();
    skip_space();
    const double im = parse_decimal();
    skip_space();
    if (peek() != ')') fail(pos_, "malformed coefficient: expected ')'");
    consume();
    return {re, im};
  }

  double parse_decimal() {
    const std::size_t start = pos_;
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      consume();
    }
    const std::size_t body = pos_;
    std::size_t digits = 0;
    while (is_digit(peek())) consume(), ++digits;
    if (peek() == '.') {
      consume();
      while (is_digit(peek())) consume(), ++digits;
    }
    if (digits == 0) fail(start, "malformed coefficient");
    if (peek() == 'e' || peek() == 'E') {
      std::size_t save = pos_;
      consume();
      if (peek() == '+' || peek() == '-') consume();
      if (!is_digit(peek())) fail(save, "malformed coefficient exponent");
      while (is_digit(peek())) consume();
    }
    double value = 0.0;
    const char* first = text_.data() + body;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) fail(start, "malformed coefficient");
    return negative ? -value : value;
  }

  Word parse_word() {
    const std::size_t start = pos_;
    if (peek() == '1' && !is_digit(pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0')) {
      consume();
      return Word{};
    }
    if (peek() != 'Y') {
      if (std::isalpha(static_cast<unsigned char>(peek()))) {
        fail(pos_, std::string("unknown variable '") + peek() + "'");
      }
      fail(pos_, "expected a word");
    }
    std::vector<Word::Letter> letters;
    for (;;) {
      skip_space();
      if (peek() != 'Y') break;
      const std::size_t factor_at = pos_;
      consume();
      if (!is_digit(peek())) fail(pos_, "expected variable index after 'Y'");
      long index = 0;
      while (is_digit(peek())) {
        index = std::min(index * 10 + (peek() - '0'), 1000000L);
        consume();
      }
      if (index < 1) fail(factor_at, "variable index must be at least 1");
      if (index > nvars_) {
        fail(factor_at, "index " + std::to_string(index) + " exceeds nvars (" + std::to_string(nvars_) + ")");
      }
      long power = 1;
      if (peek() == '^') {
        consume();
        if (!is_digit(peek())) fail(pos_, "expected power after '^'");
        power = 0;
        while (is_digit(peek())) {
          power = std::min(power * 10 + (peek() - '0'), 1000000L);
          consume();
        }
        if (power < 1) fail(factor_at, "power must be at least 1");
      }
      if (letters.size() + static_cast<std::size_t>(power) > kMaxParsedWordLength) {
        fail(factor_at, "word longer than " + std::to_string(kMaxParsedWordLength) + " letters");
      }
      letters.insert(letters.end(), static_cast<std::size_t>(power), static_cast<Word::Letter>(index));
    }
    if (letters.empty()) fail(start, "expected a word");
    return Word(std::move(letters));
  }

  std::string_view text_;
  int nvars_;
  std::size_t pos_ = 0;
  bool line_start_ = true;
};

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_word(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t run = 1;
    while (i + run < w.size() && w[i + run] == w[i]) ++run;
    if (!out.empty()) out += ' ';
    out += 'Y';
    out += std::to_string(w[i]);
    if (run > 1) out += '^' + std::to_string(run);
    i += run;
  }
  return out;
}

std::string format_coeff(cplx c) {
  if (c.imag() == 0.0) return format_number(c.real());
  return "(" + format_number(c.real()) + "," + format_number(c.imag()) + ")";
}

}  // namespace

NCPoly parse_poly(std::string_view text, int nvars) {
  if (nvars < 1) throw Error(ErrorCode::InvalidArgument, "nvars must be positive");
  return PolyParser(text, nvars).parse();
}

std::string format_poly(const NCPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [word, c0] : p.terms()) {
    cplx c = c0;
    if (!first) {
      const bool negative = c.real() < 0.0 || (c.real() == 0.0 && c.imag() < 0.0);
      out += negative ? " - " : " + ";
      // 0.0 - x keeps a zero part at +0 so it never prints as "-0".
      if (negative) c = cplx(0.0 - c.real(), 0.0 - c.imag());
    }
    if (word.empty()) {
      out += format_coeff(c);
    } else if (c == cplx{1.0, 0.0}) {
      out += format_word(word);
    } else {
      out += format_coeff(c) + "*" + format_word(word);
    }
    first = false;
  }
  return out;
}

NCPoly parse_poly_infer(std::string_view text) {
  const NCPoly wide = parse_poly(text, Word::kMaxLetter);
  int nvars = 1;
  for (const auto& [w, c] : wide.terms()) nvars = std::max(nvars, static_cast<int>(w.max_letter()));
  return NCPoly(nvars, wide.terms());
}

}  // namespace nctrace
