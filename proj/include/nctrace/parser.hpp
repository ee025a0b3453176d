#pragma once

#include <string>
#include <string_view>

#include "nctrace/ncpoly.hpp"

namespace nctrace {

// Longest word a single term may expand to after '^' powers.
inline constexpr std::size_t kMaxParsedWordLength = 64;

// Grammar (whitespace-insensitive between tokens, '#' starts a comment line):
//
//   poly   := ['+'|'-'] term (('+'|'-') term)*
//   term   := coeff ['*' word] | word
//   coeff  := signed decimal | '(' decimal ',' decimal ')'
//   word   := '1' | factor+
//   factor := 'Y' index ['^' power]
//
// Throws ParseError carrying the byte offset of the offending token.
NCPoly parse_poly(std::string_view text, int nvars);

// As parse_poly, with nvars taken as the largest index used (at least 1).
NCPoly parse_poly_infer(std::string_view text);

// Terms in degree-then-lexicographic order; output re-parses to the same
// polynomial bit for bit.
std::string format_poly(const NCPoly& p);

}  // namespace nctrace
