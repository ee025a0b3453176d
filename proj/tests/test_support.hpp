#pragma once

#include <cmath>
#include <vector>

#include "nctrace/ncpoly.hpp"
#include "nctrace/rng.hpp"
#include "nctrace/tuple.hpp"
#include "nctrace/word.hpp"

namespace nctrace::testing {

inline int uniform_int(CounterRng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Word random_word(CounterRng& rng, int nvars, int length) {
  Word w;
  for (int i = 0; i < length; ++i) w.push_back(uniform_int(rng, 1, nvars));
  return w;
}

// Up to `terms` terms with word lengths in [0, max_degree]. Grid coefficients
// are multiples of 1/8 in [-2, 2] so that arithmetic on them is exact.
inline NCPoly random_poly(CounterRng& rng, int nvars, int max_degree, int terms, bool grid = false) {
  NCPoly p(nvars);
  for (int t = 0; t < terms; ++t) {
    const Word w = random_word(rng, nvars, uniform_int(rng, 0, max_degree));
    cplx c;
    if (grid) {
      c = {uniform_int(rng, -16, 16) / 8.0, uniform_int(rng, -16, 16) / 8.0};
    } else {
      c = {rng.normal(), rng.normal()};
    }
    p.add_term(w, c);
  }
  return p;
}

// Rotation-by-rotation minimum; the reference for Booth's algorithm.
inline Word brute_least_rotation(const Word& w) {
  Word best = w;
  for (std::size_t s = 1; s < w.size(); ++s) {
    std::vector<Word::Letter> letters;
    for (std::size_t i = 0; i < w.size(); ++i) letters.push_back(w[(s + i) % w.size()]);
    Word r(letters);
    if (r.letters() < best.letters()) best = r;
  }
  return best;
}

inline CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

inline CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

inline MatrixTuple pauli_pair() { return MatrixTuple::from_hermitian({pauli_x(), pauli_z()}); }

inline MatrixTuple scalar_tuple(double value) {
  return MatrixTuple::from_hermitian({CMatrix::Constant(1, 1, value)});
}

inline MatrixTuple gue_tuple(CounterRng& rng, int n, int size) {
  std::vector<CMatrix> mats;
  for (int j = 0; j < n; ++j) mats.push_back(random_hermitian(size, rng));
  return MatrixTuple::from_hermitian(std::move(mats));
}

// 1/2 (Y1^2 Y2^2 + Y2^2 Y1^2) - 1/2 (Y1 Y2 Y1 Y2 + Y2 Y1 Y2 Y1)
inline NCPoly commutator_poly() {
  NCPoly p(2);
  p.add_term(Word{1, 1, 2, 2}, 0.5);
  p.add_term(Word{2, 2, 1, 1}, 0.5);
  p.add_term(Word{1, 2, 1, 2}, -0.5);
  p.add_term(Word{2, 1, 2, 1}, -0.5);
  return p;
}

}  // namespace nctrace::testing
