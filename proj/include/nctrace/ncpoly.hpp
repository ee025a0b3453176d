#pragma once

#include <map>

#include "nctrace/tuple.hpp"
#include "nctrace/types.hpp"
#include "nctrace/word.hpp"

namespace nctrace {

// Coefficients with magnitude at or below this are dropped on normalization.
inline constexpr double kPruneTolerance = 1e-15;

// Finitely supported element of the free *-algebra C<Y_1..Y_n>: a sparse map
// from words to complex coefficients. Zero coefficients are never stored, so
// two polynomials are equal iff their term maps are equal.
class NCPoly {
 public:
  using TermMap = std::map<Word, cplx>;

  explicit NCPoly(int nvars);
  NCPoly(int nvars, TermMap terms);

  static NCPoly constant(int nvars, cplx value);
  static NCPoly monomial(int nvars, const Word& word, cplx coeff = 1.0);

  int nvars() const noexcept { return nvars_; }
  // Longest stored word; 0 for the zero polynomial.
  int degree() const noexcept;
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const TermMap& terms() const noexcept { return terms_; }

  cplx coeff(const Word& word) const;
  void add_term(const Word& word, cplx coeff);

  NCPoly& operator+=(const NCPoly& other);
  NCPoly& operator-=(const NCPoly& other);
  NCPoly& operator*=(cplx scalar);

  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(cplx s, NCPoly a) { return a *= s; }
  friend NCPoly operator-(NCPoly a) { return a *= -1.0; }

  friend bool operator==(const NCPoly&, const NCPoly&) = default;

 private:
  void check_word(const Word& word) const;
  void prune();

  int nvars_;
  TermMap terms_;
};

// (a*b)_I = sum over splittings I = J K of a_J b_K.
NCPoly star_product(const NCPoly& a, const NCPoly& b);

// (c Y_I)* = conj(c) Y_{I^op}
NCPoly involute_poly(const NCPoly& a);

// sum_I |a_I| R^|I|
double r_norm(const NCPoly& a, double radius);

bool is_symmetric(const NCPoly& a, double tol);

// Collects each cyclic class onto its least rotation. Two polynomials are
// cyclically equivalent iff their reductions agree.
NCPoly cyclic_reduce(const NCPoly& a);

// <a, t> = sum_I a_I t_I
cplx pair(const NCPoly& a, const MomentSequence& t);

// Substitutes X_j for Y_j; the empty word maps to the identity.
CMatrix eval(const NCPoly& a, const MatrixTuple& x);

// (1/N) Tr
cplx normalized_trace(const CMatrix& m);

}  // namespace nctrace
