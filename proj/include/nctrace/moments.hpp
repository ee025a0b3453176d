#pragma once

#include <vector>

#include "nctrace/tuple.hpp"
#include "nctrace/types.hpp"
#include "nctrace/word.hpp"

namespace nctrace {

// t_I = (1/N) Tr(X_{i1} ... X_{ip}) for every |I| <= max_degree.
MomentSequence moment_sequence(const MatrixTuple& x, int max_degree);

// Moments of n free semicircular variables of variance sigma^2: t_I is
// sigma^|I| times the number of non-crossing pairings of I that only pair
// equal letters. Its moment matrices are positive definite at every degree.
MomentSequence semicircular_moments(int nvars, int max_degree, double sigma);

struct WMembershipReport {
  bool cyclic_ok = true;
  double cyclic_worst = 0.0;
  Word cyclic_class;  // canonical rotation of the worst violator
  bool conjugate_ok = true;
  double conjugate_worst = 0.0;
  Word conjugate_word;
  double normalization_error = 0.0;  // |t_() - 1|, informational
  double growth_radius = 0.0;        // 0 when max_degree < 2

  bool pass() const noexcept { return cyclic_ok && conjugate_ok; }
};

// Checks t_I = t_{rot(I)} for all rotations and t_I = conj(t_{I^op}).
WMembershipReport check_w_membership(const MomentSequence& t, double tol);

// max_j (t_{j^{2k}})^{1/(2k)} at the largest even 2k <= max_degree.
double growth_radius(const MomentSequence& t);

struct MomentMatrix {
  int degree = 0;
  std::vector<Word> basis;  // words of length <= degree, degree-lex order
  CMatrix entries;          // entries(J, K) = t_{J^op K}
};

MomentMatrix moment_matrix(const MomentSequence& t, int degree);

struct PsdReport {
  bool psd = false;
  double min_eigenvalue = 0.0;
};

// psd iff the least eigenvalue is >= -tol.
PsdReport psd_check(const CMatrix& hermitian, double tol);
PsdReport psd_check(const MomentMatrix& m, double tol);

}  // namespace nctrace
