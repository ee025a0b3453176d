#pragma once

#include <vector>

#include "nctrace/tuple.hpp"
#include "nctrace/types.hpp"
#include "nctrace/word.hpp"

namespace nctrace {

struct GnsDiagnostics {
  double min_eigenvalue = 0.0;        // of the moment matrix
  double max_eigenvalue = 0.0;
  double reconstruction_error = 0.0;  // max |(Q* Q - M)_JK|
  double cyclic_violation = 0.0;      // from check_w_membership, not enforced
  // Per variable: |A - A*| of the compressed shift before symmetrization, and
  // the least-squares residual of y_j v_I = v_{jI} over |I| <= d-1.
  std::vector<double> hermitian_defect;
  std::vector<double> shift_residual;
  int shift_domain_rank = 0;  // dimension spanned by words of length <= d-1
};

// Truncated GNS data. Column I of q is the image of Z_I in the rank-r
// quotient, so q^* q reproduces the moment matrix and z0 = q.col(0).
struct GnsModel {
  int nvars = 0;
  int degree = 0;
  std::vector<Word> basis;
  int rank = 0;
  CMatrix q;               // r x m
  std::vector<CMatrix> y;  // y[j-1] acts as Y_j, Hermitian r x r
  CVector z0;
  double rank_tol = 0.0;
  GnsDiagnostics diagnostics;
};

inline constexpr double kDefaultRankTolerance = 1e-8;

// Requires theta.max_degree >= 2d, conjugate symmetry, and a moment matrix
// PSD to rank_tol * max(1, lambda_max). The shift on words of length <= d-1
// fixes each y_j on that subspace; the rest is the minimal-norm Hermitian
// completion, so the model reproduces every moment of length <= 2d.
GnsModel gns_build(const MomentSequence& theta, int degree, double rank_tol = kDefaultRankTolerance);

// <y_I z0, z0> for every |I| <= max_degree, in storage order.
MomentSequence model_moments(const GnsModel& model, int max_degree);

// max over |I| <= deg_check of |<y_I z0, z0> - theta_I|. deg_check may go up
// to min(2d, theta.max_degree).
double verify_moments(const GnsModel& model, const MomentSequence& theta, int deg_check);

// max over |I| + |J| <= deg_check of |<y_{IJ} z0, z0> - <y_{JI} z0, z0>|.
// theta only has to agree with the model on nvars.
double verify_trace_property(const GnsModel& model, const MomentSequence& theta, int deg_check);

inline constexpr double kGeneratorHermitianTolerance = 1e-8;

// exp(i t y_j) by spectral decomposition; j is 1-based.
CMatrix unitary_group(const GnsModel& model, int j, double t);

inline constexpr double kMomentBoundSlack = 1e-9;
inline constexpr double kTruncationSlack = 1e-8;

struct NormBoundReport {
  bool moments_ok = true;    // theta_{j^{2k}} <= R^{2k} (1 + 1e-9)
  bool operators_ok = true;  // |y_j| <= R (1 + slack)
  double slack = kTruncationSlack;
  double worst_moment_ratio = 0.0;  // max theta_{j^{2k}} / R^{2k}
  Word worst_word;
  std::vector<double> operator_norms;
  bool pass() const noexcept { return moments_ok && operators_ok; }
};

NormBoundReport norm_bound_check(const GnsModel& model, const MomentSequence& theta, double radius);

}  // namespace nctrace
