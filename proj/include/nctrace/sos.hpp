#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nctrace/moments.hpp"
#include "nctrace/ncpoly.hpp"
#include "nctrace/sdp.hpp"
#include "nctrace/tuple.hpp"

namespace nctrace {

// Sum over the basis pairs (J, K) whose word J^op K lies in one cyclic class.
struct GramConstraint {
  Word class_rep;
  // The class equals its own reversal, so both sides are real.
  bool self_reversed = true;
  std::vector<std::pair<int, int>> entries;  // (J, K) basis indices
  cplx rhs;                                  // sum of p_I over the class
};

struct GramProblem {
  int nvars = 0;
  int degree = 0;
  std::vector<Word> basis;
  std::vector<GramConstraint> constraints;

  int dim() const noexcept { return static_cast<int>(basis.size()); }
  // Real rows over Hermitian G. A self-reversed class gives one row; a class
  // c and its reversal share one pair of rows (real and imaginary part).
  AffineConstraints to_affine() const;
};

// ceil(deg p / 2)
int default_degree(const NCPoly& p);

GramProblem build_gram_problem(const NCPoly& p, int degree);

// Drops basis words whose Gram diagonal is forced to zero by a real
// constraint with zero right-hand side over diagonal entries only, repeating
// until nothing changes. Every PSD solution of the original problem vanishes
// on those rows, so the pruned problem has the same solutions restricted to
// the remaining words and is more often strictly feasible.
GramProblem prune_forced_zeros(const GramProblem& problem);

struct Certificate {
  int degree = 0;
  std::vector<NCPoly> factors;
  NCPoly residual{1};
  double residual_l1 = 0.0;
};

enum class CertifyStatus { Certified, Infeasible, SolverFailure };

const char* to_string(CertifyStatus status);

struct CertifyResult {
  CertifyStatus status = CertifyStatus::SolverFailure;
  int degree = 0;
  std::optional<Certificate> certificate;
  SolveReport solve;
  double residual_bound = 0.0;  // 10 tol m^2
  std::string message;
};

inline constexpr double kRankCutoff = 1e-8;

CertifyResult certify_sos(const NCPoly& p, int degree, double tol = kDefaultSolverTolerance,
                          long max_iter = kDefaultMaxIterations);

// r_norm(cyclic_reduce(p - sum b* b), 1), computed with polynomial arithmetic only.
double verify_certificate(const NCPoly& p, const std::vector<NCPoly>& factors);

struct DualWitness {
  int degree = 0;  // d; theta carries moments up to 2d
  double radius = 1.0;
  double value = 0.0;
  MomentSequence theta{1, 0};
};

struct WitnessSearch {
  std::optional<DualWitness> witness;
  double optimum = 0.0;  // pair(p, theta) at the returned point
  long iterations = 0;
};

WitnessSearch dual_witness(const NCPoly& p, int degree, double radius = 1.0,
                           double tol = kDefaultSolverTolerance);

struct WitnessCheck {
  WMembershipReport membership;
  PsdReport psd;
  double normalization_error = 0.0;
  double box_violation = 0.0;  // max(|theta_I| - R^|I|, 0)
  double value = 0.0;          // Re pair(p, theta)
  bool valid = false;
};

// Independent check of the witness invariants at `tol`; valid also requires value < 0.
WitnessCheck check_witness(const NCPoly& p, const MomentSequence& theta, int degree, double radius,
                           double tol);

inline constexpr double kFalsifyThreshold = -1e-10;

struct FalsifyResult {
  std::optional<MatrixTuple> tuple;
  double trace = 0.0;
  std::string source;  // "structured:<name>" or "random:<trial>"
  long evaluated = 0;
};

// The fixed library tried before random trials: zero, scalar sign patterns
// and diagonal sign patterns at the given size, then the 2x2 Pauli matrices.
std::vector<std::pair<std::string, MatrixTuple>> structured_tuples(int nvars, int size, double radius);

FalsifyResult falsify(const NCPoly& p, long trials, int size, double radius, std::uint64_t seed);

}  // namespace nctrace
