#pragma once

#include <map>
#include <utility>
#include <vector>

#include "nctrace/types.hpp"

namespace nctrace {

// Hermitian matrix with few nonzeros, stored by its upper triangle.
class SparseHermitian {
 public:
  explicit SparseHermitian(int dim);

  int dim() const noexcept { return dim_; }

  // Adds v at (i, j) and conj(v) at (j, i). On the diagonal only Re(v) is kept.
  void add(int i, int j, cplx v);

  const std::map<std::pair<int, int>, cplx>& upper() const noexcept { return upper_; }

  CMatrix dense() const;
  // Re <A, G> = Re Tr(A* G)
  double inner(const CMatrix& g) const;
  // A * B
  CMatrix times(const CMatrix& b) const;

 private:
  int dim_;
  std::map<std::pair<int, int>, cplx> upper_;
};

// Rows Re<A_k, G> = b_k over Hermitian G.
class AffineConstraints {
 public:
  struct Row {
    SparseHermitian a;
    double rhs;
  };

  explicit AffineConstraints(int dim) : dim_(dim) {}

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }
  const std::vector<Row>& rows() const noexcept { return rows_; }

  void add(SparseHermitian a, double rhs);

  // max_k |Re<A_k, G> - b_k|
  double max_violation(const CMatrix& g) const;

 private:
  int dim_;
  std::vector<Row> rows_;
};

// Isometric real coordinates of a Hermitian m x m matrix (length m^2): the
// diagonal, then sqrt(2) Re and sqrt(2) Im of the strict upper triangle.
RVector hermitian_to_vector(const CMatrix& h);
CMatrix vector_to_hermitian(const RVector& v, int dim);

// Frobenius projection onto {G : Re<A_k,G> = b_k} via the pseudo-inverse of
// the constraint Gram matrix. Construction throws InconsistentConstraints when
// b is not in the range of the constraint map.
class AffineProjector {
 public:
  static constexpr double kConsistencyTolerance = 1e-8;

  explicit AffineProjector(const AffineConstraints& constraints);

  int dim() const noexcept { return dim_; }
  int rank() const noexcept { return rank_; }
  int dependent_rows() const noexcept { return static_cast<int>(rhs_.size()) - rank_; }

  RVector project(const RVector& x) const;
  CMatrix project(const CMatrix& g) const;
  // Frobenius distance from g to the affine set.
  double distance(const CMatrix& g) const;

  // A x - b
  RVector residual(const RVector& x) const;
  // (A A^T)^+ r
  RVector solve_normal(const RVector& r) const;

 private:
  int dim_;
  RMatrix a_;  // rows are hermitian_to_vector(A_k)
  RVector rhs_;
  RMatrix gram_pinv_;
  int rank_ = 0;
};

// Nearest PSD matrix in Frobenius norm (negative eigenvalues clamped to 0).
CMatrix project_psd(const CMatrix& h);

// Frobenius distance from h to the PSD cone.
double psd_distance(const CMatrix& h);

CMatrix project_affine(const CMatrix& g, const AffineConstraints& constraints);

enum class SolveStatus { Feasible, InfeasibleAtTolerance, MaxIterations };

const char* to_string(SolveStatus status);

struct SolveReport {
  SolveStatus status = SolveStatus::MaxIterations;
  long iterations = 0;
  double psd_distance = 0.0;     // of `solution`
  double affine_distance = 0.0;  // of `solution`
  double gap = 0.0;              // last distance between the two iterates
  bool polished = false;         // solution came from the factored refinement
  bool structurally_infeasible = false;
  int dependent_rows = 0;
  CMatrix solution;
};

inline constexpr double kDefaultSolverTolerance = 1e-9;
inline constexpr long kDefaultMaxIterations = 200000;

// Dykstra alternating projections between the PSD cone and the affine set,
// with periodic Gauss-Newton refinement of a factorization G = B B* to close
// the last digits when the two sets only touch on the boundary.
SolveReport feasibility_solve(const AffineConstraints& constraints, int dim,
                              double tol = kDefaultSolverTolerance,
                              long max_iter = kDefaultMaxIterations);

struct LinearMinResult {
  CMatrix solution;
  double value = 0.0;
  long iterations = 0;
};

// Minimizes Re<objective, G> over PSD ∩ affine ∩ {|G_ij| <= box(i,j)} by
// projected descent G <- P(G - step * objective), P computed by Dykstra's
// cyclic projections. Returns the best iterate found feasible at tol; throws
// ErrorCode::Solver when no iterate was feasible.
LinearMinResult minimize_linear(const CMatrix& objective, const AffineConstraints& constraints,
                                const RMatrix& box, double step, double tol, long max_iter);

}  // namespace nctrace
