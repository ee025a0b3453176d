#include "nctrace/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "nctrace/errors.hpp"

namespace nctrace {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Position of the (i, j), i < j, pair among strict upper-triangle entries.
Eigen::Index pair_slot(int i, int j, int m) {
  return static_cast<Eigen::Index>(i) * m - static_cast<Eigen::Index>(i) * (i + 1) / 2 + (j - i - 1);
}

double objective_value(const CMatrix& objective, const CMatrix& g) {
  return objective.conjugate().cwiseProduct(g).sum().real();
}

}  // namespace

SparseHermitian::SparseHermitian(int dim) : dim_(dim) {
  if (dim < 0) throw Error(ErrorCode::InvalidArgument, "negative matrix dimension");
}

void SparseHermitian::add(int i, int j, cplx v) {
  if (i < 0 || j < 0 || i >= dim_ || j >= dim_) {
    throw Error(ErrorCode::DimensionMismatch, "sparse entry outside the matrix");
  }
  if (i > j) {
    std::swap(i, j);
    v = std::conj(v);
  }
  if (i == j) v = cplx{v.real(), 0.0};
  upper_[{i, j}] += v;
}

CMatrix SparseHermitian::dense() const {
  CMatrix out = CMatrix::Zero(dim_, dim_);
  for (const auto& [ij, v] : upper_) {
    out(ij.first, ij.second) += v;
    if (ij.first != ij.second) out(ij.second, ij.first) += std::conj(v);
  }
  return out;
}

double SparseHermitian::inner(const CMatrix& g) const {
  double total = 0.0;
  for (const auto& [ij, v] : upper_) {
    const cplx gij = g(ij.first, ij.second);
    if (ij.first == ij.second) {
      total += v.real() * gij.real();
    } else {
      // The (j, i) term contributes the conjugate of the (i, j) term.
      total += 2.0 * (std::conj(v) * gij).real();
    }
  }
  return total;
}

CMatrix SparseHermitian::times(const CMatrix& b) const {
  CMatrix out = CMatrix::Zero(dim_, b.cols());
  for (const auto& [ij, v] : upper_) {
    out.row(ij.first) += v * b.row(ij.second);
    if (ij.first != ij.second) out.row(ij.second) += std::conj(v) * b.row(ij.first);
  }
  return out;
}

void AffineConstraints::add(SparseHermitian a, double rhs) {
  if (a.dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "constraint matrix dimension differs");
  if (!std::isfinite(rhs)) throw Error(ErrorCode::InvalidArgument, "constraint right-hand side is not finite");
  rows_.push_back({std::move(a), rhs});
}

double AffineConstraints::max_violation(const CMatrix& g) const {
  double worst = 0.0;
  for (const auto& row : rows_) worst = std::max(worst, std::abs(row.a.inner(g) - row.rhs));
  return worst;
}

RVector hermitian_to_vector(const CMatrix& h) {
  const int m = static_cast<int>(h.rows());
  RVector v(static_cast<Eigen::Index>(m) * m);
  for (int i = 0; i < m; ++i) v(i) = h(i, i).real();
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const Eigen::Index slot = m + 2 * pair_slot(i, j, m);
      v(slot) = kSqrt2 * h(i, j).real();
      v(slot + 1) = kSqrt2 * h(i, j).imag();
    }
  }
  return v;
}

CMatrix vector_to_hermitian(const RVector& v, int m) {
  CMatrix h(m, m);
  for (int i = 0; i < m; ++i) h(i, i) = v(i);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const Eigen::Index slot = m + 2 * pair_slot(i, j, m);
      h(i, j) = cplx{v(slot), v(slot + 1)} / kSqrt2;
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

AffineProjector::AffineProjector(const AffineConstraints& constraints) : dim_(constraints.dim()) {
  const int m = dim_;
  const auto k = static_cast<Eigen::Index>(constraints.size());
  a_ = RMatrix::Zero(k, static_cast<Eigen::Index>(m) * m);
  rhs_.resize(k);
  for (Eigen::Index r = 0; r < k; ++r) {
    const auto& row = constraints.rows()[static_cast<std::size_t>(r)];
    rhs_(r) = row.rhs;
    for (const auto& [ij, v] : row.a.upper()) {
      const auto [i, j] = ij;
      if (i == j) {
        a_(r, i) += v.real();
      } else {
        const Eigen::Index slot = m + 2 * pair_slot(i, j, m);
        a_(r, slot) += kSqrt2 * v.real();
        a_(r, slot + 1) += kSqrt2 * v.imag();
      }
    }
  }
  if (k == 0) return;

  const RMatrix gram = a_ * a_.transpose();
  Eigen::SelfAdjointEigenSolver<RMatrix> es(gram);
  const RVector& lambda = es.eigenvalues();
  const double cutoff = std::max(lambda.maxCoeff(), 0.0) * 1e-12;
  RVector inv = RVector::Zero(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    if (lambda(i) > cutoff && lambda(i) > 0.0) {
      inv(i) = 1.0 / lambda(i);
      ++rank_;
    }
  }
  gram_pinv_ = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();

  const RVector in_range = gram * (gram_pinv_ * rhs_);
  const double miss = (rhs_ - in_range).norm();
  if (miss > kConsistencyTolerance * std::max(1.0, rhs_.norm())) {
    throw Error(ErrorCode::InconsistentConstraints,
                "affine constraints are inconsistent (least-squares residual " + std::to_string(miss) + ")");
  }
}

RVector AffineProjector::residual(const RVector& x) const { return a_ * x - rhs_; }

RVector AffineProjector::solve_normal(const RVector& r) const { return gram_pinv_ * r; }

RVector AffineProjector::project(const RVector& x) const {
  if (rhs_.size() == 0) return x;
  RVector y = x - a_.transpose() * solve_normal(residual(x));
  // One refinement pass recovers the digits lost to an ill-conditioned A A^T.
  y -= a_.transpose() * solve_normal(residual(y));
  return y;
}

CMatrix AffineProjector::project(const CMatrix& g) const {
  if (g.rows() != dim_ || g.cols() != dim_) throw Error(ErrorCode::DimensionMismatch, "project_affine: matrix size");
  if (rhs_.size() == 0) return 0.5 * (g + g.adjoint());
  return vector_to_hermitian(project(hermitian_to_vector(g)), dim_);
}

double AffineProjector::distance(const CMatrix& g) const {
  if (rhs_.size() == 0) return 0.0;
  return (a_.transpose() * solve_normal(residual(hermitian_to_vector(g)))).norm();
}

CMatrix project_psd(const CMatrix& h) {
  if (h.rows() != h.cols()) throw Error(ErrorCode::DimensionMismatch, "project_psd needs a square matrix");
  if (h.size() == 0) return h;
  const double defect = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-10 * std::max(1.0, h.cwiseAbs().maxCoeff())) {
    throw Error(ErrorCode::NotHermitian, "project_psd: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const RVector clamped = es.eigenvalues().cwiseMax(0.0);
  CMatrix out = es.eigenvectors() * clamped.asDiagonal() * es.eigenvectors().adjoint();
  return 0.5 * (out + out.adjoint());
}

double psd_distance(const CMatrix& h) {
  if (h.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseMin(0.0).norm();
}

CMatrix project_affine(const CMatrix& g, const AffineConstraints& constraints) {
  return AffineProjector(constraints).project(g);
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::InfeasibleAtTolerance: return "infeasible-at-tolerance";
    case SolveStatus::MaxIterations: return "max-iterations";
  }
  return "unknown";
}

namespace {

// Gauss-Newton on B -> A(B B*) = b with minimum-norm steps. Starting from the
// PSD iterate of the projection loop it converges in a few dozen steps even
// when the feasible set is a single boundary point, where the projections
// alone only close the gap sublinearly.
std::optional<CMatrix> refine_factor(const AffineConstraints& constraints,
                                     const CMatrix& psd_start, double tol) {
  constexpr int kSteps = 80;
  const int m = constraints.dim();
  if (constraints.empty()) return psd_start;

  Eigen::SelfAdjointEigenSolver<CMatrix> es(psd_start);
  const double top = es.eigenvalues().maxCoeff();
  if (!(top > 0.0)) return std::nullopt;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > 1e-12 * top) keep.push_back(i);
  }
  const auto r = static_cast<Eigen::Index>(keep.size());
  CMatrix b(m, r);
  for (Eigen::Index c = 0; c < r; ++c) {
    const auto idx = keep[static_cast<std::size_t>(c)];
    b.col(c) = es.eigenvectors().col(idx) * std::sqrt(es.eigenvalues()(idx));
  }

  const auto k = static_cast<Eigen::Index>(constraints.size());
  auto residual_of = [&](const CMatrix& factor) {
    const CMatrix g = factor * factor.adjoint();
    RVector res(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      const auto& row = constraints.rows()[static_cast<std::size_t>(i)];
      res(i) = row.a.inner(g) - row.rhs;
    }
    return res;
  };

  RVector res = residual_of(b);
  const Eigen::Index unknowns = 2 * m * r;
  RMatrix jac(k, unknowns);
  for (int step = 0; step < kSteps; ++step) {
    const CMatrix g = b * b.adjoint();
    if (constraints.max_violation(g) <= 0.5 * tol) return g;

    for (Eigen::Index i = 0; i < k; ++i) {
      const CMatrix ab = 2.0 * constraints.rows()[static_cast<std::size_t>(i)].a.times(b);
      jac.row(i).head(m * r) = Eigen::Map<const RMatrix>(ab.real().eval().data(), 1, m * r);
      jac.row(i).tail(m * r) = Eigen::Map<const RMatrix>(ab.imag().eval().data(), 1, m * r);
    }
    const RMatrix jjt = jac * jac.transpose();
    Eigen::SelfAdjointEigenSolver<RMatrix> jes(jjt);
    const double cutoff = std::max(jes.eigenvalues().maxCoeff(), 0.0) * 1e-13;
    RVector inv = RVector::Zero(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      if (jes.eigenvalues()(i) > cutoff && jes.eigenvalues()(i) > 0.0) inv(i) = 1.0 / jes.eigenvalues()(i);
    }
    const RVector y = jes.eigenvectors() * (inv.asDiagonal() * (jes.eigenvectors().transpose() * res));
    const RVector delta = -(jac.transpose() * y);
    CMatrix db(m, r);
    for (Eigen::Index c = 0; c < r; ++c) {
      for (Eigen::Index row = 0; row < m; ++row) {
        const Eigen::Index at = c * m + row;  // column-major, as mapped above
        db(row, c) = cplx{delta(at), delta(m * r + at)};
      }
    }

    const double current = res.norm();
    double t = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 40; ++halving, t *= 0.5) {
      const CMatrix trial = b + t * db;
      const RVector trial_res = residual_of(trial);
      if (trial_res.norm() < current) {
        b = trial;
        res = trial_res;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  const CMatrix g = b * b.adjoint();
  if (constraints.max_violation(g) <= tol) return g;
  return std::nullopt;
}

}  // namespace

SolveReport feasibility_solve(const AffineConstraints& constraints, int dim, double tol, long max_iter) {
  if (constraints.dim() != dim) throw Error(ErrorCode::DimensionMismatch, "feasibility_solve: dimension differs");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "feasibility_solve: tol must be positive");

  SolveReport report;
  std::optional<AffineProjector> proj;
  try {
    proj.emplace(constraints);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InconsistentConstraints) throw;
    report.status = SolveStatus::InfeasibleAtTolerance;
    report.structurally_infeasible = true;
    report.gap = std::numeric_limits<double>::infinity();
    report.solution = CMatrix::Zero(dim, dim);
    return report;
  }
  report.dependent_rows = proj->dependent_rows();

  double heuristic = 0.0;
  for (const auto& row : constraints.rows()) heuristic += std::abs(row.rhs);
  heuristic /= std::max(dim, 1);

  CMatrix x = proj->project(CMatrix(heuristic * CMatrix::Identity(dim, dim)));
  CMatrix correction = CMatrix::Zero(dim, dim);
  double gap_mark = -1.0;
  long next_refine = 50;

  auto finish_feasible = [&](CMatrix solution, long it, bool polished) {
    report.status = SolveStatus::Feasible;
    report.iterations = it;
    report.polished = polished;
    report.psd_distance = psd_distance(solution);
    report.affine_distance = proj->distance(solution);
    report.solution = std::move(solution);
    return report;
  };

  for (long it = 1; it <= max_iter; ++it) {
    const CMatrix shifted = x + correction;
    CMatrix y = project_psd(shifted);
    correction = shifted - y;
    x = proj->project(y);
    const double gap = (y - x).norm();
    report.gap = gap;
    if (gap <= tol && constraints.max_violation(y) <= tol) return finish_feasible(std::move(y), it, false);

    if (it == next_refine) {
      next_refine *= 2;
      if (auto g = refine_factor(constraints, y, tol)) return finish_feasible(std::move(*g), it, true);
    }

    if (it % 50 == 0) {
      if (gap > tol && gap_mark > 0.0 && std::abs(gap - gap_mark) < (tol / 100.0) * gap) {
        report.status = SolveStatus::InfeasibleAtTolerance;
        report.iterations = it;
        report.psd_distance = psd_distance(x);
        report.affine_distance = proj->distance(x);
        report.solution = x;
        return report;
      }
      gap_mark = gap;
    }
  }

  if (auto g = refine_factor(constraints, project_psd(x), tol)) {
    return finish_feasible(std::move(*g), max_iter, true);
  }
  report.status = SolveStatus::MaxIterations;
  report.iterations = max_iter;
  report.psd_distance = psd_distance(x);
  report.affine_distance = proj->distance(x);
  report.solution = x;
  return report;
}

LinearMinResult minimize_linear(const CMatrix& objective, const AffineConstraints& constraints, const RMatrix& box,
                                double step, double tol, long max_iter) {
  constexpr int kInnerIterations = 5000;
  const int m = constraints.dim();
  if (objective.rows() != m || objective.cols() != m || box.rows() != m || box.cols() != m) {
    throw Error(ErrorCode::DimensionMismatch, "minimize_linear: objective, box and constraints differ in size");
  }
  if (!box.allFinite()) throw Error(ErrorCode::InvalidArgument, "minimize_linear: box bounds must be finite");
  if (!(step > 0.0) || !(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "minimize_linear: step and tol must be positive");

  const AffineProjector proj(constraints);

  auto clamp_box = [&](const CMatrix& g) {
    CMatrix out = g;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const double mag = std::abs(g(i, j));
        if (mag > box(i, j)) out(i, j) = g(i, j) * (box(i, j) / mag);
      }
    }
    return out;
  };
  auto box_violation = [&](const CMatrix& g) {
    return (g.cwiseAbs() - box).cwiseMax(0.0).maxCoeff();
  };

  // Dykstra over (box, PSD, affine); the affine set needs no correction term.
  // On success `out` is exactly PSD and within tol of the other two sets.
  auto project_all = [&](const CMatrix& z, CMatrix& out) {
    CMatrix x = z;
    CMatrix box_corr = CMatrix::Zero(m, m);
    CMatrix psd_corr = CMatrix::Zero(m, m);
    for (int k = 0; k < kInnerIterations; ++k) {
      const CMatrix a = x + box_corr;
      const CMatrix y1 = clamp_box(a);
      box_corr = a - y1;
      const CMatrix b = y1 + psd_corr;
      CMatrix y2 = project_psd(b);
      psd_corr = b - y2;
      x = proj.project(y2);
      if ((y2 - x).norm() <= tol && box_violation(y2) <= tol) {
        out = std::move(y2);
        return true;
      }
    }
    out = x;
    return false;
  };

  double start_scale = 0.0;
  for (const auto& row : constraints.rows()) start_scale += std::abs(row.rhs);
  start_scale /= std::max(m, 1);

  LinearMinResult best;
  best.value = std::numeric_limits<double>::infinity();
  bool found = false;
  auto consider = [&](const CMatrix& g, long it) {
    const double value = objective_value(objective, g);
    if (value < best.value) {
      best.value = value;
      best.solution = g;
      best.iterations = it;
      found = true;
    }
  };

  CMatrix g;
  if (project_all(CMatrix(start_scale * CMatrix::Identity(m, m)), g)) consider(g, 0);
  for (long it = 1; it <= max_iter; ++it) {
    CMatrix next;
    const bool feasible = project_all(CMatrix(g - step * objective), next);
    if (feasible) consider(next, it);
    const double moved = (next - g).norm();
    g = std::move(next);
    if (feasible && moved <= tol * std::max(1.0, g.norm())) break;
  }
  if (!found) throw Error(ErrorCode::Solver, "minimize_linear: no feasible iterate found");
  return best;
}

}  // namespace nctrace
