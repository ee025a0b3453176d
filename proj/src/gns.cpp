#include "nctrace/gns.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nctrace/errors.hpp"
#include "nctrace/moments.hpp"

namespace nctrace {

namespace {

// Makes the largest-magnitude entry of each column real and positive, so the
// factor does not depend on the eigensolver's phase choices.
void fix_phases(CMatrix& columns) {
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    Eigen::Index at = 0;
    columns.col(c).cwiseAbs().maxCoeff(&at);
    const cplx pivot = columns(at, c);
    if (std::abs(pivot) > 0.0) columns.col(c) *= std::conj(pivot) / std::abs(pivot);
  }
}

// Smallest-norm Hermitian X making [[A, B*], [B, X]] as small as the first
// block column allows: X = -B A (mu^2 - A^2)^{-1} B* with mu = |[A; B]|.
CMatrix minimal_norm_completion(const CMatrix& a, const CMatrix& b) {
  const Eigen::Index k = b.rows();
  if (k == 0) return CMatrix(0, 0);
  if (a.rows() == 0) return CMatrix::Zero(k, k);
  const CMatrix column_gram = a * a + b.adjoint() * b;
  Eigen::SelfAdjointEigenSolver<CMatrix> gram_es(column_gram, Eigen::EigenvaluesOnly);
  const double mu2 = std::max(gram_es.eigenvalues().maxCoeff(), 0.0) * (1.0 + 2e-10);
  if (mu2 <= 0.0) return CMatrix::Zero(k, k);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
  RVector weight(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < weight.size(); ++i) {
    const double ai = es.eigenvalues()(i);
    const double denom = mu2 - ai * ai;
    weight(i) = denom > 1e-14 * mu2 ? ai / denom : 0.0;
  }
  const CMatrix bw = b * es.eigenvectors();
  CMatrix x = -(bw * weight.asDiagonal() * bw.adjoint());
  return 0.5 * (x + x.adjoint());
}

std::size_t shifted_index(int letter, const Word& w, int nvars) {
  Word out;
  out.push_back(letter);
  for (auto l : w) out.push_back(l);
  return word_index(out, nvars);
}

}  // namespace

GnsModel gns_build(const MomentSequence& theta, int degree, double rank_tol) {
  if (degree < 1) throw Error(ErrorCode::Degree, "gns_build needs degree >= 1");
  if (2 * degree > theta.max_degree()) {
    throw Error(ErrorCode::Degree, "gns_build at degree " + std::to_string(degree) + " needs moments up to " +
                                       std::to_string(2 * degree) + ", have " + std::to_string(theta.max_degree()));
  }
  if (!(rank_tol > 0.0 && rank_tol < 1.0)) throw Error(ErrorCode::InvalidArgument, "rank_tol must lie in (0, 1)");

  const WMembershipReport w = check_w_membership(theta, 1e-9);
  if (!w.conjugate_ok) {
    throw Error(ErrorCode::NotHermitian, "moments are not conjugate symmetric at word " + w.conjugate_word.to_string());
  }

  GnsModel model;
  model.nvars = theta.nvars();
  model.degree = degree;
  model.rank_tol = rank_tol;
  model.diagnostics.cyclic_violation = w.cyclic_worst;

  const MomentMatrix mm = moment_matrix(theta, degree);
  model.basis = mm.basis;
  const CMatrix& m = mm.entries;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  const RVector& lambda = es.eigenvalues();
  const double lmax = lambda.maxCoeff();
  model.diagnostics.min_eigenvalue = lambda.minCoeff();
  model.diagnostics.max_eigenvalue = lmax;
  if (lambda.minCoeff() < -rank_tol * std::max(1.0, lmax)) {
    throw Error(ErrorCode::NotPsd, "moment matrix is not positive semidefinite (min eigenvalue " +
                                       std::to_string(lambda.minCoeff()) + ")");
  }

  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = lambda.size() - 1; i >= 0; --i) {
    if (lambda(i) > rank_tol * lmax) keep.push_back(i);
  }
  const auto r = static_cast<Eigen::Index>(keep.size());
  const auto msize = m.rows();
  model.rank = static_cast<int>(r);
  CMatrix u(msize, r);
  RVector sqrt_lambda(r);
  for (Eigen::Index c = 0; c < r; ++c) {
    u.col(c) = es.eigenvectors().col(keep[static_cast<std::size_t>(c)]);
    sqrt_lambda(c) = std::sqrt(lambda(keep[static_cast<std::size_t>(c)]));
  }
  fix_phases(u);
  model.q = sqrt_lambda.asDiagonal() * u.adjoint();
  model.z0 = model.q.col(0);
  model.diagnostics.reconstruction_error = (model.q.adjoint() * model.q - m).cwiseAbs().maxCoeff();

  // Range of the low words (length <= d-1) inside the quotient.
  const int n = model.nvars;
  const auto low = static_cast<Eigen::Index>(word_count(n, degree - 1));
  const CMatrix v_low = model.q.leftCols(low);
  Eigen::JacobiSVD<CMatrix> svd(v_low, Eigen::ComputeFullU | Eigen::ComputeThinV);
  const RVector& sigma = svd.singularValues();
  // Low combinations with squared norm under the quotient threshold count as null.
  const double sigma_cut = std::sqrt(rank_tol * lmax);
  Eigen::Index s = 0;
  while (s < sigma.size() && sigma(s) > sigma_cut) ++s;
  model.diagnostics.shift_domain_rank = static_cast<int>(s);
  const CMatrix& frame = svd.matrixU();  // first s columns span the low range
  const CMatrix q_s = frame.leftCols(s);
  const CMatrix q_perp = frame.rightCols(r - s);
  const CMatrix pinv_right = svd.matrixV().leftCols(s) * sigma.head(s).cwiseInverse().asDiagonal();

  for (int j = 1; j <= n; ++j) {
    CMatrix v_shift(r, low);
    for (Eigen::Index i = 0; i < low; ++i) {
      v_shift.col(i) = model.q.col(static_cast<Eigen::Index>(shifted_index(j, model.basis[static_cast<std::size_t>(i)], n)));
    }
    const CMatrix yq = v_shift * pinv_right;  // y_j restricted to the low range, r x s
    const CMatrix a = q_s.adjoint() * yq;
    const CMatrix b = q_perp.adjoint() * yq;
    const CMatrix a_h = 0.5 * (a + a.adjoint());
    model.diagnostics.hermitian_defect.push_back((a - a.adjoint()).norm());
    model.diagnostics.shift_residual.push_back((yq * (q_s.adjoint() * v_low) - v_shift).norm());

    CMatrix block(r, r);
    block.topLeftCorner(s, s) = a_h;
    block.bottomLeftCorner(r - s, s) = b;
    block.topRightCorner(s, r - s) = b.adjoint();
    block.bottomRightCorner(r - s, r - s) = minimal_norm_completion(a_h, b);
    CMatrix y = frame * block * frame.adjoint();
    model.y.push_back(0.5 * (y + y.adjoint()));
  }
  return model;
}

MomentSequence model_moments(const GnsModel& model, int max_degree) {
  if (max_degree < 0) throw Error(ErrorCode::InvalidArgument, "moment degree must be nonnegative");
  MomentSequence out(model.nvars, max_degree);
  const auto words = out.words();
  auto values = out.values();
  // vecs[i] = y_I z0, built from the tail: y_{j I'} z0 = y_j (y_{I'} z0).
  std::vector<CVector> vecs;
  vecs.reserve(words.size());
  vecs.push_back(model.z0);
  values[0] = model.z0.squaredNorm();
  for (std::size_t i = 1; i < words.size(); ++i) {
    const Word& w = words[i];
    Word tail(std::vector<Word::Letter>(w.begin() + 1, w.end()));
    vecs.push_back(model.y[static_cast<std::size_t>(w[0] - 1)] * vecs[word_index(tail, model.nvars)]);
    values[i] = model.z0.dot(vecs.back());
  }
  return out;
}

double verify_moments(const GnsModel& model, const MomentSequence& theta, int deg_check) {
  if (theta.nvars() != model.nvars) throw Error(ErrorCode::DimensionMismatch, "model and moments disagree on nvars");
  if (deg_check < 0 || deg_check > std::min(2 * model.degree, theta.max_degree())) {
    throw Error(ErrorCode::Degree, "deg_check must lie in [0, min(2d, theta degree)]");
  }
  const MomentSequence mine = model_moments(model, deg_check);
  const auto a = mine.values();
  const auto b = theta.values();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double verify_trace_property(const GnsModel& model, const MomentSequence& theta, int deg_check) {
  if (theta.nvars() != model.nvars) throw Error(ErrorCode::DimensionMismatch, "model and moments disagree on nvars");
  if (deg_check < 0) throw Error(ErrorCode::InvalidArgument, "deg_check must be nonnegative");
  const MomentSequence mine = model_moments(model, deg_check);
  const auto words = mine.words();
  const auto values = mine.values();
  double worst = 0.0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t shift = 1; shift < words[i].size(); ++shift) {
      worst = std::max(worst, std::abs(values[i] - values[word_index(rotate(words[i], shift), model.nvars)]));
    }
  }
  return worst;
}

CMatrix unitary_group(const GnsModel& model, int j, double t) {
  if (j < 1 || j > model.nvars) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  const CMatrix& y = model.y[static_cast<std::size_t>(j - 1)];
  const double defect = (y - y.adjoint()).cwiseAbs().maxCoeff();
  if (defect > kGeneratorHermitianTolerance) {
    throw Error(ErrorCode::NotHermitian, "generator y_" + std::to_string(j) + " is not Hermitian (defect " +
                                             std::to_string(defect) + ")");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (y + y.adjoint()));
  CVector phase(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phase.size(); ++i) phase(i) = std::polar(1.0, t * es.eigenvalues()(i));
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

NormBoundReport norm_bound_check(const GnsModel& model, const MomentSequence& theta, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  if (theta.nvars() != model.nvars) throw Error(ErrorCode::DimensionMismatch, "model and moments disagree on nvars");
  NormBoundReport report;
  for (int j = 1; j <= model.nvars; ++j) {
    for (int len = 2; len <= theta.max_degree(); len += 2) {
      const Word w = power_word(j, len);
      const double bound = std::pow(radius, len);
      const double ratio = theta.at(w).real() / bound;
      if (ratio > report.worst_moment_ratio) {
        report.worst_moment_ratio = ratio;
        report.worst_word = w;
      }
      if (ratio > 1.0 + kMomentBoundSlack) report.moments_ok = false;
    }
    const CMatrix& y = model.y[static_cast<std::size_t>(j - 1)];
    const double norm = y.size() ? Eigen::SelfAdjointEigenSolver<CMatrix>(y, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff() : 0.0;
    report.operator_norms.push_back(norm);
    if (norm > radius * (1.0 + report.slack)) report.operators_ok = false;
  }
  return report;
}

}  // namespace nctrace
