#include "nctrace/tuple.hpp"

#include <algorithm>

#include "nctrace/errors.hpp"

namespace nctrace {

MatrixTuple MatrixTuple::from_hermitian(std::vector<CMatrix> matrices, double tol) {
  if (matrices.empty()) throw Error(ErrorCode::InvalidArgument, "matrix tuple needs at least one matrix");
  const auto size = matrices.front().rows();
  if (size < 1) throw Error(ErrorCode::InvalidArgument, "matrices must be at least 1x1");
  for (std::size_t j = 0; j < matrices.size(); ++j) {
    CMatrix& x = matrices[j];
    if (x.rows() != size || x.cols() != size) {
      throw Error(ErrorCode::DimensionMismatch,
                  "matrix " + std::to_string(j + 1) + " is not " + std::to_string(size) + "x" +
                      std::to_string(size));
    }
    const double defect = (x - x.adjoint()).cwiseAbs().maxCoeff();
    if (!(defect <= tol)) {
      throw Error(ErrorCode::NotHermitian, "matrix " + std::to_string(j + 1) +
                                               " is not Hermitian (max |X - X*| = " +
                                               std::to_string(defect) + ")");
    }
    x = (0.5 * (x + x.adjoint())).eval();
  }
  return MatrixTuple(std::move(matrices), static_cast<int>(size));
}

double MatrixTuple::max_norm() const {
  double best = 0.0;
  for (const auto& x : matrices_) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(x, Eigen::EigenvaluesOnly);
    best = std::max(best, es.eigenvalues().cwiseAbs().maxCoeff());
  }
  return best;
}

CMatrix MatrixTuple::word_product(const Word& word) const {
  CMatrix out = CMatrix::Identity(size_, size_);
  for (auto l : word) {
    if (l > matrices_.size()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "word letter " + std::to_string(l) + " exceeds tuple size " + std::to_string(n()));
    }
    out = (out * matrices_[l - 1u]).eval();
  }
  return out;
}

MomentSequence::MomentSequence(int nvars, int max_degree) : nvars_(nvars), max_degree_(max_degree) {
  if (nvars < 1) throw Error(ErrorCode::InvalidArgument, "nvars must be positive");
  if (max_degree < 0) throw Error(ErrorCode::InvalidArgument, "max_degree must be nonnegative");
  values_.assign(word_count(nvars, max_degree), cplx{0.0, 0.0});
  values_[0] = 1.0;
}

std::size_t MomentSequence::checked_index(const Word& word) const {
  if (static_cast<int>(word.size()) > max_degree_) {
    throw Error(ErrorCode::Degree, "word " + word.to_string() + " exceeds moment degree " +
                                       std::to_string(max_degree_));
  }
  if (word.max_letter() > nvars_) {
    throw Error(ErrorCode::DimensionMismatch,
                "word " + word.to_string() + " uses a letter above nvars " + std::to_string(nvars_));
  }
  return word_index(word, nvars_);
}

cplx MomentSequence::at(const Word& word) const { return values_[checked_index(word)]; }

void MomentSequence::set(const Word& word, cplx value) { values_[checked_index(word)] = value; }

}  // namespace nctrace
