#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nctrace/types.hpp"
#include "nctrace/word.hpp"

namespace nctrace {

// n Hermitian N x N matrices substituted for Y_1..Y_n.
class MatrixTuple {
 public:
  static constexpr double kHermitianTolerance = 1e-12;

  // Checks Hermiticity (max |X - X*| entry <= tol) and stores (X + X*)/2.
  static MatrixTuple from_hermitian(std::vector<CMatrix> matrices,
                                    double tol = kHermitianTolerance);

  int n() const noexcept { return static_cast<int>(matrices_.size()); }
  int size() const noexcept { return size_; }
  const CMatrix& operator[](int j) const { return matrices_[static_cast<std::size_t>(j)]; }
  const std::vector<CMatrix>& matrices() const noexcept { return matrices_; }

  // max_j of the spectral norm of X_j.
  double max_norm() const;

  // X_{i1} X_{i2} ... X_{ip}; identity for the empty word.
  CMatrix word_product(const Word& word) const;

 private:
  MatrixTuple(std::vector<CMatrix> matrices, int size)
      : matrices_(std::move(matrices)), size_(size) {}

  std::vector<CMatrix> matrices_;
  int size_ = 0;
};

// Truncated tracial data t_I for all |I| <= max_degree, stored densely in the
// degree-then-lexicographic word order. A fresh sequence has t_() = 1 and all
// other entries zero.
class MomentSequence {
 public:
  MomentSequence(int nvars, int max_degree);

  int nvars() const noexcept { return nvars_; }
  int max_degree() const noexcept { return max_degree_; }

  cplx at(const Word& word) const;
  void set(const Word& word, cplx value);

  std::span<const cplx> values() const noexcept { return values_; }
  std::span<cplx> values() noexcept { return values_; }

  // Words in storage order.
  std::vector<Word> words() const { return words_up_to(nvars_, max_degree_); }

 private:
  std::size_t checked_index(const Word& word) const;

  int nvars_;
  int max_degree_;
  std::vector<cplx> values_;
};

}  // namespace nctrace
