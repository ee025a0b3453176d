#include "nctrace/moments.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "nctrace/errors.hpp"

namespace nctrace {

MomentSequence moment_sequence(const MatrixTuple& x, int max_degree) {
  if (max_degree < 0) throw Error(ErrorCode::InvalidArgument, "moment degree must be nonnegative");
  const int n = x.n();
  const double inv_size = 1.0 / static_cast<double>(x.size());
  MomentSequence t(n, max_degree);
  auto values = t.values();

  // products[i] holds X_I for the i-th word of length < max_degree; the word at
  // index i extended by letter l (0-based) sits at index i*n + l + 1.
  const std::size_t prefixes = word_count(n, max_degree - 1);
  std::vector<CMatrix> products;
  products.reserve(prefixes);
  products.push_back(CMatrix::Identity(x.size(), x.size()));
  values[0] = 1.0;
  const std::size_t total = values.size();
  for (std::size_t parent = 0;; ++parent) {
    const std::size_t first_child = parent * static_cast<std::size_t>(n) + 1;
    if (first_child >= total) break;
    for (int l = 0; l < n; ++l) {
      const std::size_t child = first_child + static_cast<std::size_t>(l);
      CMatrix prod = products[parent] * x[l];
      values[child] = prod.trace() * inv_size;
      if (child < prefixes) products.push_back(std::move(prod));
    }
  }
  return t;
}

namespace {

double count_pairings(const Word& w, std::size_t begin, std::size_t end,
                      std::map<std::pair<std::size_t, std::size_t>, double>& memo) {
  if (begin == end) return 1.0;
  if ((end - begin) % 2 == 1) return 0.0;
  auto key = std::make_pair(begin, end);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  double total = 0.0;
  for (std::size_t k = begin + 1; k < end; k += 2) {
    if (w[k] != w[begin]) continue;
    total += count_pairings(w, begin + 1, k, memo) * count_pairings(w, k + 1, end, memo);
  }
  memo.emplace(key, total);
  return total;
}

}  // namespace

MomentSequence semicircular_moments(int nvars, int max_degree, double sigma) {
  MomentSequence t(nvars, max_degree);
  const auto words = t.words();
  auto values = t.values();
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::map<std::pair<std::size_t, std::size_t>, double> memo;
    const double count = count_pairings(words[i], 0, words[i].size(), memo);
    values[i] = count * std::pow(sigma, static_cast<double>(words[i].size()));
  }
  return t;
}

WMembershipReport check_w_membership(const MomentSequence& t, double tol) {
  WMembershipReport report;
  const auto words = t.words();
  const auto values = t.values();
  const int n = t.nvars();
  for (std::size_t i = 0; i < words.size(); ++i) {
    const Word& w = words[i];
    for (std::size_t r = 1; r < w.size(); ++r) {
      const double diff = std::abs(values[i] - values[word_index(rotate(w, r), n)]);
      if (diff > report.cyclic_worst) {
        report.cyclic_worst = diff;
        report.cyclic_class = cyclic_canonical(w).representative;
      }
    }
    const double conj_diff = std::abs(values[i] - std::conj(values[word_index(involute_word(w), n)]));
    if (conj_diff > report.conjugate_worst) {
      report.conjugate_worst = conj_diff;
      report.conjugate_word = w;
    }
  }
  report.cyclic_ok = report.cyclic_worst <= tol;
  report.conjugate_ok = report.conjugate_worst <= tol;
  report.normalization_error = std::abs(values[0] - 1.0);
  if (t.max_degree() >= 2) report.growth_radius = growth_radius(t);
  return report;
}

double growth_radius(const MomentSequence& t) {
  if (t.max_degree() < 2) throw Error(ErrorCode::Degree, "growth_radius needs max_degree >= 2");
  const int power = t.max_degree() - t.max_degree() % 2;
  double radius = 0.0;
  for (int j = 1; j <= t.nvars(); ++j) {
    const double even_moment = std::max(0.0, t.at(power_word(j, power)).real());
    radius = std::max(radius, std::pow(even_moment, 1.0 / power));
  }
  return radius;
}

MomentMatrix moment_matrix(const MomentSequence& t, int degree) {
  if (degree < 0) throw Error(ErrorCode::InvalidArgument, "moment matrix degree must be nonnegative");
  if (2 * degree > t.max_degree()) {
    throw Error(ErrorCode::Degree, "moment matrix of degree " + std::to_string(degree) +
                                       " needs moments up to " + std::to_string(2 * degree) + ", have " +
                                       std::to_string(t.max_degree()));
  }
  MomentMatrix m;
  m.degree = degree;
  m.basis = words_up_to(t.nvars(), degree);
  const auto size = static_cast<Eigen::Index>(m.basis.size());
  m.entries.resize(size, size);
  for (Eigen::Index r = 0; r < size; ++r) {
    const Word left = involute_word(m.basis[static_cast<std::size_t>(r)]);
    for (Eigen::Index c = 0; c < size; ++c) {
      m.entries(r, c) = t.at(concat(left, m.basis[static_cast<std::size_t>(c)]));
    }
  }
  return m;
}

PsdReport psd_check(const CMatrix& hermitian, double tol) {
  if (hermitian.rows() != hermitian.cols()) throw Error(ErrorCode::DimensionMismatch, "psd_check needs a square matrix");
  if (hermitian.size() == 0) return {true, 0.0};
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (hermitian + hermitian.adjoint()), Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues()(0);
  return {min_eig >= -tol, min_eig};
}

PsdReport psd_check(const MomentMatrix& m, double tol) { return psd_check(m.entries, tol); }

}  // namespace nctrace
