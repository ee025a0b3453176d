#include "nctrace/ncpoly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "nctrace/errors.hpp"

namespace nctrace {

namespace {

// Sum that ignores input order and commutes with negation, so (a*b)* and b* * a* agree bit for bit.
double order_free_sum(std::vector<double>& v) {
  std::sort(v.begin(), v.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });
  double pos = 0.0;
  double neg = 0.0;
  for (double x : v) (x >= 0.0 ? pos : neg) += std::abs(x);
  return pos - neg;
}

}  // namespace

NCPoly::NCPoly(int nvars) : nvars_(nvars) {
  if (nvars < 1 || nvars > Word::kMaxLetter) {
    throw Error(ErrorCode::InvalidArgument, "nvars must be in 1.." + std::to_string(Word::kMaxLetter));
  }
}

NCPoly::NCPoly(int nvars, TermMap terms) : NCPoly(nvars) {
  terms_ = std::move(terms);
  for (const auto& [w, c] : terms_) check_word(w);
  prune();
}

NCPoly NCPoly::constant(int nvars, cplx value) { return monomial(nvars, Word{}, value); }

NCPoly NCPoly::monomial(int nvars, const Word& word, cplx coeff) {
  NCPoly p(nvars);
  p.add_term(word, coeff);
  return p;
}

int NCPoly::degree() const noexcept {
  // Map order is by length first, so the last key is longest.
  return terms_.empty() ? 0 : static_cast<int>(terms_.rbegin()->first.size());
}

cplx NCPoly::coeff(const Word& word) const {
  auto it = terms_.find(word);
  return it == terms_.end() ? cplx{} : it->second;
}

void NCPoly::check_word(const Word& word) const {
  if (word.max_letter() > nvars_) {
    throw Error(ErrorCode::DimensionMismatch,
                "word " + word.to_string() + " uses a variable above nvars " + std::to_string(nvars_));
  }
}

void NCPoly::add_term(const Word& word, cplx coeff) {
  check_word(word);
  auto [it, inserted] = terms_.try_emplace(word, coeff);
  if (!inserted) it->second += coeff;
  if (std::abs(it->second) <= kPruneTolerance) terms_.erase(it);
}

void NCPoly::prune() {
  std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) <= kPruneTolerance; });
}

NCPoly& NCPoly::operator+=(const NCPoly& other) {
  if (other.nvars_ != nvars_) throw Error(ErrorCode::DimensionMismatch, "nvars differ in sum");
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& other) {
  if (other.nvars_ != nvars_) throw Error(ErrorCode::DimensionMismatch, "nvars differ in difference");
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

NCPoly& NCPoly::operator*=(cplx scalar) {
  for (auto& [w, c] : terms_) c *= scalar;
  prune();
  return *this;
}

NCPoly star_product(const NCPoly& a, const NCPoly& b) {
  if (a.nvars() != b.nvars()) {
    throw Error(ErrorCode::DimensionMismatch, "star_product: nvars " + std::to_string(a.nvars()) +
                                                  " vs " + std::to_string(b.nvars()));
  }
  std::map<Word, std::vector<cplx>> parts;
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) parts[concat(wa, wb)].push_back(ca * cb);
  }
  NCPoly::TermMap out;
  std::vector<double> re;
  std::vector<double> im;
  for (const auto& [w, cs] : parts) {
    re.clear();
    im.clear();
    for (const cplx& c : cs) {
      re.push_back(c.real());
      im.push_back(c.imag());
    }
    out.emplace(w, cplx(order_free_sum(re), order_free_sum(im)));
  }
  return NCPoly(a.nvars(), std::move(out));
}

NCPoly involute_poly(const NCPoly& a) {
  NCPoly::TermMap out;
  for (const auto& [w, c] : a.terms()) out.emplace(involute_word(w), std::conj(c));
  return NCPoly(a.nvars(), std::move(out));
}

double r_norm(const NCPoly& a, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "r_norm needs R > 0");
  // Summing in sorted order makes the result independent of term order, so involution is exactly isometric.
  std::vector<double> parts;
  parts.reserve(a.terms().size());
  for (const auto& [w, c] : a.terms()) parts.push_back(std::abs(c) * std::pow(radius, static_cast<double>(w.size())));
  std::sort(parts.begin(), parts.end());
  return std::accumulate(parts.begin(), parts.end(), 0.0);
}

bool is_symmetric(const NCPoly& a, double tol) {
  if (!(tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be nonnegative");
  return r_norm(a - involute_poly(a), 1.0) <= tol;
}

NCPoly cyclic_reduce(const NCPoly& a) {
  NCPoly::TermMap out;
  for (const auto& [w, c] : a.terms()) out[cyclic_canonical(w).representative] += c;
  return NCPoly(a.nvars(), std::move(out));
}

cplx pair(const NCPoly& a, const MomentSequence& t) {
  if (a.degree() > t.max_degree()) {
    throw Error(ErrorCode::Degree, "pair: polynomial degree " + std::to_string(a.degree()) +
                                       " exceeds moment degree " + std::to_string(t.max_degree()));
  }
  if (a.nvars() > t.nvars()) throw Error(ErrorCode::DimensionMismatch, "pair: nvars exceed moment sequence");
  cplx total{};
  for (const auto& [w, c] : a.terms()) total += c * t.at(w);
  return total;
}

CMatrix eval(const NCPoly& a, const MatrixTuple& x) {
  if (a.nvars() != x.n()) {
    throw Error(ErrorCode::DimensionMismatch, "eval: polynomial has " + std::to_string(a.nvars()) +
                                                  " variables, tuple has " + std::to_string(x.n()));
  }
  CMatrix out = CMatrix::Zero(x.size(), x.size());
  for (const auto& [w, c] : a.terms()) out += c * x.word_product(w);
  return out;
}

cplx normalized_trace(const CMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw Error(ErrorCode::DimensionMismatch, "trace of non-square matrix");
  return m.trace() / static_cast<double>(m.rows());
}

}  // namespace nctrace
