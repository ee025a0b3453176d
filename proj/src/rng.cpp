#include "nctrace/rng.hpp"

#include <cmath>
#include <numbers>

#include "nctrace/errors.hpp"

namespace nctrace {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(seed ^ splitmix64(stream ^ 0x6a09e667f3bcc909ull))) {}

CounterRng::result_type CounterRng::operator()() { return splitmix64(splitmix64(counter_++) ^ key_); }

double CounterRng::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double CounterRng::uniform_open() { return (static_cast<double>((*this)() >> 11) + 1.0) * 0x1.0p-53; }

double CounterRng::normal() {
  const double u1 = uniform_open();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

CMatrix random_hermitian(int size, CounterRng& rng) {
  CMatrix a(size, size);
  for (int j = 0; j < size; ++j) {
    for (int i = 0; i < size; ++i) a(i, j) = cplx{rng.normal(), rng.normal()};
  }
  return 0.5 * (a + a.adjoint());
}

MatrixTuple random_tuple(int n, int size, double radius, CounterRng& rng, bool exact_norm) {
  if (n < 1 || size < 1) throw Error(ErrorCode::InvalidArgument, "random_tuple: n and size must be positive");
  if (!(radius >= 0.0)) throw Error(ErrorCode::InvalidArgument, "random_tuple: radius must be nonnegative");
  std::vector<CMatrix> mats;
  mats.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    CMatrix h = random_hermitian(size, rng);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
    const double scale = exact_norm ? 1.0 : rng.uniform_open();
    if (norm > 0.0) h *= radius * scale / norm;
    mats.push_back(0.5 * (h + h.adjoint()));
  }
  return MatrixTuple::from_hermitian(std::move(mats));
}

}  // namespace nctrace
