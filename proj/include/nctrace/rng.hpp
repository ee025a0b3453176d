#pragma once

#include <cstdint>
#include <limits>

#include "nctrace/tuple.hpp"
#include "nctrace/types.hpp"

namespace nctrace {

// Counter-based generator: the i-th output of stream s is a fixed hash of
// (seed, s, i), so independent trials can be generated in any order and still
// reproduce bit for bit. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  double uniform();       // [0, 1)
  double uniform_open();  // (0, 1]
  double normal();        // standard normal, Box-Muller

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// (A + A*)/2 with iid standard complex Gaussian entries.
CMatrix random_hermitian(int size, CounterRng& rng);

// Each X_j is a random Hermitian matrix rescaled to spectral norm
// radius * u_j with u_j uniform in (0, 1]; exact_norm forces u_j = 1.
MatrixTuple random_tuple(int n, int size, double radius, CounterRng& rng, bool exact_norm = false);

}  // namespace nctrace
