#pragma once

#include <random>

#include "nulllag/tensor.hpp"

namespace nulllag::testing {

template <int Rank>
Tensor<Rank> random_tensor(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Tensor<Rank> t;
  for (std::size_t n = 0; n < Tensor<Rank>::size; ++n) t[n] = u(rng);
  return t;
}

inline Tensor4 random_major_symmetric(std::mt19937_64& rng) {
  const Tensor4 t = random_tensor<4>(rng);
  return 0.5 * (t + major_transpose(t));
}

inline double kron(int i, int j) { return i == j ? 1.0 : 0.0; }

/// Alternator from the parity of the index permutation (inversion count).
inline double parity_alternator(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0.0;
  int inversions = (i > j) + (i > k) + (j > k);
  return inversions % 2 == 0 ? 1.0 : -1.0;
}

inline double max_abs_diff(const Tensor4& a, const Tensor4& b) { return (a - b).max_abs(); }

}  // namespace nulllag::testing
