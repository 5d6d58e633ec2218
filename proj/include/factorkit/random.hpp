#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "factorkit/numcore.hpp"

namespace factorkit {

// Seeded generators with platform-independent output: doubles are taken
// straight from the 53 high bits of mt19937_64, not via <random>
// distributions whose algorithms are implementation-defined.
class MatrixGenerator {
 public:
  explicit MatrixGenerator(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform01();
  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  std::size_t uniform_index(std::size_t lo, std::size_t hi);  // inclusive bounds

  // Real entries uniform in [-1, 1).
  DenseMatrix real_matrix(std::size_t rows, std::size_t cols);
  // Complex entries with real and imaginary parts uniform in [0, 1).
  DenseMatrix complex_matrix(std::size_t rows, std::size_t cols);
  // M^T M + n I with M from real_matrix(n, n).
  DenseMatrix real_spd(std::size_t n);
  // Real a_ij = a_ji, entries uniform in [-1, 1).
  DenseMatrix real_symmetric(std::size_t n);
  // Complex a_ij = a_ji (no conjugation), parts uniform in [0, 1).
  DenseMatrix complex_symmetric(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace factorkit
