#include "factorkit/random.hpp"

#include <vector>

namespace factorkit {

double MatrixGenerator::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t MatrixGenerator::uniform_index(std::size_t lo, std::size_t hi) {
  const std::uint64_t span = hi - lo + 1;
  return lo + static_cast<std::size_t>(engine_() % span);
}

DenseMatrix MatrixGenerator::real_matrix(std::size_t rows, std::size_t cols) {
  std::vector<Scalar> e(rows * cols);
  for (auto& z : e) z = uniform(-1.0, 1.0);
  return DenseMatrix(rows, cols, std::move(e));
}

DenseMatrix MatrixGenerator::complex_matrix(std::size_t rows, std::size_t cols) {
  std::vector<Scalar> e(rows * cols);
  for (auto& z : e) {
    const double re = uniform01();
    z = Scalar(re, uniform01());
  }
  return DenseMatrix(rows, cols, std::move(e));
}

DenseMatrix MatrixGenerator::real_spd(std::size_t n) {
  const DenseMatrix m = real_matrix(n, n);
  const DenseMatrix mtm = matmul(transpose(m), m);
  std::vector<Scalar> e(mtm.entries().begin(), mtm.entries().end());
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] += static_cast<double>(n);
  // Mirror the upper triangle so the result is exactly symmetric.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) e[i * n + j] = e[j * n + i];
  return DenseMatrix(n, n, std::move(e));
}

DenseMatrix MatrixGenerator::real_symmetric(std::size_t n) {
  std::vector<Scalar> e(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) e[i * n + j] = e[j * n + i] = uniform(-1.0, 1.0);
  return DenseMatrix(n, n, std::move(e));
}

DenseMatrix MatrixGenerator::complex_symmetric(std::size_t n) {
  std::vector<Scalar> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double re = uniform01();
      e[i * n + j] = e[j * n + i] = Scalar(re, uniform01());
    }
  }
  return DenseMatrix(n, n, std::move(e));
}

}  // namespace factorkit
