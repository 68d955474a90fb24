#include "slocc/random.hpp"

#include <cmath>

namespace slocc {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  // 53 random bits; avoids the implementation-defined std distributions
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  // Box-Muller on our own uniforms keeps streams identical across standard libraries.
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Complex Rng::complex_normal() { return {normal() * M_SQRT1_2, normal() * M_SQRT1_2}; }

VectorC Rng::complex_vector(Eigen::Index n) {
  VectorC v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = complex_normal();
  return v;
}

MatrixC Rng::complex_matrix(Eigen::Index rows, Eigen::Index cols) {
  MatrixC m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = complex_normal();
  return m;
}

Tensor3 Rng::complex_tensor(Dims3 dims) {
  return Tensor3::generate(dims, [this](std::size_t, std::size_t, std::size_t) { return complex_normal(); });
}

}  // namespace slocc
