#pragma once

#include <cstdint>
#include <random>

#include "slocc/tensor.hpp"

namespace slocc {

/// Independent sub-seed for stream `stream` of a base seed (splitmix64 mix).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Seeded source of complex Gaussian samples. No global state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();                 // [0, 1)
  double normal();                  // N(0, 1)
  Complex complex_normal();         // real and imaginary parts N(0, 1/2)
  VectorC complex_vector(Eigen::Index n);
  MatrixC complex_matrix(Eigen::Index rows, Eigen::Index cols);
  Tensor3 complex_tensor(Dims3 dims);

 private:
  std::mt19937_64 engine_;
};

}  // namespace slocc
