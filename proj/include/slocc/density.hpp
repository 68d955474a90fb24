#pragma once

#include <set>
#include <vector>

#include "slocc/tensor.hpp"

namespace slocc {

/// State vector over a product of parties; the first party index varies
/// slowest. Normalisation is optional.
class PureState {
 public:
  PureState(std::vector<std::size_t> party_dims, VectorC amplitudes);
  static PureState from_tensor(const Tensor3& t);

  const std::vector<std::size_t>& party_dims() const noexcept { return dims_; }
  const VectorC& amplitudes() const noexcept { return amp_; }
  double norm() const { return amp_.norm(); }
  PureState normalized() const;
  Tensor3 to_tensor() const;  // tripartite states only

 private:
  std::vector<std::size_t> dims_;
  VectorC amp_;
};

/// Hermitian positive semidefinite matrix over the product of `party_dims`.
class DensityMatrix {
 public:
  DensityMatrix(std::vector<std::size_t> party_dims, MatrixC entries);

  const std::vector<std::size_t>& party_dims() const noexcept { return dims_; }
  const MatrixC& matrix() const noexcept { return rho_; }
  Eigen::Index dim() const noexcept { return rho_.rows(); }
  Complex trace() const { return rho_.trace(); }

 private:
  std::vector<std::size_t> dims_;
  MatrixC rho_;
};

/// |x><x|.
DensityMatrix density_of(const PureState& s);

/// sum_i p_i |x_i><x_i| / ||x_i||^2.
DensityMatrix mixture(const std::vector<PureState>& states, const std::vector<double>& probs);

/// Reduced density on the parties not listed in `traced` (0-based).
DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<std::size_t>& traced);

Complex total_trace(const DensityMatrix& rho);

/// Orthonormal eigenvectors whose eigenvalues exceed tol times the largest.
std::vector<VectorC> range_basis(const DensityMatrix& rho, double tol = kDefaultRankTol);

/// Smallest eigenvalue relative to the largest in magnitude (for PSD checks).
double min_relative_eigenvalue(const DensityMatrix& rho);

}  // namespace slocc
