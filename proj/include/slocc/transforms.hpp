#pragma once

#include <cstdint>

#include "slocc/tensor.hpp"

namespace slocc {

inline constexpr double kNonsingularTol = 1e-10;

/// Local operators (A, B, C) acting on parties 1, 2, 3. Factors may be
/// singular (a one-way map); `is_invertible` tells whether the triple is an
/// SLOCC equivalence.
struct SloccMap {
  MatrixC a, b, c;

  static SloccMap identity(Dims3 dims);
  bool is_invertible(double tol = kNonsingularTol) const;
  /// Factor-wise inverse; DomainError when any factor is singular.
  SloccMap inverse() const;
};

/// Smallest singular value exceeds tol times the largest.
bool is_nonsingular(const MatrixC& m, double tol = kNonsingularTol);

/// 2-norm condition number; infinity for a singular matrix.
double condition_number(const MatrixC& m);

/// Every mode-3 slice X becomes P·X·Q.
Tensor3 apply_type1(const Tensor3& t, const MatrixC& p, const MatrixC& q);

/// Mode-3 slices are recombined: new slice j = sum_i g(i,j) * old slice i.
Tensor3 apply_type2(const Tensor3& t, const MatrixC& g);

/// a'(i,j,k) = sum A(i,i') B(j,j') C(k,k') a(i',j',k').
Tensor3 apply_slocc(const Tensor3& t, const SloccMap& m);

/// Same contraction acting on a single mode (1, 2 or 3).
Tensor3 apply_mode(const Tensor3& t, int mode, const MatrixC& m);

/// Deterministic complex Gaussian matrix with condition number at most
/// `cond_bound`, resampled up to `max_tries` times.
MatrixC random_nonsingular(Eigen::Index dim, std::uint64_t seed, double cond_bound = 100.0, int max_tries = 1000);

/// Random invertible SloccMap for a tensor shape, one sub-seed per factor.
SloccMap random_slocc(Dims3 dims, std::uint64_t seed, double cond_bound = 100.0);

}  // namespace slocc
