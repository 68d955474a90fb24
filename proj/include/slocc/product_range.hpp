#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slocc/density.hpp"
#include "slocc/tensor.hpp"

namespace slocc {

/// Subspace of C^M ⊗ C^N, each vector reshaped to an M×N matrix
/// (vector index i*N + j holds entry (i, j)).
class MatrixSubspace {
 public:
  MatrixSubspace(Eigen::Index rows, Eigen::Index cols, std::vector<MatrixC> basis);

  Eigen::Index rows() const noexcept { return rows_; }
  Eigen::Index cols() const noexcept { return cols_; }
  const std::vector<MatrixC>& basis() const noexcept { return basis_; }
  std::size_t dim() const noexcept { return basis_.size(); }

  /// Orthonormal basis of the same subspace (Frobenius inner product).
  std::vector<MatrixC> orthonormal_basis() const;

 private:
  Eigen::Index rows_, cols_;
  std::vector<MatrixC> basis_;
};

MatrixC reshape_vector(const VectorC& v, Eigen::Index rows, Eigen::Index cols);
VectorC flatten_matrix(const MatrixC& m);

enum class Exactness { Exact, LowerBound };
std::string to_string(Exactness e);

/// u ⊗ v, i.e. the rank-1 matrix u vᵀ.
struct ProductVector {
  VectorC u, v;
};

struct ProductVectorReport {
  std::vector<ProductVector> vectors;  // distinct up to scale
  int independent_count = 0;
  Exactness exactness = Exactness::Exact;
  bool continuum = false;  // infinitely many product vectors; `vectors` is a sample
};

struct ProductSearchOptions {
  double tol = 1e-9;   // rank-1 decisions
  int starts = 64;     // dimension >= 3 only
  std::uint64_t seed = 0;
};

/// Product vectors in a subspace. Dimension 1 and 2 are decided exactly;
/// dimension >= 3 is a seeded search whose count is only a lower bound.
ProductVectorReport find_product_vectors(const MatrixSubspace& s, const ProductSearchOptions& opts = {});

/// Product vectors in the range of the reduced density on the two parties
/// other than `traced_party` (0, 1 or 2).
ProductVectorReport range_product_count(const PureState& state, std::size_t traced_party,
                                        const ProductSearchOptions& opts = {});

enum class RangeVerdict { Inequivalent, Inconclusive };
std::string to_string(RangeVerdict v);

struct RangeComparison {
  RangeVerdict verdict = RangeVerdict::Inconclusive;
  std::string reason;
  LocalRanks ranks1{}, ranks2{};
  ProductVectorReport report1, report2;  // empty when local ranks already differ
};

/// Counting test: Inequivalent only when local ranks differ or both counts
/// are exact and differ.
RangeComparison range_criterion_compare(const PureState& s1, const PureState& s2, std::size_t traced_party,
                                        const ProductSearchOptions& opts = {});

}  // namespace slocc
