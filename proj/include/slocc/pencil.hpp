#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slocc/catalog.hpp"
#include "slocc/tensor.hpp"

namespace slocc {

inline constexpr double kPencilRankTol = 1e-8;

struct FiniteDivisor {
  Complex eigenvalue;          // lambda with lambda*S0 + S1 rank-deficient
  std::vector<int> partition;  // Jordan block sizes, descending
};

/// Kronecker structure of the pencil x*S0 + y*S1 built from the two mode-1
/// slices of a 2×M×N tensor (S1 = 0 when the first dimension is 1).
struct PencilInvariants {
  int rows = 0, cols = 0;
  int normal_rank = 0;
  std::vector<int> column_indices;  // minimal indices, ascending, zeros included
  std::vector<int> row_indices;
  std::vector<FiniteDivisor> finite;
  std::vector<int> infinite;  // partition at lambda = infinity (S0 singular)
  bool borderline = false;    // a rank decision was close to the tolerance
  double margin = 0;          // min over decisions of the factor separating a singular value from the tolerance

  /// Canonical text of the data invariant under invertible local maps:
  /// nonzero minimal indices and the multiset of partitions (eigenvalue
  /// positions dropped, since the first party moves them by a Möbius map).
  std::string signature() const;
};

/// DomainError unless the first dimension is 1 or 2.
PencilInvariants pencil_invariants(const Tensor3& t, double tol = kPencilRankTol);

struct Classification2mn {
  std::optional<std::string> id;  // matching catalog entry
  std::string signature;          // local ranks plus pencil signature
  PencilInvariants invariants;
  std::string diagnostic;         // why nothing matched
};

/// Matches a 2×M×N tensor (first dim ≤ 2, M ≤ 3, N ≤ 6) against the catalog
/// representatives. DomainError on out-of-range dims or the zero tensor.
Classification2mn classify_2mn(const Tensor3& t);

/// Signature used by classify_2mn.
std::string class_signature(const Tensor3& t);

}  // namespace slocc
