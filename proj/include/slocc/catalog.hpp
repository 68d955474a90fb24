#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slocc/density.hpp"
#include "slocc/tensor.hpp"

namespace slocc {

/// Known tensor rank of a catalog state.
struct RankNote {
  int rank = 0;
  std::string detail;
};

struct CatalogEntry {
  std::string id;
  Dims3 system{};          // dims of the built tensor
  std::string ket_text;    // parse_ket grammar, unnormalized
  LocalRanks local_ranks{};
  std::optional<RankNote> rank_note;
  bool table_row = false;  // one of the canonical 2×M×N representatives
};

/// Canonical 2×M×N representatives (M ≤ 3, N ≤ 6) in table order, followed
/// by the named 3×3×3 and 4×4×4 examples.
const std::vector<CatalogEntry>& catalog_list();

/// DomainError for an unknown id.
const CatalogEntry& catalog_get(const std::string& id);
Tensor3 catalog_build(const std::string& id);

enum class LhrgmKind { Omega0, Omega1, Omega2, Omega3 };
std::string to_string(LhrgmKind k);
LhrgmKind lhrgm_kind_from_string(const std::string& s);

struct LhrgmParams {
  Complex a{1.0}, b{1.0};
  std::vector<Complex> chi;  // length N-1; Omega2 and Omega3 only
  PureState base;            // 2×(M-1)×(N-1) for Omega0/2/3, 2×(M-1)×(N-2) for Omega1
};

/// Raises a 2×M'×N' state to 2×M×N:
///   Omega0 = (a|0> + b|1>)|M-1,N-1> + base
///   Omega1 = |0,M-1,N-1> + |1,M-1,N-2> + base
///   Omega2 = Omega0 + |0,M-1>|chi>   (b != 0)
///   Omega3 = Omega0 + |1,M-1>|chi>   (a != 0)
PureState lhrgm_build(LhrgmKind kind, const LhrgmParams& params, std::size_t m, std::size_t n);

/// |Psi> = |psi> + |2>(|0>|alpha> + |1>|beta> + |2>|gamma>) in 3×3×5, where
/// psi is 2×n×p with n ≤ 3, p ≤ 5 and alpha, beta, gamma lie in C^5.
PureState build_335(const PureState& psi, const VectorC& alpha, const VectorC& beta, const VectorC& gamma);

}  // namespace slocc
