#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "slocc/tensor.hpp"
#include "slocc/transforms.hpp"

namespace slocc {

/// Cayley hyperdeterminant of a 2×2×2 tensor.
Complex hyperdeterminant(const Tensor3& t);

enum class Class222 { Zero, Product, BiSeparableA, BiSeparableB, BiSeparableC, GHZ, W };
std::string to_string(Class222 c);

/// Exact orbit class of a 2×2×2 tensor. BiSeparableA means party A factors
/// off, i.e. local ranks (1,2,2).
Class222 classify_222(const Tensor3& t, double tol = kDefaultRankTol);

/// Tensor rank of each 2×2×2 class (0 for Zero).
int rank_of(Class222 c);

enum class LowerCertificate { LocalRank, Classifier222 };
enum class UpperCertificate { Decomposition, TermCount };
std::string to_string(LowerCertificate c);
std::string to_string(UpperCertificate c);

struct RankLowerBound {
  int value = 0;
  LowerCertificate certificate = LowerCertificate::LocalRank;
  std::optional<Class222> class222;  // set when the 2×2×2 classifier decided
};

/// Largest local rank, or the exact rank when every local rank is at most 2
/// (the tensor then compresses to a 2×2×2 core).
RankLowerBound rank_lower_bound(const Tensor3& t, double tol = kDefaultRankTol);

/// Rank-R decomposition t ≈ sum_r a_r ⊗ b_r ⊗ c_r; column r of a, b, c holds
/// the factors of term r.
struct CpDecomposition {
  MatrixC a, b, c;

  int terms() const noexcept { return static_cast<int>(a.cols()); }
  Tensor3 reconstruct() const;
};

/// Termwise image under local maps (which may be singular).
CpDecomposition map_decomposition(const CpDecomposition& d, const SloccMap& m);

struct CpOptions {
  int restarts = 32;
  int max_iter = 2000;
  std::uint64_t seed = 0;
  double tol = 1e-8;  // success threshold on the relative residual
};

struct CpResult {
  bool success = false;
  CpDecomposition factors;  // best found
  double residual = 0;      // relative, ||t - sum|| / ||t||
  int restart = -1;         // restart that produced `factors`; -1 for the direct construction
  int iterations = 0;
};

/// Alternating least squares over the three factor matrices, each restart
/// finished by a damped Gauss-Newton polish. When the fiber decomposition has
/// at most R terms it is returned directly instead.
CpResult cp_als(const Tensor3& t, int rank, const CpOptions& opts = {});

/// Exact decomposition into one term per nonzero fiber along the largest mode.
CpDecomposition fiber_decomposition(const Tensor3& t);

struct RankInterval {
  int lower = 0;
  int upper = 0;
  LowerCertificate lower_certificate = LowerCertificate::LocalRank;
  UpperCertificate upper_certificate = UpperCertificate::TermCount;
  CpDecomposition decomposition;
  double residual = 0;
  std::string note;  // numerical decompositions bound the rank only up to the residual
};

/// Lower bound from rank_lower_bound; upper bound is the least R (searched
/// upward from the lower bound) at which cp_als succeeds. A failed search
/// never raises the lower bound.
RankInterval rank_interval(const Tensor3& t, const CpOptions& opts = {});

}  // namespace slocc
