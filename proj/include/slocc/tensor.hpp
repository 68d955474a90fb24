#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace slocc {

using Complex = std::complex<double>;
using MatrixC = Eigen::MatrixXcd;
using VectorC = Eigen::VectorXcd;
using Dims3 = std::array<std::size_t, 3>;
using LocalRanks = std::array<int, 3>;

inline constexpr double kDefaultRankTol = 1e-9;
inline constexpr std::size_t kDefaultMaxTensorSize = 1'000'000;
inline constexpr std::size_t kMaxTensorEntries = std::size_t{1} << 24;  // hard cap; ResourceError beyond

/// Dense complex 3-way array. Entry (i,j,k) lives at flat position
/// i*n2*n3 + j*n3 + k. Entries are always finite.
class Tensor3 {
 public:
  /// Zero tensor of the given shape.
  explicit Tensor3(Dims3 dims);
  Tensor3(Dims3 dims, std::vector<Complex> entries);

  template <class F>
  static Tensor3 generate(Dims3 dims, F&& f) {
    std::vector<Complex> e(dims[0] * dims[1] * dims[2]);
    std::size_t p = 0;
    for (std::size_t i = 0; i < dims[0]; ++i)
      for (std::size_t j = 0; j < dims[1]; ++j)
        for (std::size_t k = 0; k < dims[2]; ++k) e[p++] = f(i, j, k);
    return Tensor3(dims, std::move(e));
  }

  const Dims3& dims() const noexcept { return dims_; }
  std::size_t dim(int mode) const;  // mode in {1,2,3}
  std::size_t size() const noexcept { return entries_.size(); }
  std::span<const Complex> entries() const noexcept { return entries_; }

  std::size_t offset(std::size_t i, std::size_t j, std::size_t k) const noexcept {
    return (i * dims_[1] + j) * dims_[2] + k;
  }
  const Complex& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return entries_[offset(i, j, k)];
  }

  double norm() const;
  double max_abs() const;
  bool is_zero() const;

  Tensor3 operator+(const Tensor3& other) const;
  Tensor3 operator-(const Tensor3& other) const;
  Tensor3 operator*(Complex s) const;

  friend bool operator==(const Tensor3&, const Tensor3&) = default;

 private:
  Dims3 dims_;
  std::vector<Complex> entries_;
};

/// u ⊗ v ⊗ w.
Tensor3 outer(const VectorC& u, const VectorC& v, const VectorC& w);

/// Slice with the `mode`-th index fixed to `index`. Mode 1 gives an n2×n3
/// matrix, mode 2 an n1×n3 matrix, mode 3 an n1×n2 matrix.
MatrixC slice(const Tensor3& t, int mode, std::size_t index);

/// Mode-m unfolding: dims[m] rows; columns run over the remaining two
/// indices in ascending mode order, the later one fastest.
MatrixC unfold(const Tensor3& t, int mode);

/// Inverse of unfold.
Tensor3 fold(const MatrixC& m, int mode, Dims3 dims);

/// Count of singular values above tol times the largest one; 0 for a zero matrix.
int numerical_rank(const MatrixC& m, double tol = kDefaultRankTol);

LocalRanks local_ranks(const Tensor3& t, double tol = kDefaultRankTol);

/// True iff every unfolding has numerical rank 1. Throws DomainError on zero.
bool is_product_state(const Tensor3& t, double tol = kDefaultRankTol);

/// Multi-copy regrouping: party p of the result is party p of s combined
/// with party p of t, combined index i*t.n1 + i'.
Tensor3 kron_regroup(const Tensor3& s, const Tensor3& t,
                     std::size_t max_size = kDefaultMaxTensorSize);

}  // namespace slocc
