#include "slocc/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slocc/error.hpp"

namespace slocc {

namespace {

void check_mode(int mode) {
  if (mode < 1 || mode > 3) throw DomainError("mode must be 1, 2 or 3, got " + std::to_string(mode));
}

std::string dims_str(const Dims3& d) {
  return std::to_string(d[0]) + "x" + std::to_string(d[1]) + "x" + std::to_string(d[2]);
}

void check_dims(const Dims3& d) {
  if (d[0] == 0 || d[1] == 0 || d[2] == 0) throw DomainError("tensor dimensions must be positive, got " + dims_str(d));
  if (d[0] > kMaxTensorEntries || d[1] > kMaxTensorEntries || d[2] > kMaxTensorEntries ||
      d[0] * d[1] > kMaxTensorEntries || d[0] * d[1] * d[2] > kMaxTensorEntries)
    throw ResourceError("tensor " + dims_str(d) + " exceeds " + std::to_string(kMaxTensorEntries) + " entries");
}

}  // namespace

Tensor3::Tensor3(Dims3 dims) : dims_(dims) {
  check_dims(dims);
  entries_.assign(dims[0] * dims[1] * dims[2], Complex{});
}

Tensor3::Tensor3(Dims3 dims, std::vector<Complex> entries) : dims_(dims), entries_(std::move(entries)) {
  check_dims(dims);
  if (entries_.size() != dims[0] * dims[1] * dims[2])
    throw DomainError("tensor " + dims_str(dims) + " needs " + std::to_string(dims[0] * dims[1] * dims[2]) +
                      " entries, got " + std::to_string(entries_.size()));
  for (const auto& z : entries_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw DomainError("tensor entries must be finite");
}

std::size_t Tensor3::dim(int mode) const {
  check_mode(mode);
  return dims_[mode - 1];
}

double Tensor3::norm() const {
  double s = 0;
  for (const auto& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

double Tensor3::max_abs() const {
  double m = 0;
  for (const auto& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

bool Tensor3::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Complex& z) { return z == Complex{}; });
}

Tensor3 Tensor3::operator+(const Tensor3& other) const {
  if (dims_ != other.dims_) throw DomainError("cannot add tensors of different shapes");
  std::vector<Complex> e(entries_);
  for (std::size_t p = 0; p < e.size(); ++p) e[p] += other.entries_[p];
  return Tensor3(dims_, std::move(e));
}

Tensor3 Tensor3::operator-(const Tensor3& other) const { return *this + other * Complex(-1.0); }

Tensor3 Tensor3::operator*(Complex s) const {
  std::vector<Complex> e(entries_);
  for (auto& z : e) z *= s;
  return Tensor3(dims_, std::move(e));
}

Tensor3 outer(const VectorC& u, const VectorC& v, const VectorC& w) {
  Dims3 d{static_cast<std::size_t>(u.size()), static_cast<std::size_t>(v.size()),
          static_cast<std::size_t>(w.size())};
  return Tensor3::generate(d, [&](std::size_t i, std::size_t j, std::size_t k) { return u(i) * v(j) * w(k); });
}

MatrixC slice(const Tensor3& t, int mode, std::size_t index) {
  check_mode(mode);
  const auto& d = t.dims();
  if (index >= d[mode - 1])
    throw DomainError("slice index " + std::to_string(index) + " out of range for mode " + std::to_string(mode) +
                      " of a " + dims_str(d) + " tensor");
  switch (mode) {
    case 1: {
      MatrixC m(d[1], d[2]);
      for (std::size_t j = 0; j < d[1]; ++j)
        for (std::size_t k = 0; k < d[2]; ++k) m(j, k) = t(index, j, k);
      return m;
    }
    case 2: {
      MatrixC m(d[0], d[2]);
      for (std::size_t i = 0; i < d[0]; ++i)
        for (std::size_t k = 0; k < d[2]; ++k) m(i, k) = t(i, index, k);
      return m;
    }
    default: {
      MatrixC m(d[0], d[1]);
      for (std::size_t i = 0; i < d[0]; ++i)
        for (std::size_t j = 0; j < d[1]; ++j) m(i, j) = t(i, j, index);
      return m;
    }
  }
}

MatrixC unfold(const Tensor3& t, int mode) {
  check_mode(mode);
  const auto& d = t.dims();
  MatrixC m;
  switch (mode) {
    case 1:
      m.resize(d[0], d[1] * d[2]);
      break;
    case 2:
      m.resize(d[1], d[0] * d[2]);
      break;
    default:
      m.resize(d[2], d[0] * d[1]);
  }
  for (std::size_t i = 0; i < d[0]; ++i)
    for (std::size_t j = 0; j < d[1]; ++j)
      for (std::size_t k = 0; k < d[2]; ++k) {
        const Complex z = t(i, j, k);
        if (mode == 1)
          m(i, j * d[2] + k) = z;
        else if (mode == 2)
          m(j, i * d[2] + k) = z;
        else
          m(k, i * d[1] + j) = z;
      }
  return m;
}

Tensor3 fold(const MatrixC& m, int mode, Dims3 d) {
  check_mode(mode);
  const std::size_t rows = d[mode - 1];
  const std::size_t cols = d[0] * d[1] * d[2] / rows;
  if (static_cast<std::size_t>(m.rows()) != rows || static_cast<std::size_t>(m.cols()) != cols)
    throw DomainError("matrix shape does not match a mode-" + std::to_string(mode) + " unfolding of " + dims_str(d));
  return Tensor3::generate(d, [&](std::size_t i, std::size_t j, std::size_t k) {
    if (mode == 1) return m(i, j * d[2] + k);
    if (mode == 2) return m(j, i * d[2] + k);
    return m(k, i * d[1] + j);
  });
}

int numerical_rank(const MatrixC& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<MatrixC> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++r;
  return r;
}

LocalRanks local_ranks(const Tensor3& t, double tol) {
  if (!(tol > 0)) throw DomainError("rank tolerance must be positive");
  return {numerical_rank(unfold(t, 1), tol), numerical_rank(unfold(t, 2), tol), numerical_rank(unfold(t, 3), tol)};
}

bool is_product_state(const Tensor3& t, double tol) {
  if (t.is_zero()) throw DomainError("the zero tensor is not a state");
  const auto r = local_ranks(t, tol);
  return r[0] == 1 && r[1] == 1 && r[2] == 1;
}

Tensor3 kron_regroup(const Tensor3& s, const Tensor3& t, std::size_t max_size) {
  const auto& a = s.dims();
  const auto& b = t.dims();
  const Dims3 d{a[0] * b[0], a[1] * b[1], a[2] * b[2]};
  // in double: the product itself may overflow size_t
  const double total = static_cast<double>(d[0]) * static_cast<double>(d[1]) * static_cast<double>(d[2]);
  if (total > static_cast<double>(max_size))
    throw ResourceError("regrouped tensor " + dims_str(d) + " exceeds the maximum size " + std::to_string(max_size));
  return Tensor3::generate(d, [&](std::size_t i, std::size_t j, std::size_t k) {
    return s(i / b[0], j / b[1], k / b[2]) * t(i % b[0], j % b[1], k % b[2]);
  });
}

}  // namespace slocc
