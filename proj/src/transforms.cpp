#include "slocc/transforms.hpp"

#include <limits>
#include <string>

#include "slocc/error.hpp"
#include "slocc/random.hpp"

namespace slocc {

SloccMap SloccMap::identity(Dims3 dims) {
  return {MatrixC::Identity(dims[0], dims[0]), MatrixC::Identity(dims[1], dims[1]),
          MatrixC::Identity(dims[2], dims[2])};
}

bool SloccMap::is_invertible(double tol) const {
  return is_nonsingular(a, tol) && is_nonsingular(b, tol) && is_nonsingular(c, tol);
}

SloccMap SloccMap::inverse() const {
  if (!is_invertible()) throw DomainError("SLOCC map has a singular factor");
  return {a.inverse(), b.inverse(), c.inverse()};
}

bool is_nonsingular(const MatrixC& m, double tol) {
  if (m.rows() != m.cols() || m.size() == 0) return false;
  Eigen::JacobiSVD<MatrixC> svd(m);
  const auto& s = svd.singularValues();
  return s(0) > 0 && s(s.size() - 1) > tol * s(0);
}

double condition_number(const MatrixC& m) {
  Eigen::JacobiSVD<MatrixC> svd(m);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  return smin > 0 ? s(0) / smin : std::numeric_limits<double>::infinity();
}

Tensor3 apply_mode(const Tensor3& t, int mode, const MatrixC& m) {
  const auto& d = t.dims();
  const std::size_t n = t.dim(mode);
  if (static_cast<std::size_t>(m.cols()) != n)
    throw DomainError("mode-" + std::to_string(mode) + " factor has " + std::to_string(m.cols()) +
                      " columns but the tensor dimension is " + std::to_string(n));
  Dims3 out_dims = d;
  out_dims[mode - 1] = static_cast<std::size_t>(m.rows());
  const MatrixC u = m * unfold(t, mode);
  return fold(u, mode, out_dims);
}

Tensor3 apply_slocc(const Tensor3& t, const SloccMap& m) {
  return apply_mode(apply_mode(apply_mode(t, 1, m.a), 2, m.b), 3, m.c);
}

Tensor3 apply_type1(const Tensor3& t, const MatrixC& p, const MatrixC& q) {
  const auto& d = t.dims();
  if (p.rows() != p.cols() || static_cast<std::size_t>(p.rows()) != d[0] || q.rows() != q.cols() ||
      static_cast<std::size_t>(q.rows()) != d[1])
    throw DomainError("type-1 factors must be square and match the slice shape");
  if (!is_nonsingular(p) || !is_nonsingular(q)) throw DomainError("type-1 factors must be nonsingular");
  // X -> P X Q is the mode-1 action of P and the mode-2 action of Q^T.
  return apply_mode(apply_mode(t, 1, p), 2, q.transpose());
}

Tensor3 apply_type2(const Tensor3& t, const MatrixC& g) {
  const std::size_t n3 = t.dims()[2];
  if (g.rows() != g.cols() || static_cast<std::size_t>(g.rows()) != n3)
    throw DomainError("type-2 matrix must be " + std::to_string(n3) + "x" + std::to_string(n3));
  if (!is_nonsingular(g)) throw DomainError("type-2 matrix must be nonsingular");
  // new slice j takes column j of G
  return apply_mode(t, 3, g.transpose());
}

MatrixC random_nonsingular(Eigen::Index dim, std::uint64_t seed, double cond_bound, int max_tries) {
  if (dim < 1) throw DomainError("matrix dimension must be at least 1");
  if (!(cond_bound > 1.0)) throw DomainError("condition bound must exceed 1");
  Rng rng(seed);
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    MatrixC m = rng.complex_matrix(dim, dim);
    if (condition_number(m) <= cond_bound) return m;
  }
  throw NumericError("no matrix with condition number <= " + std::to_string(cond_bound) + " after " +
                     std::to_string(max_tries) + " samples");
}

SloccMap random_slocc(Dims3 dims, std::uint64_t seed, double cond_bound) {
  return {random_nonsingular(static_cast<Eigen::Index>(dims[0]), derive_seed(seed, 0), cond_bound),
          random_nonsingular(static_cast<Eigen::Index>(dims[1]), derive_seed(seed, 1), cond_bound),
          random_nonsingular(static_cast<Eigen::Index>(dims[2]), derive_seed(seed, 2), cond_bound)};
}

}  // namespace slocc
