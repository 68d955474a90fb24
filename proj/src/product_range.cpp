#include "slocc/product_range.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slocc/error.hpp"
#include "slocc/random.hpp"

namespace slocc {

namespace {

constexpr double kMinorTol = 1e-7;      // max |2x2 minor| of a unit-norm matrix
constexpr double kDedupTol = 1e-7;      // 1 - |<a,b>| below this: same vector up to scale
constexpr double kIndependenceTol = 1e-8;

struct Quadratic {
  Complex c2, c1, c0;  // c2 t^2 + c1 t + c0
};

// 2x2 minors of t*m1 + m2 as quadratics in t.
std::vector<Quadratic> pencil_minors(const MatrixC& m1, const MatrixC& m2) {
  std::vector<Quadratic> out;
  for (Eigen::Index a = 0; a < m1.rows(); ++a)
    for (Eigen::Index b = a + 1; b < m1.rows(); ++b)
      for (Eigen::Index c = 0; c < m1.cols(); ++c)
        for (Eigen::Index d = c + 1; d < m1.cols(); ++d) {
          Quadratic q;
          q.c2 = m1(a, c) * m1(b, d) - m1(a, d) * m1(b, c);
          q.c1 = m1(a, c) * m2(b, d) + m2(a, c) * m1(b, d) - m1(a, d) * m2(b, c) - m2(a, d) * m1(b, c);
          q.c0 = m2(a, c) * m2(b, d) - m2(a, d) * m2(b, c);
          out.push_back(q);
        }
  return out;
}

double max_minor(const MatrixC& x) {
  const double n2 = x.squaredNorm();
  if (n2 == 0) return 0;
  double m = 0;
  for (Eigen::Index a = 0; a < x.rows(); ++a)
    for (Eigen::Index b = a + 1; b < x.rows(); ++b)
      for (Eigen::Index c = 0; c < x.cols(); ++c)
        for (Eigen::Index d = c + 1; d < x.cols(); ++d)
          m = std::max(m, std::abs(x(a, c) * x(b, d) - x(a, d) * x(b, c)));
  return m / n2;
}

ProductVector split_rank_one(const MatrixC& x) {
  Eigen::JacobiSVD<MatrixC> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  ProductVector pv;
  pv.u = svd.matrixU().col(0) * svd.singularValues()(0);
  pv.v = svd.matrixV().col(0).conjugate();
  return pv;
}

// Adds x (rank one) unless it matches an already collected vector up to scale.
void collect(std::vector<MatrixC>& found, const MatrixC& x) {
  const MatrixC unit = x / x.norm();
  for (const auto& f : found) {
    const double overlap = std::abs((f.conjugate().cwiseProduct(unit)).sum());
    if (1.0 - overlap < kDedupTol) return;
  }
  found.push_back(unit);
}

ProductVectorReport make_report(const std::vector<MatrixC>& found, Exactness ex, bool continuum) {
  ProductVectorReport r;
  r.exactness = ex;
  r.continuum = continuum;
  if (found.empty()) return r;
  MatrixC span(found.front().size(), static_cast<Eigen::Index>(found.size()));
  for (std::size_t i = 0; i < found.size(); ++i) {
    r.vectors.push_back(split_rank_one(found[i]));
    span.col(static_cast<Eigen::Index>(i)) = flatten_matrix(found[i]);
  }
  r.independent_count = numerical_rank(span, kIndependenceTol);
  return r;
}

// Gauss-Newton on all minors of (m1 + s*m2) in the chart s = beta/alpha, or
// of (t*m1 + m2) with t = alpha/beta; returns the refined matrix.
MatrixC refine_pencil_point(const MatrixC& m1, const MatrixC& m2, Complex alpha, Complex beta) {
  const bool first_chart = std::abs(alpha) >= std::abs(beta);
  const MatrixC& base = first_chart ? m1 : m2;
  const MatrixC& dir = first_chart ? m2 : m1;
  Complex s = first_chart ? beta / alpha : alpha / beta;
  const auto minors = pencil_minors(dir, base);  // minors of s*dir + base
  auto eval = [&](Complex x, VectorC& r, VectorC& dr) {
    r.resize(static_cast<Eigen::Index>(minors.size()));
    dr.resize(r.size());
    for (std::size_t i = 0; i < minors.size(); ++i) {
      const auto& q = minors[i];
      r(static_cast<Eigen::Index>(i)) = (q.c2 * x + q.c1) * x + q.c0;
      dr(static_cast<Eigen::Index>(i)) = 2.0 * q.c2 * x + q.c1;
    }
  };
  VectorC r, dr;
  eval(s, r, dr);
  for (int it = 0; it < 60; ++it) {
    const double den = dr.squaredNorm();
    if (den == 0) break;
    const Complex step = dr.dot(r) / den;  // dot conjugates the first argument
    VectorC r2, dr2;
    eval(s - step, r2, dr2);
    if (!(r2.squaredNorm() < r.squaredNorm())) break;
    s -= step;
    r = r2;
    dr = dr2;
  }
  return MatrixC(s * dir + base);
}

std::vector<Complex> quadratic_roots(const Quadratic& q) {
  const double scale = std::max({std::abs(q.c2), std::abs(q.c1), std::abs(q.c0)});
  const double eps = 1e-12 * scale;
  if (std::abs(q.c2) > eps) {
    const Complex disc = std::sqrt(q.c1 * q.c1 - 4.0 * q.c2 * q.c0);
    // pick the sign that avoids cancellation
    const Complex qq = -0.5 * (q.c1 + (std::real(std::conj(q.c1) * disc) >= 0 ? disc : -disc));
    std::vector<Complex> roots;
    if (qq != Complex{}) {
      roots.push_back(qq / q.c2);
      roots.push_back(q.c0 / qq);
    } else {
      roots.push_back(Complex{});
      roots.push_back(Complex{});
    }
    return roots;
  }
  if (std::abs(q.c1) > eps) return {-q.c0 / q.c1};
  return {};
}

ProductVectorReport pencil_search(const MatrixC& m1, const MatrixC& m2) {
  std::vector<MatrixC> found;
  if (m1.rows() == 1 || m1.cols() == 1) {
    // every nonzero member is rank one
    for (const auto& [a, b] : std::vector<std::pair<Complex, Complex>>{{1, 0}, {0, 1}, {1, 1}})
      collect(found, a * m1 + b * m2);
    return make_report(found, Exactness::Exact, true);
  }
  const auto minors = pencil_minors(m1, m2);
  double scale = 0;
  const Quadratic* best = nullptr;
  double best_norm = -1;
  for (const auto& q : minors) {
    const double n = std::sqrt(std::norm(q.c2) + std::norm(q.c1) + std::norm(q.c0));
    scale = std::max(scale, n);
    if (n > best_norm) {
      best_norm = n;
      best = &q;
    }
  }
  if (scale < 1e-12) {
    // every member of the pencil is rank one
    for (const auto& [a, b] : std::vector<std::pair<Complex, Complex>>{{1, 0}, {0, 1}, {1, 1}, {1, -1}})
      collect(found, a * m1 + b * m2);
    return make_report(found, Exactness::Exact, true);
  }
  if (max_minor(m1) < kMinorTol) collect(found, m1);  // the point t = infinity
  for (const Complex t : quadratic_roots(*best)) {
    if (!std::isfinite(t.real()) || !std::isfinite(t.imag())) continue;
    const double nrm = std::sqrt(1.0 + std::norm(t));
    const MatrixC x = refine_pencil_point(m1, m2, t / nrm, 1.0 / nrm);
    if (x.norm() > 0 && max_minor(x) < kMinorTol) collect(found, x);
  }
  return make_report(found, Exactness::Exact, false);
}

ProductVectorReport projection_search(const std::vector<MatrixC>& q, const ProductSearchOptions& opts) {
  std::vector<MatrixC> found;
  const Eigen::Index k = static_cast<Eigen::Index>(q.size());
  for (int start = 0; start < opts.starts; ++start) {
    Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(start)));
    VectorC c = rng.complex_vector(k);
    MatrixC x = MatrixC::Zero(q.front().rows(), q.front().cols());
    for (Eigen::Index i = 0; i < k; ++i) x += c(i) * q[static_cast<std::size_t>(i)];
    for (int it = 0; it < 2000; ++it) {
      Eigen::JacobiSVD<MatrixC> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const auto& sv = svd.singularValues();
      if (sv(0) == 0) break;
      if (sv.size() < 2 || sv(1) < 1e-14 * sv(0)) break;
      const MatrixC y = sv(0) * svd.matrixU().col(0) * svd.matrixV().col(0).adjoint();
      MatrixC next = MatrixC::Zero(x.rows(), x.cols());
      for (const auto& b : q) next += (b.conjugate().cwiseProduct(y)).sum() * b;
      const double n = next.norm();
      if (n == 0) break;
      x = next / n;
    }
    if (x.norm() > 0 && max_minor(x) < kMinorTol) collect(found, x);
  }
  return make_report(found, Exactness::LowerBound, false);
}

}  // namespace

MatrixSubspace::MatrixSubspace(Eigen::Index rows, Eigen::Index cols, std::vector<MatrixC> basis)
    : rows_(rows), cols_(cols), basis_(std::move(basis)) {
  if (rows < 1 || cols < 1) throw DomainError("subspace matrix shape must be positive");
  if (basis_.empty() || static_cast<Eigen::Index>(basis_.size()) > rows * cols)
    throw DomainError("subspace dimension must lie between 1 and rows*cols");
  MatrixC gram_cols(rows * cols, static_cast<Eigen::Index>(basis_.size()));
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (basis_[i].rows() != rows || basis_[i].cols() != cols) throw DomainError("basis matrix has the wrong shape");
    gram_cols.col(static_cast<Eigen::Index>(i)) = flatten_matrix(basis_[i]);
  }
  if (numerical_rank(gram_cols, 1e-9) != static_cast<int>(basis_.size()))
    throw DomainError("subspace basis is linearly dependent");
}

std::vector<MatrixC> MatrixSubspace::orthonormal_basis() const {
  MatrixC cols(rows_ * cols_, static_cast<Eigen::Index>(basis_.size()));
  for (std::size_t i = 0; i < basis_.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = flatten_matrix(basis_[i]);
  Eigen::HouseholderQR<MatrixC> qr(cols);
  const MatrixC q = qr.householderQ() * MatrixC::Identity(cols.rows(), cols.cols());
  std::vector<MatrixC> out;
  for (Eigen::Index i = 0; i < q.cols(); ++i) out.push_back(reshape_vector(q.col(i), rows_, cols_));
  return out;
}

MatrixC reshape_vector(const VectorC& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) throw DomainError("vector length does not match the matrix shape");
  MatrixC m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
  return m;
}

VectorC flatten_matrix(const MatrixC& m) {
  VectorC v(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

std::string to_string(Exactness e) { return e == Exactness::Exact ? "Exact" : "LowerBound"; }

std::string to_string(RangeVerdict v) { return v == RangeVerdict::Inequivalent ? "Inequivalent" : "Inconclusive"; }

ProductVectorReport find_product_vectors(const MatrixSubspace& s, const ProductSearchOptions& opts) {
  const auto q = s.orthonormal_basis();
  if (q.size() == 1) {
    std::vector<MatrixC> found;
    Eigen::JacobiSVD<MatrixC> svd(q.front());
    const auto& sv = svd.singularValues();
    if (sv.size() < 2 || sv(1) <= opts.tol * sv(0)) collect(found, q.front());
    return make_report(found, Exactness::Exact, false);
  }
  if (q.size() == 2) return pencil_search(q[0], q[1]);
  return projection_search(q, opts);
}

ProductVectorReport range_product_count(const PureState& state, std::size_t traced_party,
                                        const ProductSearchOptions& opts) {
  if (state.party_dims().size() != 3) throw DomainError("range_product_count needs a tripartite state");
  if (traced_party > 2) throw DomainError("traced party must be 0, 1 or 2");
  const Tensor3 t = state.to_tensor();
  const auto& d = t.dims();
  Eigen::Index rows = 0, cols = 0;
  switch (traced_party) {
    case 0:
      rows = static_cast<Eigen::Index>(d[1]);
      cols = static_cast<Eigen::Index>(d[2]);
      break;
    case 1:
      rows = static_cast<Eigen::Index>(d[0]);
      cols = static_cast<Eigen::Index>(d[2]);
      break;
    default:
      rows = static_cast<Eigen::Index>(d[0]);
      cols = static_cast<Eigen::Index>(d[1]);
  }
  // range of the reduced density = column space of the transposed unfolding
  // of the traced party, since rho = Psi Psi^H
  const MatrixC psi = unfold(t, static_cast<int>(traced_party) + 1).transpose();
  Eigen::JacobiSVD<MatrixC> svd(psi, Eigen::ComputeThinU);
  const int k = numerical_rank(psi, kDefaultRankTol);
  std::vector<MatrixC> basis;
  for (int i = 0; i < k; ++i) basis.push_back(reshape_vector(svd.matrixU().col(i), rows, cols));
  return find_product_vectors(MatrixSubspace(rows, cols, std::move(basis)), opts);
}

RangeComparison range_criterion_compare(const PureState& s1, const PureState& s2, std::size_t traced_party,
                                        const ProductSearchOptions& opts) {
  if (s1.party_dims() != s2.party_dims()) throw DomainError("states must have the same party dimensions");
  RangeComparison out;
  out.ranks1 = local_ranks(s1.to_tensor());
  out.ranks2 = local_ranks(s2.to_tensor());
  if (out.ranks1 != out.ranks2) {
    out.verdict = RangeVerdict::Inequivalent;
    out.reason = "local ranks differ";
    return out;
  }
  out.report1 = range_product_count(s1, traced_party, opts);
  out.report2 = range_product_count(s2, traced_party, opts);
  if (out.report1.exactness == Exactness::Exact && out.report2.exactness == Exactness::Exact &&
      out.report1.independent_count != out.report2.independent_count) {
    out.verdict = RangeVerdict::Inequivalent;
    out.reason = "numbers of independent product vectors in the range differ (" +
                 std::to_string(out.report1.independent_count) + " vs " +
                 std::to_string(out.report2.independent_count) + ")";
    return out;
  }
  out.verdict = RangeVerdict::Inconclusive;
  out.reason = out.report1.exactness == Exactness::Exact && out.report2.exactness == Exactness::Exact
                   ? "local ranks and product-vector counts agree"
                   : "product-vector count is only a lower bound";
  return out;
}

}  // namespace slocc
