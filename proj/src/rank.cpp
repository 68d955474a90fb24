#include "slocc/rank.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "slocc/error.hpp"
#include "slocc/random.hpp"

namespace slocc {

namespace {

constexpr double kHyperdetRelTol = 1e-13;
constexpr int kPolishIterations = 200;

// Row i*q + j holds x(i, r) * y(j, r).
MatrixC khatri_rao(const MatrixC& x, const MatrixC& y) {
  MatrixC z(x.rows() * y.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < y.rows(); ++j) z.row(i * y.rows() + j) = x.row(i).cwiseProduct(y.row(j));
  return z;
}

// Least-squares factor update: minimise ||unfolded - F Z^T||.
MatrixC solve_factor(const MatrixC& unfolded, const MatrixC& x, const MatrixC& y) {
  const MatrixC z = khatri_rao(x, y);
  const MatrixC g = unfolded * z.conjugate();
  const MatrixC h = (x.transpose() * x.conjugate()).cwiseProduct(y.transpose() * y.conjugate());
  Eigen::CompleteOrthogonalDecomposition<MatrixC> cod(h.transpose());
  return cod.solve(g.transpose()).transpose();
}

void balance_columns(MatrixC& a, MatrixC& b, MatrixC& c) {
  for (Eigen::Index r = 0; r < a.cols(); ++r) {
    const double na = a.col(r).norm(), nb = b.col(r).norm(), nc = c.col(r).norm();
    if (na == 0 || nb == 0 || nc == 0) continue;
    const double s = std::cbrt(na * nb * nc);
    a.col(r) *= s / na;
    b.col(r) *= s / nb;
    c.col(r) *= s / nc;
  }
}

double relative_residual(const Tensor3& t, const CpDecomposition& d) {
  const double n = t.norm();
  const double r = (t - d.reconstruct()).norm();
  return n > 0 ? r / n : r;
}

// Damped Gauss-Newton on the complex least-squares problem; the model is
// holomorphic in the factors so the normal equations stay complex. Escapes
// the slow stretches where plain alternating updates crawl.
double lm_polish(const MatrixC& t3, double tnorm, MatrixC& a, MatrixC& b, MatrixC& c, int max_iter) {
  const Eigen::Index n1 = a.rows(), n2 = b.rows(), n3 = c.rows(), r = a.cols();
  const Eigen::Index pa = n1 * r, pb = n2 * r, np = pa + pb + n3 * r, ne = n1 * n2 * n3;
  VectorC target(ne);
  for (Eigen::Index i = 0; i < n1; ++i)
    for (Eigen::Index j = 0; j < n2; ++j)
      for (Eigen::Index k = 0; k < n3; ++k) target((i * n2 + j) * n3 + k) = t3(k, i * n2 + j);
  auto residual = [&](const MatrixC& x, const MatrixC& y, const MatrixC& z) {
    VectorC e(ne);
    for (Eigen::Index i = 0; i < n1; ++i)
      for (Eigen::Index j = 0; j < n2; ++j)
        for (Eigen::Index k = 0; k < n3; ++k) {
          Complex s{};
          for (Eigen::Index q = 0; q < r; ++q) s += x(i, q) * y(j, q) * z(k, q);
          e((i * n2 + j) * n3 + k) = target((i * n2 + j) * n3 + k) - s;
        }
    return e;
  };
  VectorC e = residual(a, b, c);
  double res = e.norm();
  double lambda = -1;
  MatrixC jac(ne, np);
  for (int it = 0; it < max_iter && res > 1e-15 * tnorm; ++it) {
    jac.setZero();
    for (Eigen::Index i = 0; i < n1; ++i)
      for (Eigen::Index j = 0; j < n2; ++j)
        for (Eigen::Index k = 0; k < n3; ++k) {
          const Eigen::Index row = (i * n2 + j) * n3 + k;
          for (Eigen::Index q = 0; q < r; ++q) {
            jac(row, q * n1 + i) = b(j, q) * c(k, q);
            jac(row, pa + q * n2 + j) = a(i, q) * c(k, q);
            jac(row, pa + pb + q * n3 + k) = a(i, q) * b(j, q);
          }
        }
    const MatrixC h = jac.adjoint() * jac;
    const VectorC g = jac.adjoint() * e;
    if (lambda < 0) lambda = 1e-3 * h.diagonal().real().maxCoeff();
    bool improved = false;
    for (int tries = 0; tries < 30 && !improved; ++tries) {
      MatrixC damped = h;
      damped.diagonal().array() += lambda;
      const VectorC step = damped.ldlt().solve(g);
      MatrixC a2 = a, b2 = b, c2 = c;
      for (Eigen::Index q = 0; q < r; ++q) {
        a2.col(q) += step.segment(q * n1, n1);
        b2.col(q) += step.segment(pa + q * n2, n2);
        c2.col(q) += step.segment(pa + pb + q * n3, n3);
      }
      const VectorC e2 = residual(a2, b2, c2);
      const double res2 = e2.norm();
      if (std::isfinite(res2) && res2 < res) {
        a = a2;
        b = b2;
        c = c2;
        e = e2;
        res = res2;
        lambda = std::max(lambda / 3, 1e-15);
        improved = true;
      } else {
        lambda *= 4;
      }
    }
    if (!improved) break;
    balance_columns(a, b, c);
  }
  return res / tnorm;
}

// 2 x n matrix whose rows span the dominant left singular space of the
// mode-m unfolding (zero rows when n < 2).
MatrixC compressor(const Tensor3& t, int mode) {
  const MatrixC u = unfold(t, mode);
  Eigen::JacobiSVD<MatrixC> svd(u, Eigen::ComputeFullU);
  MatrixC out = MatrixC::Zero(2, u.rows());
  for (Eigen::Index r = 0; r < std::min<Eigen::Index>(2, u.rows()); ++r) out.row(r) = svd.matrixU().col(r).adjoint();
  return out;
}

}  // namespace

Complex hyperdeterminant(const Tensor3& t) {
  if (t.dims() != Dims3{2, 2, 2}) throw DomainError("hyperdeterminant needs a 2x2x2 tensor");
  auto a = [&](int i, int j, int k) { return t(i, j, k); };
  const Complex a000 = a(0, 0, 0), a001 = a(0, 0, 1), a010 = a(0, 1, 0), a011 = a(0, 1, 1);
  const Complex a100 = a(1, 0, 0), a101 = a(1, 0, 1), a110 = a(1, 1, 0), a111 = a(1, 1, 1);
  const Complex sq = a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 + a010 * a010 * a101 * a101 +
                     a100 * a100 * a011 * a011;
  const Complex mixed = a000 * a001 * a110 * a111 + a000 * a010 * a101 * a111 + a000 * a100 * a011 * a111 +
                        a001 * a010 * a101 * a110 + a001 * a100 * a011 * a110 + a010 * a100 * a011 * a101;
  const Complex quad = a000 * a011 * a101 * a110 + a001 * a010 * a100 * a111;
  return sq - 2.0 * mixed + 4.0 * quad;
}

std::string to_string(Class222 c) {
  switch (c) {
    case Class222::Zero: return "Zero";
    case Class222::Product: return "Product";
    case Class222::BiSeparableA: return "BiSeparable-A";
    case Class222::BiSeparableB: return "BiSeparable-B";
    case Class222::BiSeparableC: return "BiSeparable-C";
    case Class222::GHZ: return "GHZ";
    case Class222::W: return "W";
  }
  return "?";
}

Class222 classify_222(const Tensor3& t, double tol) {
  if (t.dims() != Dims3{2, 2, 2}) throw DomainError("classify_222 needs a 2x2x2 tensor");
  if (t.is_zero()) return Class222::Zero;
  const auto r = local_ranks(t, tol);
  const int ones = static_cast<int>(std::count(r.begin(), r.end(), 1));
  if (ones == 3) return Class222::Product;
  if (ones == 1) {
    if (r[0] == 1) return Class222::BiSeparableA;
    if (r[1] == 1) return Class222::BiSeparableB;
    return Class222::BiSeparableC;
  }
  const double n2 = t.norm() * t.norm();
  return std::abs(hyperdeterminant(t)) > kHyperdetRelTol * n2 * n2 ? Class222::GHZ : Class222::W;
}

int rank_of(Class222 c) {
  switch (c) {
    case Class222::Zero: return 0;
    case Class222::Product: return 1;
    case Class222::W: return 3;
    default: return 2;
  }
}

std::string to_string(LowerCertificate c) { return c == LowerCertificate::LocalRank ? "LocalRank" : "Classifier222"; }

std::string to_string(UpperCertificate c) { return c == UpperCertificate::Decomposition ? "Decomposition" : "TermCount"; }

RankLowerBound rank_lower_bound(const Tensor3& t, double tol) {
  if (t.is_zero()) throw DomainError("rank bounds need a nonzero tensor");
  const auto r = local_ranks(t, tol);
  RankLowerBound out;
  out.value = *std::max_element(r.begin(), r.end());
  if (out.value <= 2) {
    Tensor3 core = t;
    for (int mode = 1; mode <= 3; ++mode) core = apply_mode(core, mode, compressor(t, mode));
    const Class222 c = classify_222(core, tol);
    out.value = rank_of(c);
    out.certificate = LowerCertificate::Classifier222;
    out.class222 = c;
  }
  return out;
}

Tensor3 CpDecomposition::reconstruct() const {
  const Dims3 dims{static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(b.rows()),
                   static_cast<std::size_t>(c.rows())};
  // mode-3 unfolding of the sum is C (A ⊙ B)^T
  const MatrixC u = c * khatri_rao(a, b).transpose();
  return fold(u, 3, dims);
}

CpDecomposition map_decomposition(const CpDecomposition& d, const SloccMap& m) {
  if (m.a.cols() != d.a.rows() || m.b.cols() != d.b.rows() || m.c.cols() != d.c.rows())
    throw DomainError("local map does not match the decomposition's dimensions");
  return {m.a * d.a, m.b * d.b, m.c * d.c};
}

CpDecomposition fiber_decomposition(const Tensor3& t) {
  const auto& d = t.dims();
  int mode = 1;
  for (int m = 2; m <= 3; ++m)
    if (d[m - 1] > d[mode - 1]) mode = m;
  const MatrixC u = unfold(t, mode);
  // the other two modes in ascending order; column index = p * n_q + q
  std::array<int, 2> others{};
  int w = 0;
  for (int m = 1; m <= 3; ++m)
    if (m != mode) others[w++] = m;
  const auto nq = static_cast<Eigen::Index>(d[others[1] - 1]);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index col = 0; col < u.cols(); ++col)
    if (!u.col(col).isZero(0.0)) cols.push_back(col);
  if (cols.empty()) cols.push_back(0);  // zero tensor: one zero term
  const auto r = static_cast<Eigen::Index>(cols.size());
  std::array<MatrixC, 3> f{MatrixC::Zero(static_cast<Eigen::Index>(d[0]), r),
                           MatrixC::Zero(static_cast<Eigen::Index>(d[1]), r),
                           MatrixC::Zero(static_cast<Eigen::Index>(d[2]), r)};
  for (Eigen::Index s = 0; s < r; ++s) {
    const Eigen::Index col = cols[static_cast<std::size_t>(s)];
    f[mode - 1].col(s) = u.col(col);
    f[others[0] - 1](col / nq, s) = 1.0;
    f[others[1] - 1](col % nq, s) = 1.0;
  }
  return {f[0], f[1], f[2]};
}

CpResult cp_als(const Tensor3& t, int rank, const CpOptions& opts) {
  if (rank < 1) throw DomainError("decomposition rank must be at least 1");
  if (opts.restarts < 1 || opts.max_iter < 1 || !(opts.tol > 0))
    throw DomainError("restarts, iterations and tolerance must be positive");
  CpResult best;
  const CpDecomposition direct = fiber_decomposition(t);
  if (direct.terms() <= rank) {
    best.factors = direct;
    best.residual = relative_residual(t, direct);
    best.success = best.residual < opts.tol;
    return best;
  }
  const auto& d = t.dims();
  const auto n1 = static_cast<Eigen::Index>(d[0]), n2 = static_cast<Eigen::Index>(d[1]),
             n3 = static_cast<Eigen::Index>(d[2]);
  const MatrixC t1 = unfold(t, 1), t2 = unfold(t, 2), t3 = unfold(t, 3);
  const double tnorm = t.norm();
  best.residual = std::numeric_limits<double>::infinity();

  for (int restart = 0; restart < opts.restarts; ++restart) {
    Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(restart)));
    MatrixC a = rng.complex_matrix(n1, rank);
    MatrixC b = rng.complex_matrix(n2, rank);
    MatrixC c = rng.complex_matrix(n3, rank);
    double prev = std::numeric_limits<double>::infinity();
    double res = prev;
    int it = 0;
    for (; it < opts.max_iter; ++it) {
      a = solve_factor(t1, b, c);
      b = solve_factor(t2, a, c);
      c = solve_factor(t3, a, b);
      balance_columns(a, b, c);
      res = (t3 - c * khatri_rao(a, b).transpose()).norm() / tnorm;
      if (!std::isfinite(res)) break;
      if (res < 1e-14 || std::abs(prev - res) < 1e-12) break;
      prev = res;
    }
    if (!std::isfinite(res)) continue;
    if (res >= 1e-14) lm_polish(t3, tnorm, a, b, c, kPolishIterations);
    const CpDecomposition dec{a, b, c};
    res = relative_residual(t, dec);
    if (res < best.residual) {
      best.factors = dec;
      best.residual = res;
      best.restart = restart;
      best.iterations = it;
    }
    if (res < opts.tol) {
      best.success = true;
      return best;
    }
  }
  if (!std::isfinite(best.residual)) throw NumericError("alternating least squares diverged on every restart");
  return best;
}

RankInterval rank_interval(const Tensor3& t, const CpOptions& opts) {
  const RankLowerBound lb = rank_lower_bound(t);
  RankInterval out;
  out.lower = lb.value;
  out.lower_certificate = lb.certificate;
  for (int r = lb.value;; ++r) {
    const CpResult res = cp_als(t, r, opts);
    if (!res.success) continue;
    out.upper = r;
    out.decomposition = res.factors;
    out.residual = res.residual;
    out.upper_certificate = res.restart < 0 ? UpperCertificate::TermCount : UpperCertificate::Decomposition;
    break;
  }
  if (out.upper_certificate == UpperCertificate::Decomposition) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "numerical rank <= %d at relative residual %.3g", out.upper, out.residual);
    out.note = buf;
  } else {
    out.note = "exact decomposition with one term per nonzero fiber";
  }
  return out;
}

}  // namespace slocc
