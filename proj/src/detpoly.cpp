#include "slocc/detpoly.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>

#include "slocc/error.hpp"
#include "slocc/random.hpp"
#include "slocc/transforms.hpp"

namespace slocc {

// ---------------------------------------------------------------------------
// HomPoly3

HomPoly3::HomPoly3(int degree) : degree_(degree) {
  if (degree < 0) throw DomainError("polynomial degree must be nonnegative");
}

HomPoly3 HomPoly3::constant(Complex c) {
  HomPoly3 p(0);
  p.add_term({0, 0, 0}, c);
  return p;
}

HomPoly3 HomPoly3::linear(Complex cx, Complex cy, Complex cz) {
  HomPoly3 p(1);
  p.add_term({1, 0, 0}, cx);
  p.add_term({0, 1, 0}, cy);
  p.add_term({0, 0, 1}, cz);
  return p;
}

std::vector<Exponent> HomPoly3::monomials(int degree) {
  std::vector<Exponent> out;
  out.reserve(static_cast<std::size_t>(monomial_count(degree)));
  for (int p = degree; p >= 0; --p)
    for (int q = degree - p; q >= 0; --q) out.push_back({p, q, degree - p - q});
  return out;
}

HomPoly3 HomPoly3::from_dense(int degree, const VectorC& coeffs) {
  const auto mons = monomials(degree);
  if (static_cast<std::size_t>(coeffs.size()) != mons.size())
    throw DomainError("dense coefficient vector has the wrong length for degree " + std::to_string(degree));
  HomPoly3 p(degree);
  for (std::size_t m = 0; m < mons.size(); ++m) p.add_term(mons[m], coeffs(static_cast<Eigen::Index>(m)));
  return p;
}

Complex HomPoly3::coeff(const Exponent& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? Complex{} : it->second;
}

void HomPoly3::add_term(const Exponent& e, Complex c) {
  if (e[0] < 0 || e[1] < 0 || e[2] < 0 || e[0] + e[1] + e[2] != degree_)
    throw DomainError("exponent does not match the polynomial degree " + std::to_string(degree_));
  if (c == Complex{}) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{}) terms_.erase(it);
  }
}

double HomPoly3::max_abs() const {
  double m = 0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

VectorC HomPoly3::dense() const {
  const auto mons = monomials(degree_);
  VectorC v(static_cast<Eigen::Index>(mons.size()));
  for (std::size_t m = 0; m < mons.size(); ++m) v(static_cast<Eigen::Index>(m)) = coeff(mons[m]);
  return v;
}

Complex HomPoly3::evaluate(Complex x, Complex y, Complex z) const {
  Complex s{};
  for (const auto& [e, c] : terms_) s += c * std::pow(x, e[0]) * std::pow(y, e[1]) * std::pow(z, e[2]);
  return s;
}

HomPoly3 HomPoly3::derivative(int var) const {
  if (degree_ < 1) throw DomainError("cannot differentiate a degree-0 polynomial");
  if (var < 0 || var > 2) throw DomainError("variable index must be 0, 1 or 2");
  HomPoly3 d(degree_ - 1);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent f = e;
    --f[var];
    d.add_term(f, c * static_cast<double>(e[var]));
  }
  return d;
}

HomPoly3 HomPoly3::operator+(const HomPoly3& o) const {
  if (o.degree_ != degree_) throw DomainError("cannot add polynomials of different degrees");
  HomPoly3 r(*this);
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

HomPoly3 HomPoly3::operator-(const HomPoly3& o) const { return *this + o * Complex(-1.0); }

HomPoly3 HomPoly3::operator*(const HomPoly3& o) const {
  HomPoly3 r(degree_ + o.degree_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) r.add_term({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}, c1 * c2);
  return r;
}

HomPoly3 HomPoly3::operator*(Complex s) const {
  HomPoly3 r(degree_);
  if (s == Complex{}) return r;
  for (const auto& [e, c] : terms_) r.add_term(e, c * s);
  return r;
}

// ---------------------------------------------------------------------------
// determinant polynomial

namespace {

void check_square_three_slices(const Tensor3& t) {
  const auto& d = t.dims();
  if (d[0] != d[1]) throw DomainError("determinant polynomial needs square slices (n1 == n2)");
  if (d[2] != 3) throw DomainError("determinant polynomial needs exactly three mode-3 slices");
}

// Laplace expansion along the last row, memoised over column subsets.
HomPoly3 det_cofactor(const Tensor3& t) {
  const int n = static_cast<int>(t.dims()[0]);
  std::vector<HomPoly3> minors(std::size_t{1} << n, HomPoly3(0));
  minors[0] = HomPoly3::constant(1.0);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    const int r = std::popcount(mask);
    const std::size_t row = static_cast<std::size_t>(r - 1);
    HomPoly3 acc(r);
    int idx = 0;
    for (int c = 0; c < n; ++c) {
      if (!(mask & (1u << c))) continue;
      const std::size_t col = static_cast<std::size_t>(c);
      const HomPoly3 entry = HomPoly3::linear(t(row, col, 0), t(row, col, 1), t(row, col, 2));
      const double sign = ((r - 1 + idx) % 2 == 0) ? 1.0 : -1.0;
      acc = acc + entry * minors[mask & ~(1u << c)] * Complex(sign);
      ++idx;
    }
    minors[mask] = std::move(acc);
  }
  return minors[(1u << n) - 1];
}

// Dehomogenise at x = 1 and interpolate on the principal lattice
// {(s_a, t_b) : a + b <= n}, which is unisolvent for total degree n.
HomPoly3 det_interpolate(const Tensor3& t) {
  const int n = static_cast<int>(t.dims()[0]);
  const MatrixC a = slice(t, 3, 0), b = slice(t, 3, 1), c = slice(t, 3, 2);
  const auto mons = HomPoly3::monomials(n);
  const Eigen::Index m = static_cast<Eigen::Index>(mons.size());
  std::vector<Complex> ys, zs;
  for (int k = 0; k <= n; ++k) {
    ys.push_back(std::polar(1.0, 2.0 * M_PI * k / (n + 1)));
    zs.push_back(std::polar(1.0, 2.0 * M_PI * (k + 0.5) / (n + 1)));
  }
  MatrixC vander(m, m);
  VectorC rhs(m);
  Eigen::Index row = 0;
  for (int ia = 0; ia <= n; ++ia)
    for (int ib = 0; ia + ib <= n; ++ib, ++row) {
      const Complex y = ys[static_cast<std::size_t>(ia)], z = zs[static_cast<std::size_t>(ib)];
      for (Eigen::Index col = 0; col < m; ++col) {
        const auto& e = mons[static_cast<std::size_t>(col)];
        vander(row, col) = std::pow(y, e[1]) * std::pow(z, e[2]);
      }
      rhs(row) = MatrixC(a + y * b + z * c).partialPivLu().determinant();
    }
  if (condition_number(vander) > 1e12) throw NumericError("interpolation system for the determinant polynomial is ill-conditioned");
  const VectorC coeffs = vander.colPivHouseholderQr().solve(rhs);
  return HomPoly3::from_dense(n, coeffs);
}

}  // namespace

HomPoly3 det_poly(const Tensor3& t, DetPolyMethod method) {
  check_square_three_slices(t);
  const int n = static_cast<int>(t.dims()[0]);
  if (method == DetPolyMethod::Auto) method = n <= 6 ? DetPolyMethod::Cofactor : DetPolyMethod::Interpolation;
  if (method == DetPolyMethod::Cofactor && n > 20) throw DomainError("cofactor expansion is limited to n <= 20");
  return method == DetPolyMethod::Cofactor ? det_cofactor(t) : det_interpolate(t);
}

HomPoly3 substitute(const HomPoly3& f, const MatrixC& g) {
  if (g.rows() != 3 || g.cols() != 3) throw DomainError("substitution matrix must be 3x3");
  const int n = f.degree();
  // powers[i][e] = (sum_j g(i,j) x_j)^e
  std::array<std::vector<HomPoly3>, 3> powers;
  for (int i = 0; i < 3; ++i) {
    const HomPoly3 lin = HomPoly3::linear(g(i, 0), g(i, 1), g(i, 2));
    powers[static_cast<std::size_t>(i)].push_back(HomPoly3::constant(1.0));
    for (int e = 1; e <= n; ++e)
      powers[static_cast<std::size_t>(i)].push_back(powers[static_cast<std::size_t>(i)].back() * lin);
  }
  HomPoly3 out(n);
  for (const auto& [e, c] : f.terms())
    out = out + powers[0][static_cast<std::size_t>(e[0])] * powers[1][static_cast<std::size_t>(e[1])] *
                    powers[2][static_cast<std::size_t>(e[2])] * c;
  return out;
}

MonicResult monic_normalize(const HomPoly3& f, double rel_tol) {
  if (f.is_zero()) throw DomainError("cannot normalize the zero polynomial");
  const double cutoff = rel_tol * f.max_abs();
  for (const auto& [e, c] : f.terms())
    if (std::abs(c) > cutoff) return {f * (1.0 / c), c};
  throw DomainError("cannot normalize the zero polynomial");  // unreachable
}

std::string format_poly(const HomPoly3& f, int precision) {
  if (f.is_zero()) return "0";
  auto num = [precision](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return std::string(buf);
  };
  std::string out;
  for (const auto& [e, c] : f.terms()) {
    std::string mono;
    const char* names[3] = {"x", "y", "z"};
    for (int v = 0; v < 3; ++v) {
      if (e[static_cast<std::size_t>(v)] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += names[v];
      if (e[static_cast<std::size_t>(v)] > 1) mono += "^" + std::to_string(e[static_cast<std::size_t>(v)]);
    }
    std::string coef;
    bool negative = false;
    if (c.imag() == 0.0) {
      negative = c.real() < 0;
      const double mag = std::abs(c.real());
      if (mag != 1.0 || mono.empty()) coef = num(mag);
    } else {
      char buf[128];
      std::snprintf(buf, sizeof buf, "(%.*g%+.*gi)", precision, c.real(), precision, c.imag());
      coef = buf;
    }
    std::string term = coef;
    if (!coef.empty() && !mono.empty()) term += '*';
    term += mono;
    if (out.empty())
      out = (negative ? "-" : "") + term;
    else
      out += (negative ? " - " : " + ") + term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// equivalence test

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::CertifiedObstruction:
      return "CertifiedObstruction";
    case VerdictKind::CandidateFound:
      return "CandidateFound";
    default:
      return "NoCandidateFound";
  }
}

double monic_residual(const HomPoly3& f1, const HomPoly3& f2, const MatrixC& g) {
  const HomPoly3 image = substitute(f1, g);
  if (image.is_zero()) return std::numeric_limits<double>::infinity();
  return (monic_normalize(image).poly.dense() - monic_normalize(f2).poly.dense()).norm();
}

namespace {

// x_j * p, as a polynomial of one higher degree.
HomPoly3 times_variable(const HomPoly3& p, int j) {
  HomPoly3 out(p.degree() + 1);
  for (const auto& [e, c] : p.terms()) {
    Exponent f = e;
    ++f[static_cast<std::size_t>(j)];
    out.add_term(f, c);
  }
  return out;
}

// Levenberg-Marquardt on the holomorphic residual src(x Gᵗ) - target over the
// nine complex entries of G. Returns the final residual norm.
double refine_substitution(const HomPoly3& src, const VectorC& target, MatrixC& g, int max_iter) {
  const std::array<HomPoly3, 3> grads{src.derivative(0), src.derivative(1), src.derivative(2)};
  const Eigen::Index m = target.size();
  auto residual = [&](const MatrixC& gg) { return VectorC(substitute(src, gg).dense() - target); };

  VectorC r = residual(g);
  double cost = r.squaredNorm();
  double mu = -1.0;
  const double target_norm = target.norm();
  for (int it = 0; it < max_iter && std::sqrt(cost) > 1e-15 * target_norm; ++it) {
    MatrixC jac(m, 9);
    for (int i = 0; i < 3; ++i) {
      const HomPoly3 gi = substitute(grads[static_cast<std::size_t>(i)], g);
      for (int j = 0; j < 3; ++j) jac.col(3 * i + j) = times_variable(gi, j).dense();
    }
    const MatrixC jtj = jac.adjoint() * jac;
    const VectorC grad = jac.adjoint() * r;
    if (mu < 0) mu = 1e-3 * std::max(jtj.diagonal().real().maxCoeff(), 1e-12);
    bool improved = false;
    for (int tries = 0; tries < 30; ++tries) {
      MatrixC damped = jtj;
      damped.diagonal().array() += mu;
      const VectorC step = -damped.ldlt().solve(grad);
      MatrixC trial = g;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) trial(i, j) += step(3 * i + j);
      const VectorC rt = residual(trial);
      const double ct = rt.squaredNorm();
      if (std::isfinite(ct) && ct < cost) {
        const double rel_step = step.norm() / std::max(1.0, g.norm());
        g = trial;
        r = rt;
        cost = ct;
        mu = std::max(mu / 3.0, 1e-15);
        improved = true;
        if (rel_step < 1e-15) return std::sqrt(cost);
        break;
      }
      mu *= 4.0;
    }
    if (!improved) break;
  }
  return std::sqrt(cost);
}

}  // namespace

EquivVerdict detpoly_equiv_test(const Tensor3& t1, const Tensor3& t2, const EquivOptions& opts) {
  check_square_three_slices(t1);
  check_square_three_slices(t2);
  if (t1.dims() != t2.dims()) throw DomainError("tensors must have the same shape");
  const int n = static_cast<int>(t1.dims()[0]);
  const HomPoly3 f1 = det_poly(t1), f2 = det_poly(t2);

  auto vanishes = [&](const HomPoly3& f, const Tensor3& t) {
    const double scale = std::max(t.max_abs(), 1e-300);
    return f.max_abs() <= opts.zero_tol * std::pow(scale, n);
  };
  const bool z1 = vanishes(f1, t1), z2 = vanishes(f2, t2);
  EquivVerdict v;
  if (z1 != z2) {
    v.kind = VerdictKind::CertifiedObstruction;
    v.obstruction = std::string("determinant polynomial of the ") + (z1 ? "first" : "second") +
                    " tensor vanishes identically while the other does not";
    return v;
  }
  if (z1 && z2) {
    v.kind = VerdictKind::CandidateFound;
    v.g = MatrixC::Identity(3, 3);
    v.residual = 0.0;
    v.restart = 0;
    return v;
  }

  const HomPoly3 src = monic_normalize(f1).poly;
  const HomPoly3 dst = monic_normalize(f2).poly;
  const VectorC target = dst.dense();

  v.kind = VerdictKind::NoCandidateFound;
  v.residual = std::numeric_limits<double>::infinity();
  for (int r = 0; r < opts.restarts; ++r) {
    MatrixC g;
    if (r == 0) {
      g = MatrixC::Identity(3, 3);
    } else {
      g = random_nonsingular(3, derive_seed(opts.seed, static_cast<std::uint64_t>(r)), 100.0);
      const double img = substitute(src, g).dense().norm();
      if (img > 0) g *= std::pow(target.norm() / img, 1.0 / n);
    }
    refine_substitution(src, target, g, opts.max_iter);
    if (!is_nonsingular(g)) continue;
    const double res = monic_residual(f1, f2, g);
    if (res < v.residual) {
      v.residual = res;
      v.restart = r;
      v.g = g;
    }
    // Restarts run in sub-seed order; the first success is the lowest sub-seed.
    if (res < opts.tol) {
      v.kind = VerdictKind::CandidateFound;
      return v;
    }
  }
  v.g = MatrixC();
  return v;
}

}  // namespace slocc
