#include "slocc/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "slocc/error.hpp"

namespace slocc {

namespace {

std::size_t product(const std::vector<std::size_t>& d) {
  return std::accumulate(d.begin(), d.end(), std::size_t{1}, std::multiplies<>());
}

void check_party_dims(const std::vector<std::size_t>& d) {
  if (d.empty()) throw DomainError("a state needs at least one party");
  for (auto n : d)
    if (n == 0) throw DomainError("party dimensions must be positive");
}

}  // namespace

PureState::PureState(std::vector<std::size_t> party_dims, VectorC amplitudes)
    : dims_(std::move(party_dims)), amp_(std::move(amplitudes)) {
  check_party_dims(dims_);
  if (static_cast<std::size_t>(amp_.size()) != product(dims_))
    throw DomainError("amplitude vector length does not match the party dimensions");
  if (!amp_.allFinite()) throw DomainError("amplitudes must be finite");
  if (amp_.isZero(0.0)) throw DomainError("the zero vector is not a state");
}

PureState PureState::from_tensor(const Tensor3& t) {
  const auto& d = t.dims();
  VectorC v(static_cast<Eigen::Index>(t.size()));
  const auto e = t.entries();
  for (std::size_t p = 0; p < e.size(); ++p) v(static_cast<Eigen::Index>(p)) = e[p];
  return PureState({d[0], d[1], d[2]}, std::move(v));
}

PureState PureState::normalized() const { return PureState(dims_, amp_ / amp_.norm()); }

Tensor3 PureState::to_tensor() const {
  if (dims_.size() != 3) throw DomainError("only tripartite states convert to a 3-way tensor");
  std::vector<Complex> e(amp_.data(), amp_.data() + amp_.size());
  return Tensor3({dims_[0], dims_[1], dims_[2]}, std::move(e));
}

DensityMatrix::DensityMatrix(std::vector<std::size_t> party_dims, MatrixC entries)
    : dims_(std::move(party_dims)), rho_(std::move(entries)) {
  check_party_dims(dims_);
  if (rho_.rows() != rho_.cols() || static_cast<std::size_t>(rho_.rows()) != product(dims_))
    throw DomainError("density matrix shape does not match the party dimensions");
  const double scale = std::max(rho_.cwiseAbs().maxCoeff(), 1e-300);
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw DomainError("density matrix is not Hermitian");
#ifndef NDEBUG
  if (min_relative_eigenvalue(*this) < -1e-10) throw DomainError("density matrix is not positive semidefinite");
#endif
}

DensityMatrix density_of(const PureState& s) {
  return DensityMatrix(s.party_dims(), s.amplitudes() * s.amplitudes().adjoint());
}

DensityMatrix mixture(const std::vector<PureState>& states, const std::vector<double>& probs) {
  if (states.empty()) throw DomainError("mixture needs at least one state");
  if (states.size() != probs.size()) throw DomainError("need one probability per state");
  double total = 0;
  for (double p : probs) {
    if (!(p >= 0) || !std::isfinite(p)) throw DomainError("probabilities must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("probabilities must sum to 1");
  const auto& dims = states.front().party_dims();
  MatrixC rho = MatrixC::Zero(states.front().amplitudes().size(), states.front().amplitudes().size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].party_dims() != dims) throw DomainError("all states in a mixture must share party dimensions");
    const VectorC x = states[i].amplitudes() / states[i].norm();
    rho += probs[i] * (x * x.adjoint());
  }
  // exact Hermitian symmetrisation; rounding in the sum can break it at 1 ulp
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(dims, std::move(rho));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<std::size_t>& traced) {
  const auto& dims = rho.party_dims();
  const std::size_t parties = dims.size();
  if (traced.empty()) throw DomainError("nothing to trace out");
  for (auto p : traced)
    if (p >= parties) throw DomainError("party index " + std::to_string(p) + " out of range");
  if (traced.size() == parties) throw DomainError("tracing every party leaves a scalar; use total_trace");

  std::vector<std::size_t> kept_dims, traced_dims;
  for (std::size_t p = 0; p < parties; ++p) (traced.count(p) ? traced_dims : kept_dims).push_back(dims[p]);
  const std::size_t total = product(dims), nk = product(kept_dims), nt = product(traced_dims);

  // Split each full basis index into (kept index, traced index).
  std::vector<std::size_t> kept_of(total), traced_of(total);
  for (std::size_t full = 0; full < total; ++full) {
    std::size_t rem = full, k = 0, t = 0, kstride = 1, tstride = 1;
    for (std::size_t p = parties; p-- > 0;) {
      const std::size_t digit = rem % dims[p];
      rem /= dims[p];
      if (traced.count(p)) {
        t += digit * tstride;
        tstride *= dims[p];
      } else {
        k += digit * kstride;
        kstride *= dims[p];
      }
    }
    kept_of[full] = k;
    traced_of[full] = t;
  }
  // full_index[k][t]
  std::vector<std::size_t> full_index(nk * nt);
  for (std::size_t full = 0; full < total; ++full) full_index[kept_of[full] * nt + traced_of[full]] = full;

  const MatrixC& m = rho.matrix();
  MatrixC out = MatrixC::Zero(static_cast<Eigen::Index>(nk), static_cast<Eigen::Index>(nk));
  for (std::size_t a = 0; a < nk; ++a)
    for (std::size_t b = 0; b < nk; ++b) {
      Complex s{};
      for (std::size_t t = 0; t < nt; ++t)
        s += m(static_cast<Eigen::Index>(full_index[a * nt + t]), static_cast<Eigen::Index>(full_index[b * nt + t]));
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = s;
    }
  return DensityMatrix(std::move(kept_dims), std::move(out));
}

Complex total_trace(const DensityMatrix& rho) { return rho.trace(); }

std::vector<VectorC> range_basis(const DensityMatrix& rho, double tol) {
  if (!(tol > 0)) throw DomainError("range tolerance must be positive");
  Eigen::SelfAdjointEigenSolver<MatrixC> es(rho.matrix());
  const auto& w = es.eigenvalues();  // ascending
  std::vector<VectorC> out;
  const double top = w(w.size() - 1);
  if (!(top > 0)) return out;
  for (Eigen::Index i = w.size(); i-- > 0;)
    if (w(i) > tol * top) out.push_back(es.eigenvectors().col(i));
  return out;
}

double min_relative_eigenvalue(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<MatrixC> es(rho.matrix(), Eigen::EigenvaluesOnly);
  const auto& w = es.eigenvalues();
  const double top = std::max(std::abs(w(0)), std::abs(w(w.size() - 1)));
  return top > 0 ? w(0) / top : 0.0;
}

}  // namespace slocc
