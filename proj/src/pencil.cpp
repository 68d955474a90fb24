#include "slocc/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "slocc/error.hpp"
#include "slocc/random.hpp"

namespace slocc {

namespace {

constexpr std::uint64_t kPencilSeed = 0x70656e63696cULL;
constexpr double kBorderlineFactor = 100.0;
constexpr double kInfiniteTol = 1e-8;
constexpr double kClusterRadii[] = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};

// Rank decisions at an absolute threshold on a unit-norm pencil, recording
// how close each decision came to the threshold.
struct RankDecider {
  double tol;
  double margin = std::numeric_limits<double>::infinity();

  int rank(const MatrixC& m) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<MatrixC> svd(m);
    const auto& s = svd.singularValues();
    int r = 0;
    while (r < s.size() && s(r) > tol) ++r;
    if (r > 0) margin = std::min(margin, s(r - 1) / tol);
    if (r < s.size() && s(r) > 0) margin = std::min(margin, tol / s(r));
    return r;
  }
};

// Block Toeplitz matrix whose kernel holds the polynomial vectors of degree
// <= k annihilated by lambda*a0 + a1.
MatrixC degree_block(const MatrixC& a0, const MatrixC& a1, int k) {
  const Eigen::Index m = a0.rows(), n = a0.cols();
  MatrixC t = MatrixC::Zero((k + 2) * m, (k + 1) * n);
  for (int i = 0; i <= k; ++i) {
    t.block(i * m, i * n, m, n) = a1;
    t.block((i + 1) * m, i * n, m, n) = a0;
  }
  return t;
}

std::vector<int> minimal_indices(const MatrixC& a0, const MatrixC& a1, int nr, RankDecider& rd, bool& borderline) {
  const int want = static_cast<int>(a0.cols()) - nr;
  std::vector<int> out;
  if (want <= 0) return out;
  int prev_dim = 0, prev_count = 0;
  for (int k = 0; k <= nr; ++k) {
    const MatrixC t = degree_block(a0, a1, k);
    const int dim = static_cast<int>(t.cols()) - rd.rank(t);
    const int count = dim - prev_dim;  // indices <= k
    for (int c = prev_count; c < count; ++c) out.push_back(k);
    prev_dim = dim;
    prev_count = count;
    if (count >= want) break;
  }
  if (static_cast<int>(out.size()) != want) borderline = true;
  return out;
}

// Jordan block sizes of the pencil at the point (x0:y0), |x0|^2+|y0|^2 = 1.
std::vector<int> local_partition(const MatrixC& s0, const MatrixC& s1, Complex x0, Complex y0, int n_eps, int r_reg,
                                 RankDecider& rd, bool& borderline) {
  const MatrixC p0 = x0 * s0 + y0 * s1;
  const MatrixC dir = -std::conj(y0) * s0 + std::conj(x0) * s1;
  const Eigen::Index m = s0.rows(), n = s0.cols();
  std::vector<int> at_least;  // at_least[k-1] = number of blocks of size >= k
  int prev = 0;
  for (int k = 1; k <= r_reg + 1; ++k) {
    MatrixC w = MatrixC::Zero(k * m, k * n);
    for (int i = 0; i < k; ++i) {
      w.block(i * m, i * n, m, n) = p0;
      if (i + 1 < k) w.block((i + 1) * m, i * n, m, n) = dir;
    }
    const int s = static_cast<int>(w.cols()) - rd.rank(w) - k * n_eps;
    const int c = s - prev;
    if (c <= 0) break;
    if (!at_least.empty() && c > at_least.back()) borderline = true;
    at_least.push_back(c);
    prev = s;
  }
  std::vector<int> part;
  for (std::size_t k = at_least.size(); k-- > 0;) {
    const int next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
    for (int b = 0; b < at_least[k] - next; ++b) part.push_back(static_cast<int>(k) + 1);
  }
  return part;  // descending by construction
}

double chordal(Complex a, Complex b) {
  return std::abs(a - b) / (std::sqrt(1.0 + std::norm(a)) * std::sqrt(1.0 + std::norm(b)));
}

std::vector<std::vector<Complex>> cluster(const std::vector<Complex>& roots, double radius) {
  std::vector<int> label(roots.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (label[i] >= 0) continue;
    label[i] = next;
    // single linkage: grow the cluster until no root within radius remains
    for (bool grew = true; grew;) {
      grew = false;
      for (std::size_t j = 0; j < roots.size(); ++j)
        if (label[j] < 0)
          for (std::size_t q = 0; q < roots.size(); ++q)
            if (label[q] == next && chordal(roots[j], roots[q]) < radius) {
              label[j] = next;
              grew = true;
              break;
            }
    }
    ++next;
  }
  std::vector<std::vector<Complex>> out(static_cast<std::size_t>(next));
  for (std::size_t i = 0; i < roots.size(); ++i) out[static_cast<std::size_t>(label[i])].push_back(roots[i]);
  return out;
}

Complex snap(Complex z) {
  const double scale = std::max(1.0, std::abs(z));
  double re = z.real(), im = z.imag();
  if (std::abs(re) < 1e-12 * scale) re = 0;
  if (std::abs(im) < 1e-12 * scale) im = 0;
  return {re, im};
}

std::string format_list(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

}  // namespace

std::string PencilInvariants::signature() const {
  std::vector<int> eps, eta;
  for (int e : column_indices)
    if (e > 0) eps.push_back(e);
  for (int e : row_indices)
    if (e > 0) eta.push_back(e);
  std::vector<std::vector<int>> parts;
  for (const auto& d : finite) parts.push_back(d.partition);
  if (!infinite.empty()) parts.push_back(infinite);
  std::sort(parts.begin(), parts.end(), std::greater<>());
  std::string s = "eps=" + format_list(eps) + ";eta=" + format_list(eta) + ";div=[";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + format_list(parts[i]);
  return s + "]";
}

PencilInvariants pencil_invariants(const Tensor3& t, double tol) {
  const auto& d = t.dims();
  if (d[0] != 1 && d[0] != 2) throw DomainError("pencil invariants need a first dimension of 1 or 2");
  if (!(tol > 0)) throw DomainError("rank tolerance must be positive");
  const Eigen::Index m = static_cast<Eigen::Index>(d[1]), n = static_cast<Eigen::Index>(d[2]);
  MatrixC s0 = slice(t, 1, 0);
  MatrixC s1 = d[0] == 2 ? slice(t, 1, 1) : MatrixC::Zero(m, n);

  PencilInvariants inv;
  inv.rows = static_cast<int>(m);
  inv.cols = static_cast<int>(n);
  const double scale = std::sqrt(s0.squaredNorm() + s1.squaredNorm());
  if (scale == 0) {
    inv.column_indices.assign(static_cast<std::size_t>(n), 0);
    inv.row_indices.assign(static_cast<std::size_t>(m), 0);
    inv.margin = std::numeric_limits<double>::infinity();
    return inv;
  }
  s0 /= scale;
  s1 /= scale;

  RankDecider rd{tol};
  Rng rng(kPencilSeed);
  for (int trial = 0; trial < 2; ++trial) {
    const Complex x = rng.complex_normal(), y = rng.complex_normal();
    inv.normal_rank = std::max(inv.normal_rank, rd.rank((x * s0 + y * s1) / std::sqrt(std::norm(x) + std::norm(y))));
  }
  const int nr = inv.normal_rank;
  inv.column_indices = minimal_indices(s0, s1, nr, rd, inv.borderline);
  inv.row_indices = minimal_indices(s0.transpose(), s1.transpose(), nr, rd, inv.borderline);
  int r_reg = nr - std::accumulate(inv.column_indices.begin(), inv.column_indices.end(), 0) -
              std::accumulate(inv.row_indices.begin(), inv.row_indices.end(), 0);
  if (r_reg < 0) {
    inv.borderline = true;
    r_reg = 0;
  }
  const int n_eps = static_cast<int>(n) - nr;

  bool settled = r_reg == 0;
  for (int attempt = 0; attempt < 4 && !settled; ++attempt) {
    // random Moebius change of coordinates keeps every eigenvalue finite
    const MatrixC h = rng.complex_matrix(2, 2);
    const MatrixC u = rng.complex_matrix(nr, m), v = rng.complex_matrix(n, nr);
    const MatrixC a = u * (h(0, 0) * s0 + h(1, 0) * s1) * v;
    const MatrixC b = u * (h(0, 1) * s0 + h(1, 1) * s1) * v;
    Eigen::PartialPivLU<MatrixC> lu(a);
    if (std::abs(lu.determinant()) < 1e-12 * std::pow(a.norm(), static_cast<double>(nr))) continue;
    Eigen::ComplexEigenSolver<MatrixC> es(-lu.solve(b), false);
    if (es.info() != Eigen::Success) continue;
    std::vector<Complex> roots(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());

    for (double radius : kClusterRadii) {
      std::vector<FiniteDivisor> finite;
      std::vector<int> infinite;
      bool local_border = false;
      RankDecider local{tol};
      int total = 0;
      for (const auto& group : cluster(roots, radius)) {
        const Complex s = std::accumulate(group.begin(), group.end(), Complex{}) / static_cast<double>(group.size());
        Complex x = s * h(0, 0) + h(0, 1), y = s * h(1, 0) + h(1, 1);
        const double nn = std::sqrt(std::norm(x) + std::norm(y));
        x /= nn;
        y /= nn;
        const bool at_infinity = std::abs(y) < kInfiniteTol;
        if (at_infinity) {
          x = 1.0;
          y = 0.0;
        }
        auto part = local_partition(s0, s1, x, y, n_eps, r_reg, local, local_border);
        if (part.empty()) continue;
        total += std::accumulate(part.begin(), part.end(), 0);
        if (at_infinity)
          infinite = std::move(part);
        else
          finite.push_back({snap(x / y), std::move(part)});
      }
      if (total != r_reg || local_border) continue;
      std::sort(finite.begin(), finite.end(), [](const FiniteDivisor& p, const FiniteDivisor& q) {
        return p.eigenvalue.real() != q.eigenvalue.real() ? p.eigenvalue.real() < q.eigenvalue.real()
                                                          : p.eigenvalue.imag() < q.eigenvalue.imag();
      });
      inv.finite = std::move(finite);
      inv.infinite = std::move(infinite);
      rd.margin = std::min(rd.margin, local.margin);
      settled = true;
      break;
    }
  }
  if (!settled) inv.borderline = true;
  inv.margin = rd.margin;
  if (inv.margin < kBorderlineFactor) inv.borderline = true;
  return inv;
}

std::string class_signature(const Tensor3& t) {
  const auto r = local_ranks(t);
  return "ranks=(" + std::to_string(r[0]) + "," + std::to_string(r[1]) + "," + std::to_string(r[2]) + ");" +
         pencil_invariants(t).signature();
}

namespace {

const std::map<std::string, std::string>& signature_table() {
  static const std::map<std::string, std::string> table = [] {
    std::map<std::string, std::string> out;
    for (const auto& e : catalog_list()) {
      if (!e.table_row) continue;
      const std::string sig = class_signature(catalog_build(e.id));
      const auto [it, fresh] = out.emplace(sig, e.id);
      if (!fresh) throw NumericError("catalog entries " + it->second + " and " + e.id + " share signature " + sig);
    }
    return out;
  }();
  return table;
}

}  // namespace

Classification2mn classify_2mn(const Tensor3& t) {
  const auto& d = t.dims();
  if (d[0] > 2 || d[1] > 3 || d[2] > 6)
    throw DomainError("classification covers first dim <= 2, M <= 3, N <= 6");
  if (t.is_zero()) throw DomainError("the zero tensor has no class");
  Classification2mn out;
  out.invariants = pencil_invariants(t);
  const auto r = local_ranks(t);
  out.signature = "ranks=(" + std::to_string(r[0]) + "," + std::to_string(r[1]) + "," + std::to_string(r[2]) +
                  ");" + out.invariants.signature();
  const auto& table = signature_table();
  if (auto it = table.find(out.signature); it != table.end()) {
    out.id = it->second;
  } else {
    out.diagnostic = "no catalog class has signature " + out.signature;
    if (out.invariants.borderline) out.diagnostic += " (rank decisions were borderline)";
  }
  return out;
}

}  // namespace slocc
