#include "slocc/catalog.hpp"

#include <cstdio>

#include "slocc/error.hpp"
#include "slocc/ket.hpp"

namespace slocc {

namespace {

std::string dims_label(Dims3 d) {
  return std::to_string(d[0]) + "x" + std::to_string(d[1]) + "x" + std::to_string(d[2]);
}

struct Row {
  Dims3 dims;
  const char* suffix;  // empty: numbered when the system has several rows
  const char* ket;
};

// Canonical representatives, largest system first.
const Row kRows[] = {
    {{2, 3, 6}, "", "|000>+|011>+|022>+|103>+|114>+|125>"},
    {{2, 3, 5}, "", "|024>+|000>+|011>+|102>+|113>"},
    {{2, 3, 5}, "", "|024>+|121>+|000>+|011>+|102>+|113>"},
    {{2, 3, 4}, "", "|123>+|012>+|000>+|101>"},
    {{2, 3, 4}, "", "|023>+|012>+|000>+|101>"},
    {{2, 3, 4}, "", "|123>+|012>+|110>+|000>+|101>"},
    {{2, 3, 4}, "", "|023>+|122>+|012>+|000>+|101>"},
    {{2, 3, 4}, "", "|023>+|122>+|012>+|110>+|000>+|101>"},
    {{2, 3, 3}, "", "|000>+|111>+|022>"},
    {{2, 3, 3}, "", "|000>+|111>+|022>+|122>"},
    {{2, 3, 3}, "", "|010>+|001>+|112>+|121>"},
    {{2, 3, 3}, "", "|100>+|010>+|001>+|112>+|121>"},
    {{2, 3, 3}, "", "|100>+|010>+|001>+|022>"},
    {{2, 3, 3}, "", "|100>+|010>+|001>+|122>"},
    {{2, 3, 2}, "", "|000>+|011>+|121>"},
    {{2, 3, 2}, "", "|000>+|011>+|110>+|121>"},
    {{2, 2, 4}, "", "|000>+|011>+|102>+|113>"},
    {{2, 2, 3}, "", "|000>+|011>+|112>"},
    {{2, 2, 3}, "", "|000>+|011>+|101>+|112>"},
    {{2, 2, 2}, "ghz", "|000>+|111>"},
    {{2, 2, 2}, "w", "|001>+|010>+|100>"},
    {{1, 3, 3}, "", "|000>+|011>+|022>"},
    {{1, 2, 2}, "", "|000>+|011>"},
    {{2, 1, 2}, "", "|000>+|101>"},
    {{2, 2, 1}, "", "|000>+|110>"},
    {{1, 1, 1}, "", "|000>"},
};

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> out;
  const std::size_t nrows = std::size(kRows);
  for (std::size_t r = 0; r < nrows; ++r) {
    const Row& row = kRows[r];
    std::size_t ordinal = 0, count = 0;
    for (std::size_t q = 0; q < nrows; ++q)
      if (kRows[q].dims == row.dims) {
        ++count;
        if (q <= r) ++ordinal;
      }
    CatalogEntry e;
    e.id = dims_label(row.dims);
    if (*row.suffix)
      e.id += std::string("-") + row.suffix;
    else if (count > 1)
      e.id += "-" + std::to_string(ordinal);
    e.system = row.dims;
    e.ket_text = row.ket;
    e.local_ranks = {static_cast<int>(row.dims[0]), static_cast<int>(row.dims[1]), static_cast<int>(row.dims[2])};
    e.table_row = true;
    out.push_back(e);
  }
  out[19].rank_note = RankNote{2, ""};
  out[20].rank_note = RankNote{3, ""};
  out.push_back({"3x3x3-diag", {3, 3, 3}, "|000>+|111>+|222>", {3, 3, 3}, RankNote{3, ""}, false});
  out.push_back({"3x3x3-perm",
                 {3, 3, 3},
                 "|012>+|021>+|102>+|120>+|201>+|210>",
                 {3, 3, 3},
                 RankNote{4, ""},
                 false});
  // W ⊗ W with each pair of parties regrouped into one 4-level party
  out.push_back({"4x4x4-w2",
                 {4, 4, 4},
                 "|003>+|012>+|102>+|021>+|030>+|120>+|201>+|210>+|300>",
                 {4, 4, 4},
                 RankNote{7, "a decomposition with 8 terms is easy to write down"},
                 false});
  return out;
}

void require_dims(const PureState& s, std::vector<std::size_t> want, const char* what) {
  if (s.party_dims() != want) {
    std::string w;
    for (std::size_t i = 0; i < want.size(); ++i) w += (i ? "x" : "") + std::to_string(want[i]);
    throw DomainError(std::string(what) + " must have dims " + w);
  }
}

}  // namespace

const std::vector<CatalogEntry>& catalog_list() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry& catalog_get(const std::string& id) {
  for (const auto& e : catalog_list())
    if (e.id == id) return e;
  throw DomainError("unknown catalog id '" + id + "'");
}

Tensor3 catalog_build(const std::string& id) {
  const auto& e = catalog_get(id);
  return parse_ket(e.ket_text, e.system);
}

std::string to_string(LhrgmKind k) {
  switch (k) {
    case LhrgmKind::Omega0: return "omega0";
    case LhrgmKind::Omega1: return "omega1";
    case LhrgmKind::Omega2: return "omega2";
    case LhrgmKind::Omega3: return "omega3";
  }
  return "?";
}

LhrgmKind lhrgm_kind_from_string(const std::string& s) {
  for (auto k : {LhrgmKind::Omega0, LhrgmKind::Omega1, LhrgmKind::Omega2, LhrgmKind::Omega3})
    if (to_string(k) == s || to_string(k).substr(5) == s) return k;
  throw DomainError("unknown construction '" + s + "' (expected omega0..omega3)");
}

PureState lhrgm_build(LhrgmKind kind, const LhrgmParams& p, std::size_t m, std::size_t n) {
  if (m < 2 || n < 2) throw DomainError("target dims need M >= 2 and N >= 2");
  if (kind == LhrgmKind::Omega1 && n < 3) throw DomainError("omega1 needs N >= 3");
  if (kind == LhrgmKind::Omega2 && p.b == Complex{}) throw DomainError("omega2 requires b != 0");
  if (kind == LhrgmKind::Omega3 && p.a == Complex{}) throw DomainError("omega3 requires a != 0");
  const std::size_t base_n = kind == LhrgmKind::Omega1 ? n - 2 : n - 1;
  require_dims(p.base, {2, m - 1, base_n}, "base state");
  if ((kind == LhrgmKind::Omega2 || kind == LhrgmKind::Omega3) && p.chi.size() != n - 1)
    throw DomainError("chi must have N-1 = " + std::to_string(n - 1) + " coefficients");

  std::vector<Complex> e(2 * m * n);
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> Complex& { return e[(i * m + j) * n + k]; };
  const Tensor3 base = p.base.to_tensor();
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < m - 1; ++j)
      for (std::size_t k = 0; k < base_n; ++k) at(i, j, k) = base(i, j, k);
  if (kind == LhrgmKind::Omega1) {
    at(0, m - 1, n - 1) += 1.0;
    at(1, m - 1, n - 2) += 1.0;
  } else {
    at(0, m - 1, n - 1) += p.a;
    at(1, m - 1, n - 1) += p.b;
    if (kind != LhrgmKind::Omega0) {
      const std::size_t party_a = kind == LhrgmKind::Omega2 ? 0 : 1;
      for (std::size_t k = 0; k + 1 < n; ++k) at(party_a, m - 1, k) += p.chi[k];
    }
  }
  VectorC v(static_cast<Eigen::Index>(e.size()));
  for (std::size_t q = 0; q < e.size(); ++q) v(static_cast<Eigen::Index>(q)) = e[q];
  return PureState({2, m, n}, std::move(v));
}

PureState build_335(const PureState& psi, const VectorC& alpha, const VectorC& beta, const VectorC& gamma) {
  const auto& d = psi.party_dims();
  if (d.size() != 3 || d[0] != 2 || d[1] > 3 || d[2] > 5)
    throw DomainError("psi must be a 2 x n x p state with n <= 3 and p <= 5");
  if (alpha.size() != 5 || beta.size() != 5 || gamma.size() != 5)
    throw DomainError("alpha, beta and gamma must have 5 components");
  const Tensor3 t = psi.to_tensor();
  VectorC v = VectorC::Zero(45);
  auto idx = [](std::size_t i, std::size_t j, std::size_t k) { return static_cast<Eigen::Index>((i * 3 + j) * 5 + k); };
  for (std::size_t i = 0; i < d[0]; ++i)
    for (std::size_t j = 0; j < d[1]; ++j)
      for (std::size_t k = 0; k < d[2]; ++k) v(idx(i, j, k)) = t(i, j, k);
  for (std::size_t k = 0; k < 5; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    v(idx(2, 0, k)) += alpha(kk);
    v(idx(2, 1, k)) += beta(kk);
    v(idx(2, 2, k)) += gamma(kk);
  }
  return PureState({3, 3, 5}, std::move(v));
}

}  // namespace slocc
