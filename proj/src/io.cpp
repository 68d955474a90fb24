#include "slocc/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "slocc/error.hpp"

namespace slocc {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

std::size_t size_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw ParseError(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

std::vector<std::size_t> sizes_from_json(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<std::size_t> out;
  for (const auto& x : j) out.push_back(size_from_json(x, what));
  return out;
}

Json complex_list(const Complex* data, std::size_t n) {
  Json a = Json::array();
  for (std::size_t i = 0; i < n; ++i) a.push_back(to_json(data[i]));
  return a;
}

std::vector<Complex> complex_list_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("entries must be an array of [re, im] pairs");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(complex_from_json(x));
  return out;
}

Json int_list(const std::vector<int>& v) { return Json(v); }

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const MatrixC& m) {
  Json e = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) e.push_back(to_json(m(i, k)));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(e)}};
}

Json to_json(const VectorC& v) { return complex_list(v.data(), static_cast<std::size_t>(v.size())); }

Json to_json(const Tensor3& t) {
  const auto e = t.entries();
  return Json{{"dims", t.dims()}, {"entries", complex_list(e.data(), e.size())}};
}

Json to_json(const SloccMap& m) { return Json{{"a", to_json(m.a)}, {"b", to_json(m.b)}, {"c", to_json(m.c)}}; }

Json to_json(const HomPoly3& f) {
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back(Json{{"exp", e}, {"coef", to_json(c)}});
  return Json{{"degree", f.degree()}, {"terms", std::move(terms)}};
}

Json to_json(const PureState& s) {
  const VectorC& a = s.amplitudes();
  return Json{{"dims", s.party_dims()}, {"entries", complex_list(a.data(), static_cast<std::size_t>(a.size()))}};
}

Json to_json(const DensityMatrix& rho) {
  return Json{{"party_dims", rho.party_dims()}, {"matrix", to_json(rho.matrix())}};
}

Json to_json(const ProductVectorReport& r) {
  Json vs = Json::array();
  for (const auto& p : r.vectors) vs.push_back(Json{{"u", to_json(p.u)}, {"v", to_json(p.v)}});
  return Json{{"independent_count", r.independent_count},
              {"exactness", to_string(r.exactness)},
              {"continuum", r.continuum},
              {"vectors", std::move(vs)}};
}

Json to_json(const RangeComparison& c) {
  Json j{{"verdict", to_string(c.verdict)},
         {"reason", c.reason},
         {"local_ranks", Json::array({c.ranks1, c.ranks2})}};
  if (c.ranks1 == c.ranks2) j["reports"] = Json::array({to_json(c.report1), to_json(c.report2)});
  return j;
}

Json to_json(const CpDecomposition& d) {
  return Json{{"terms", d.terms()}, {"a", to_json(d.a)}, {"b", to_json(d.b)}, {"c", to_json(d.c)}};
}

Json to_json(const RankInterval& r) {
  return Json{{"lower", r.lower},
              {"upper", r.upper},
              {"certificate_lower", to_string(r.lower_certificate)},
              {"certificate_upper", to_string(r.upper_certificate)},
              {"residual", r.residual},
              {"note", r.note},
              {"decomposition", to_json(r.decomposition)}};
}

Json to_json(const EquivVerdict& v) {
  Json j{{"verdict", to_string(v.kind)}};
  if (v.kind == VerdictKind::CertifiedObstruction) j["obstruction"] = v.obstruction;
  if (v.kind == VerdictKind::CandidateFound) j["g"] = to_json(v.g);
  j["residual"] = v.residual;
  j["restart"] = v.restart;
  return j;
}

Json to_json(const CatalogEntry& e) {
  Json j{{"id", e.id},
         {"system", e.system},
         {"ket", e.ket_text},
         {"local_ranks", e.local_ranks},
         {"table_row", e.table_row}};
  if (e.rank_note) {
    j["rank"] = e.rank_note->rank;
    if (!e.rank_note->detail.empty()) j["rank_detail"] = e.rank_note->detail;
  }
  return j;
}

Json to_json(const PencilInvariants& p) {
  Json fin = Json::array();
  for (const auto& d : p.finite) fin.push_back(Json{{"eigenvalue", to_json(d.eigenvalue)}, {"partition", d.partition}});
  return Json{{"rows", p.rows},
              {"cols", p.cols},
              {"normal_rank", p.normal_rank},
              {"column_minimal_indices", int_list(p.column_indices)},
              {"row_minimal_indices", int_list(p.row_indices)},
              {"finite_divisors", std::move(fin)},
              {"infinite_partition", int_list(p.infinite)},
              {"borderline", p.borderline},
              {"margin", std::isfinite(p.margin) ? Json(p.margin) : Json(nullptr)},
              {"signature", p.signature()}};
}

Json to_json(const Classification2mn& c) {
  Json j{{"match", c.id ? Json(*c.id) : Json(nullptr)}, {"signature", c.signature}};
  if (!c.id) j["diagnostic"] = c.diagnostic;
  j["pencil"] = to_json(c.invariants);
  return j;
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("a complex number must be [re, im]");
  const Complex z{j[0].get<double>(), j[1].get<double>()};
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("complex entries must be finite");
  return z;
}

MatrixC matrix_from_json(const Json& j) {
  const std::size_t rows = size_from_json(field(j, "rows"), "rows");
  const std::size_t cols = size_from_json(field(j, "cols"), "cols");
  const auto e = complex_list_from_json(field(j, "entries"));
  if (e.size() != rows * cols) throw ParseError("matrix has " + std::to_string(e.size()) + " entries, expected " +
                                                std::to_string(rows * cols));
  MatrixC m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = e[i * cols + k];
  return m;
}

VectorC vector_from_json(const Json& j) {
  const auto e = complex_list_from_json(j);
  VectorC v(static_cast<Eigen::Index>(e.size()));
  for (std::size_t i = 0; i < e.size(); ++i) v(static_cast<Eigen::Index>(i)) = e[i];
  return v;
}

Tensor3 tensor_from_json(const Json& j) {
  const auto d = sizes_from_json(field(j, "dims"), "dims");
  if (d.size() != 3) throw ParseError("dims must have three entries");
  auto entries = complex_list_from_json(field(j, "entries"));
  if (d[0] > 0 && d[1] > 0 && d[2] > 0 && entries.size() / d[0] / d[1] / d[2] != 1)
    throw ParseError("entries must list dims[0]*dims[1]*dims[2] values");
  return Tensor3({d[0], d[1], d[2]}, std::move(entries));
}

SloccMap slocc_map_from_json(const Json& j) {
  return {matrix_from_json(field(j, "a")), matrix_from_json(field(j, "b")), matrix_from_json(field(j, "c"))};
}

HomPoly3 poly_from_json(const Json& j) {
  const Json& deg = field(j, "degree");
  if (!deg.is_number_integer() || deg.get<int>() < 0) throw ParseError("degree must be a nonnegative integer");
  HomPoly3 f(deg.get<int>());
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) throw ParseError("terms must be an array");
  for (const auto& t : terms) {
    const auto e = sizes_from_json(field(t, "exp"), "exp");
    if (e.size() != 3) throw ParseError("exp must have three entries");
    f.add_term({static_cast<int>(e[0]), static_cast<int>(e[1]), static_cast<int>(e[2])}, complex_from_json(field(t, "coef")));
  }
  return f;
}

DensityMatrix density_from_json(const Json& j) {
  return DensityMatrix(sizes_from_json(field(j, "party_dims"), "party_dims"), matrix_from_json(field(j, "matrix")));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("malformed JSON in '" + path + "': " + e.what(), e.byte);
  }
}

}  // namespace slocc
