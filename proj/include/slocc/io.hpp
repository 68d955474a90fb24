#pragma once

#include <string>

#include <json.hpp>

#include "slocc/catalog.hpp"
#include "slocc/density.hpp"
#include "slocc/detpoly.hpp"
#include "slocc/pencil.hpp"
#include "slocc/product_range.hpp"
#include "slocc/rank.hpp"
#include "slocc/transforms.hpp"

namespace slocc {

using Json = nlohmann::ordered_json;

// Complex numbers are [re, im] pairs. Matrices are
// {"rows", "cols", "entries"} with entries in row-major order; tensors are
// {"dims", "entries"} with the last index fastest. Readers throw ParseError
// on schema violations and DomainError on invalid values.

Json to_json(Complex z);
Json to_json(const MatrixC& m);
Json to_json(const VectorC& v);
Json to_json(const Tensor3& t);
Json to_json(const SloccMap& m);
Json to_json(const HomPoly3& f);
Json to_json(const PureState& s);
Json to_json(const DensityMatrix& rho);
Json to_json(const ProductVectorReport& r);
Json to_json(const RangeComparison& c);
Json to_json(const CpDecomposition& d);
Json to_json(const RankInterval& r);
Json to_json(const EquivVerdict& v);
Json to_json(const CatalogEntry& e);
Json to_json(const PencilInvariants& p);
Json to_json(const Classification2mn& c);

Complex complex_from_json(const Json& j);
MatrixC matrix_from_json(const Json& j);
VectorC vector_from_json(const Json& j);
Tensor3 tensor_from_json(const Json& j);
SloccMap slocc_map_from_json(const Json& j);
HomPoly3 poly_from_json(const Json& j);
DensityMatrix density_from_json(const Json& j);

/// Parses a whole file; ParseError when unreadable or malformed.
Json read_json_file(const std::string& path);

}  // namespace slocc
