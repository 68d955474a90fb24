#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "slocc/error.hpp"
#include "slocc/io.hpp"
#include "slocc/ket.hpp"
#include "slocc/random.hpp"

using namespace slocc;

TEST_SUITE("io") {

TEST_CASE("tensor round trip is exact through text") {
  Rng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const Tensor3 t = rng.complex_tensor({2, 3, 4});
    const Tensor3 u = tensor_from_json(Json::parse(to_json(t).dump()));
    CHECK(u.dims() == t.dims());
    CHECK((u - t).max_abs() == 0.0);
  }
}

TEST_CASE("tensor layout puts the last index fastest") {
  const Json j = to_json(parse_ket("|001>", {2, 2, 2}));
  CHECK(j["dims"] == Json::array({2, 2, 2}));
  CHECK(j["entries"][1][0] == 1.0);
}

TEST_CASE("matrices, vectors and maps") {
  Rng rng(72);
  const MatrixC m = rng.complex_matrix(2, 3);
  CHECK(matrix_from_json(Json::parse(to_json(m).dump())) == m);
  const VectorC v = rng.complex_vector(4);
  CHECK(vector_from_json(Json::parse(to_json(v).dump())) == v);
  const SloccMap s = random_slocc({2, 3, 4}, 1);
  const SloccMap r = slocc_map_from_json(Json::parse(to_json(s).dump()));
  CHECK(r.a == s.a);
  CHECK(r.c == s.c);
  CHECK(complex_from_json(Json::array({1.5, -2.0})) == Complex(1.5, -2.0));
}

TEST_CASE("polynomials") {
  const HomPoly3 x = HomPoly3::linear(1, 0, 0), z = HomPoly3::linear(0, 0, 1);
  const HomPoly3 f = x * x * z * Complex(2, -1) + z * z * z;
  CHECK(poly_from_json(Json::parse(to_json(f).dump())) == f);
}

TEST_CASE("density matrices") {
  const DensityMatrix rho = density_of(PureState::from_tensor(parse_ket("|000>+(i)|111>", {2, 2, 2})));
  const DensityMatrix back = density_from_json(Json::parse(to_json(rho).dump()));
  CHECK(back.party_dims() == rho.party_dims());
  CHECK(back.matrix() == rho.matrix());
}

TEST_CASE("schema violations") {
  CHECK_THROWS_AS(tensor_from_json(Json::parse(R"({"dims":[2,2],"entries":[]})")), ParseError);
  CHECK_THROWS_AS(tensor_from_json(Json::parse(R"({"dims":[1,1,2],"entries":[[1,0]]})")), ParseError);
  CHECK_THROWS_AS(tensor_from_json(Json::parse(R"({"dims":[1,1,1],"entries":[[1]]})")), ParseError);
  CHECK_THROWS_AS(tensor_from_json(Json::parse(R"({"dims":[1,1,1],"entries":[["a",0]]})")), ParseError);
  CHECK_THROWS_AS(tensor_from_json(Json::parse("[1,2,3]")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"rows":1,"cols":2,"entries":[[1,0]]})")), ParseError);
  CHECK_THROWS(poly_from_json(Json::parse(R"({"degree":2,"terms":[{"exp":[1,0,0],"coef":[1,0]}]})")));
}

TEST_CASE("files") {
  CHECK_THROWS_AS(read_json_file("/nonexistent/slocc.json"), ParseError);
  const std::string path = "slocc_io_test.json";
  {
    std::ofstream f(path);
    f << "{\"dims\": [1, 1, 1], ";
  }
  CHECK_THROWS_AS(read_json_file(path), ParseError);
  {
    std::ofstream f(path);
    f << to_json(parse_ket("2|000>", {1, 1, 1})).dump();
  }
  CHECK(tensor_from_json(read_json_file(path))(0, 0, 0) == Complex(2, 0));
  std::remove(path.c_str());
}

TEST_CASE("reports serialize") {
  const Json r = to_json(rank_interval(parse_ket("|000>+|111>", {2, 2, 2})));
  CHECK(r["lower"] == 2);
  CHECK(r["upper"] == 2);
  CHECK(r.contains("decomposition"));
  const Json c = to_json(catalog_get("2x2x2-w"));
  CHECK(c["id"] == "2x2x2-w");
}

}  // TEST_SUITE
