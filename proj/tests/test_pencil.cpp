#include <doctest.h>

#include <set>

#include "slocc/catalog.hpp"
#include "slocc/error.hpp"
#include "slocc/ket.hpp"
#include "slocc/pencil.hpp"
#include "slocc/random.hpp"
#include "slocc/transforms.hpp"

using namespace slocc;

namespace {

PencilInvariants inv(const char* ket, Dims3 d) { return pencil_invariants(parse_ket(ket, d)); }

std::vector<int> v(std::initializer_list<int> l) { return l; }

}  // namespace

TEST_SUITE("pencil") {

// Kronecker forms below were worked out by hand from the two slices.

TEST_CASE("x*I pencil: one eigenvalue with two unit blocks") {
  const auto p = inv("|000>+|011>", {2, 2, 2});
  CHECK(p.normal_rank == 2);
  CHECK(p.column_indices.empty());
  CHECK(p.row_indices.empty());
  REQUIRE(p.finite.size() == 1);
  CHECK(std::abs(p.finite[0].eigenvalue) < 1e-12);
  CHECK(p.finite[0].partition == v({1, 1}));
  CHECK(p.infinite.empty());
}

TEST_CASE("1x2 pencil [x y] has one column minimal index") {
  const auto p = inv("|000>+|101>", {2, 1, 2});
  CHECK(p.normal_rank == 1);
  CHECK(p.column_indices == v({1}));
  CHECK(p.row_indices.empty());
  CHECK(p.finite.empty());
  CHECK(p.infinite.empty());
  CHECK(p.signature() == "eps=[1];eta=[];div=[]");
  const auto q = inv("|000>+|110>", {2, 2, 1});
  CHECK(q.row_indices == v({1}));
  CHECK(q.column_indices.empty());
}

TEST_CASE("GHZ: one finite and one infinite eigenvalue") {
  const auto p = inv("|000>+|111>", {2, 2, 2});
  REQUIRE(p.finite.size() == 1);
  CHECK(p.finite[0].partition == v({1}));
  CHECK(p.infinite == v({1}));
  CHECK(p.signature() == "eps=[];eta=[];div=[[1],[1]]");
}

TEST_CASE("W: a single Jordan block of size two") {
  const auto p = inv("|001>+|010>+|100>", {2, 2, 2});
  REQUIRE(p.finite.size() == 1);
  CHECK(p.finite[0].partition == v({2}));
  CHECK(p.infinite.empty());
  CHECK_FALSE(p.borderline);
}

TEST_CASE("2x3x3: diag(1,0,1) x + diag(0,1,0) y") {
  const auto p = inv("|000>+|111>+|022>", {2, 3, 3});
  REQUIRE(p.finite.size() == 1);
  CHECK(p.finite[0].partition == v({1, 1}));
  CHECK(p.infinite == v({1}));
  // the extra |122> term merges the blocks at infinity into one of size two
  const auto q = inv("|000>+|111>+|022>+|122>", {2, 3, 3});
  CHECK(q.signature() != p.signature());
}

TEST_CASE("dimension totals are consistent") {
  for (const auto& e : catalog_list()) {
    if (!e.table_row) continue;
    const auto p = pencil_invariants(catalog_build(e.id));
    int total = 0;
    for (int x : p.column_indices) total += x;
    for (int x : p.row_indices) total += x;
    for (const auto& f : p.finite)
      for (int x : f.partition) total += x;
    for (int x : p.infinite) total += x;
    // sum of minimal indices plus divisor degrees equals the normal rank
    CHECK_MESSAGE(total == p.normal_rank, e.id);
    CHECK(p.rows - p.normal_rank == static_cast<int>(p.row_indices.size()));
    CHECK(p.cols - p.normal_rank == static_cast<int>(p.column_indices.size()));
  }
}

TEST_CASE("invariants survive random invertible local maps") {
  for (const auto& e : catalog_list()) {
    if (!e.table_row) continue;
    const Tensor3 t = catalog_build(e.id);
    const std::string base = pencil_invariants(t).signature();
    for (std::uint64_t s = 0; s < 50; ++s)
      CHECK_MESSAGE(pencil_invariants(apply_slocc(t, random_slocc(t.dims(), s))).signature() == base, e.id);
  }
}

TEST_CASE("every table row classifies to itself and signatures are distinct") {
  std::set<std::string> seen;
  for (const auto& e : catalog_list()) {
    if (!e.table_row) continue;
    const auto c = classify_2mn(catalog_build(e.id));
    REQUIRE(c.id.has_value());
    CHECK(*c.id == e.id);
    CHECK(seen.insert(c.signature).second);
  }
}

TEST_CASE("perturbed GHZ classifies to GHZ") {
  const Tensor3 ghz = catalog_build("2x2x2-ghz");
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto c = classify_2mn(apply_slocc(ghz, random_slocc({2, 2, 2}, s)));
    REQUIRE(c.id.has_value());
    CHECK(*c.id == "2x2x2-ghz");
  }
}

TEST_CASE("classification errors and misses") {
  CHECK_THROWS_AS(classify_2mn(Tensor3({3, 3, 3})), DomainError);
  CHECK_THROWS_AS(classify_2mn(Tensor3({2, 4, 2})), DomainError);
  CHECK_THROWS_AS(classify_2mn(Tensor3({2, 2, 2})), DomainError);
  CHECK_THROWS_AS(pencil_invariants(Tensor3({3, 2, 2})), DomainError);
  // lower local ranks match the smaller system's representative
  const auto c = classify_2mn(parse_ket("|000>", {2, 2, 2}));
  REQUIRE(c.id.has_value());
  CHECK(*c.id == "1x1x1");
  const auto d = classify_2mn(parse_ket("|000>+|011>+|022>", {2, 3, 4}));
  REQUIRE(d.id.has_value());
  CHECK(*d.id == "1x3x3");
}

}  // TEST_SUITE
