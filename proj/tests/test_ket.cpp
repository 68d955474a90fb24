#include <doctest.h>

#include <cmath>

#include "slocc/error.hpp"
#include "slocc/ket.hpp"
#include "slocc/random.hpp"

using namespace slocc;

namespace {

double max_diff(const Tensor3& a, const Tensor3& b) { return (a - b).max_abs(); }

}  // namespace

TEST_SUITE("ket") {

TEST_CASE("basic sums") {
  const Tensor3 t = parse_ket("|000>+|111>", {2, 2, 2});
  CHECK(t(0, 0, 0) == Complex(1, 0));
  CHECK(t(1, 1, 1) == Complex(1, 0));
  CHECK(t.norm() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("coefficients") {
  const Tensor3 t = parse_ket("-0.5|001> + (2i)|010> + (1+2i)|100> + 3*|011> - (sqrt(2)/2)|110>", {2, 2, 2});
  CHECK(t(0, 0, 1) == Complex(-0.5, 0));
  CHECK(t(0, 1, 0) == Complex(0, 2));
  CHECK(t(1, 0, 0) == Complex(1, 2));
  CHECK(t(0, 1, 1) == Complex(3, 0));
  CHECK(t(1, 1, 0).real() == doctest::Approx(-std::sqrt(2.0) / 2));
  CHECK(parse_ket("1e-3|000>", {1, 1, 1})(0, 0, 0).real() == doctest::Approx(1e-3));
}

TEST_CASE("like terms add up") {
  const Tensor3 t = parse_ket("|000>+|000>-0.5|000>", {1, 1, 1});
  CHECK(t(0, 0, 0) == Complex(1.5, 0));
}

TEST_CASE("tensor products and groups") {
  // (|0>+|1>)|22> style products
  const Tensor3 t = parse_ket("(|0>+|1>)|2>|2> + |000>", {2, 3, 3});
  CHECK(t(0, 2, 2) == Complex(1, 0));
  CHECK(t(1, 2, 2) == Complex(1, 0));
  CHECK(t(0, 0, 0) == Complex(1, 0));
  const Tensor3 u = parse_ket("|0>(|00>+|11>)", {2, 2, 2});
  CHECK(u == parse_ket("|000>+|011>", {2, 2, 2}));
  const Tensor3 v = parse_ket("|0,1>|2>", {1, 2, 3});
  CHECK(v(0, 1, 2) == Complex(1, 0));
}

TEST_CASE("multi-digit indices need commas") {
  const Tensor3 t = parse_ket("|0,10,3>", {1, 11, 4});
  CHECK(t(0, 10, 3) == Complex(1, 0));
  // with a dimension above 10 a digit run is one index
  CHECK_THROWS_AS(parse_ket("|0103>", {1, 11, 4}), ParseError);
}

TEST_CASE("zero literal") {
  CHECK(parse_ket("0", {2, 2, 2}).is_zero());
  CHECK(print_ket(Tensor3({2, 2, 2})) == "0");
  CHECK_THROWS_AS(parse_ket("0", {2, 2, 2}, true), DomainError);
}

TEST_CASE("normalization") {
  const Tensor3 t = parse_ket("|000>+|111>", {2, 2, 2}, true);
  CHECK(t.norm() == doctest::Approx(1.0));
  CHECK(t(0, 0, 0).real() == doctest::Approx(1 / std::sqrt(2.0)));
}

TEST_CASE("errors carry positions") {
  auto position_of = [](const char* text, Dims3 d) -> std::size_t {
    try {
      parse_ket(text, d);
    } catch (const ParseError& e) {
      return e.position();
    }
    return ParseError::npos - 1;
  };
  CHECK(position_of("|000", {2, 2, 2}) == 4);
  CHECK(position_of("|000>+|2x1>", {2, 2, 2}) == 8);
  CHECK(position_of("|000>+|200>", {2, 2, 2}) != ParseError::npos - 1);
  CHECK_THROWS_AS(parse_ket("", {2, 2, 2}), ParseError);
  CHECK_THROWS_AS(parse_ket("|00>", {2, 2, 2}), ParseError);
  CHECK_THROWS_AS(parse_ket("|000>+|11>", {2, 2, 2}), ParseError);
  CHECK_THROWS_AS(parse_ket("(1/0)|000>", {2, 2, 2}), ParseError);
  CHECK_THROWS_AS(parse_ket("(|0>+|1>|000>", {2, 2, 2}), ParseError);
  CHECK_THROWS_AS(parse_ket("|000> junk", {2, 2, 2}), ParseError);
}

TEST_CASE("printing") {
  CHECK(print_ket(parse_ket("|000>+|111>", {2, 2, 2})) == "|000>+|111>");
  CHECK(print_ket(parse_ket("-0.5|001>", {2, 2, 2})) == "-0.5|001>");
  CHECK(print_ket(parse_ket("(1-2i)|100>", {2, 2, 2})) == "(1-2*i)|100>");
  CHECK(print_ket(parse_ket("(2i)|100>", {2, 2, 2})) == "(2*i)|100>");
  CHECK(print_ket(parse_ket("|0,10,3>", {1, 11, 4})) == "|0,10,3>");
}

TEST_CASE("round trip on random tensors") {
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const Dims3 d{static_cast<std::size_t>(1 + trial % 3), static_cast<std::size_t>(1 + (trial / 3) % 3), static_cast<std::size_t>(1 + (trial / 9) % 4)};
    Tensor3 t = rng.complex_tensor(d) * Complex(std::pow(10.0, (trial % 7) - 3), 0);
    CHECK(max_diff(parse_ket(print_ket(t), d), t) <= 1e-12 * std::max(1.0, t.max_abs()));
  }
  // large dims use the comma form
  const Tensor3 big = rng.complex_tensor({2, 12, 3});
  CHECK(max_diff(parse_ket(print_ket(big), big.dims()), big) < 1e-12);
}

}  // TEST_SUITE
