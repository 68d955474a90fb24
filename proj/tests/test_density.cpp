#include <doctest.h>

#include "slocc/density.hpp"
#include "slocc/error.hpp"
#include "slocc/ket.hpp"
#include "slocc/random.hpp"
#include "oracles.hpp"

using namespace slocc;

TEST_SUITE("density") {

TEST_CASE("pure state validation") {
  CHECK_THROWS_AS(PureState({2, 2}, VectorC::Zero(4)), DomainError);
  CHECK_THROWS_AS(PureState({2, 2}, VectorC::Ones(3)), DomainError);
  CHECK_THROWS_AS(PureState({2, 0}, VectorC::Ones(0)), DomainError);
  const PureState s({2, 3}, VectorC::Ones(6));
  CHECK(s.normalized().norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(s.to_tensor(), DomainError);
}

TEST_CASE("density of a pure state") {
  const PureState s = PureState::from_tensor(parse_ket("|000>+|111>", {2, 2, 2}));
  const DensityMatrix rho = density_of(s);
  CHECK(rho.dim() == 8);
  CHECK(total_trace(rho).real() == doctest::Approx(2.0));
  CHECK(rho.matrix()(0, 7) == Complex(1, 0));
}

TEST_CASE("hermiticity is enforced") {
  MatrixC m = MatrixC::Identity(2, 2);
  m(0, 1) = 1;
  CHECK_THROWS_AS(DensityMatrix({2}, m), DomainError);
  CHECK_THROWS_AS(DensityMatrix({3}, MatrixC::Identity(2, 2)), DomainError);
}

TEST_CASE("mixtures") {
  const PureState a = PureState::from_tensor(parse_ket("|000>", {2, 2, 2}));
  const PureState b = PureState::from_tensor(parse_ket("2|111>", {2, 2, 2}));
  const DensityMatrix rho = mixture({a, b}, {0.25, 0.75});
  CHECK(rho.matrix()(0, 0).real() == doctest::Approx(0.25));
  CHECK(rho.matrix()(7, 7).real() == doctest::Approx(0.75));
  CHECK(total_trace(rho).real() == doctest::Approx(1.0));
  CHECK_THROWS_AS(mixture({a, b}, {0.5, 0.6}), DomainError);
  CHECK_THROWS_AS(mixture({a}, {0.5, 0.5}), DomainError);
  CHECK_THROWS_AS(mixture({a, b}, {-0.5, 1.5}), DomainError);
}

TEST_CASE("partial traces match explicit index sums") {
  Rng rng(31);
  for (std::size_t trial = 0; trial < 10; ++trial) {
    const Dims3 d{2 + trial % 2, 2 + (trial / 2) % 2, 1 + trial % 3};
    const Tensor3 t = rng.complex_tensor(d);
    const DensityMatrix rho = density_of(PureState::from_tensor(t));
    for (int p = 0; p < 3; ++p) {
      std::set<std::size_t> others;
      for (std::size_t q = 0; q < 3; ++q)
        if (static_cast<int>(q) != p) others.insert(q);
      CHECK((partial_trace(rho, others).matrix() - oracle::single_party_density(t, p)).norm() < 1e-12);
      CHECK((partial_trace(rho, {static_cast<std::size_t>(p)}).matrix() - oracle::two_party_density(t, p)).norm() < 1e-12);
    }
  }
}

TEST_CASE("partial trace over more than three parties") {
  // |0000> + |1111>: tracing parties 1 and 3 leaves diag(1, 0, 0, 1)
  VectorC v = VectorC::Zero(16);
  v(0) = v(15) = 1;
  const DensityMatrix red = partial_trace(density_of(PureState({2, 2, 2, 2}, v)), {1, 3});
  CHECK(red.party_dims() == std::vector<std::size_t>{2, 2});
  MatrixC want = MatrixC::Zero(4, 4);
  want(0, 0) = want(3, 3) = 1;
  CHECK((red.matrix() - want).norm() == 0.0);
  CHECK_THROWS_AS(partial_trace(red, {0, 1}), DomainError);
  CHECK_THROWS_AS(partial_trace(red, {5}), DomainError);
  CHECK_THROWS_AS(partial_trace(red, {}), DomainError);
}

TEST_CASE("range basis") {
  const DensityMatrix rho = density_of(PureState::from_tensor(parse_ket("|000>+|111>", {2, 2, 2})));
  const auto r = range_basis(partial_trace(rho, {0}));
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0].dot(r[1])) < 1e-12);
  CHECK(range_basis(partial_trace(density_of(PureState::from_tensor(parse_ket("|000>", {2, 2, 2}))), {0})).size() == 1);
  CHECK_THROWS_AS(range_basis(rho, 0.0), DomainError);
}

}  // TEST_SUITE
