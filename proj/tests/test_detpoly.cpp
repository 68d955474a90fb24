#include <doctest.h>

#include <cmath>

#include "slocc/detpoly.hpp"
#include "slocc/error.hpp"
#include "slocc/ket.hpp"
#include "slocc/random.hpp"
#include "slocc/transforms.hpp"
#include "oracles.hpp"

using namespace slocc;

namespace {

double rel_diff(const HomPoly3& a, const HomPoly3& b) {
  const double scale = std::max({a.max_abs(), b.max_abs(), 1e-300});
  return (a - b).max_abs() / scale;
}

Tensor3 from_slices(const MatrixC& a, const MatrixC& b, const MatrixC& c) {
  const MatrixC* s[3] = {&a, &b, &c};
  return Tensor3::generate({static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(a.cols()), 3},
                           [&](std::size_t i, std::size_t j, std::size_t k) {
                             return (*s[k])(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                           });
}

}  // namespace

TEST_SUITE("detpoly") {

TEST_CASE("monomial order is lexicographic, x first") {
  const auto m = HomPoly3::monomials(2);
  REQUIRE(m.size() == 6);
  CHECK(m[0] == Exponent{2, 0, 0});
  CHECK(m[1] == Exponent{1, 1, 0});
  CHECK(m[2] == Exponent{1, 0, 1});
  CHECK(m[3] == Exponent{0, 2, 0});
  CHECK(m[5] == Exponent{0, 0, 2});
  CHECK(monomial_count(4) == 15);
}

TEST_CASE("arithmetic, evaluation and derivatives") {
  const HomPoly3 x = HomPoly3::linear(1, 0, 0), y = HomPoly3::linear(0, 1, 0), z = HomPoly3::linear(0, 0, 1);
  const HomPoly3 f = x * x * y + z * z * z * Complex(2, 0);
  CHECK(f.evaluate(2, 3, 1) == Complex(14, 0));
  CHECK(f.derivative(0) == x * y * Complex(2, 0));
  CHECK(f.derivative(2).coeff({0, 0, 2}) == Complex(6, 0));
  CHECK((f - f).is_zero());
  CHECK(HomPoly3::from_dense(3, f.dense()) == f);
  CHECK_THROWS_AS(f + x, DomainError);
}

TEST_CASE("determinant polynomial matches the permutation expansion") {
  Rng rng(21);
  for (std::size_t n = 1; n <= 5; ++n) {
    const Tensor3 t = rng.complex_tensor({n, n, 3});
    const HomPoly3 f = det_poly(t);
    CHECK(f.degree() == static_cast<int>(n));
    for (int k = 0; k < 5; ++k) {
      const Complex x = rng.complex_normal(), y = rng.complex_normal(), z = rng.complex_normal();
      const Complex want = oracle::det_pencil(t, x, y, z);
      CHECK(std::abs(f.evaluate(x, y, z) - want) < 1e-10 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("cofactor expansion and interpolation agree") {
  Rng rng(22);
  for (std::size_t n = 2; n <= 7; ++n) {
    const Tensor3 t = rng.complex_tensor({n, n, 3});
    CHECK(rel_diff(det_poly(t, DetPolyMethod::Cofactor), det_poly(t, DetPolyMethod::Interpolation)) < 1e-9);
  }
}

TEST_CASE("shape checks") {
  CHECK_THROWS_AS(det_poly(Tensor3({2, 3, 3})), DomainError);
  CHECK_THROWS_AS(det_poly(Tensor3({2, 2, 2})), DomainError);
  CHECK(det_poly(Tensor3({3, 3, 3})).is_zero());
}

TEST_CASE("substitution evaluates at x G^T") {
  Rng rng(23);
  const HomPoly3 f = det_poly(rng.complex_tensor({3, 3, 3}));
  const MatrixC g = rng.complex_matrix(3, 3);
  const HomPoly3 h = substitute(f, g);
  for (int k = 0; k < 5; ++k) {
    const VectorC p = rng.complex_vector(3);
    const VectorC q = g * p;
    CHECK(std::abs(h.evaluate(p(0), p(1), p(2)) - f.evaluate(q(0), q(1), q(2))) < 1e-10 * std::max(1.0, std::abs(h.evaluate(p(0), p(1), p(2)))));
  }
}

TEST_CASE("substitution composes as G1 G2") {
  Rng rng(24);
  const HomPoly3 f = det_poly(rng.complex_tensor({3, 3, 3}));
  const MatrixC g1 = rng.complex_matrix(3, 3), g2 = rng.complex_matrix(3, 3);
  CHECK(rel_diff(substitute(substitute(f, g1), g2), substitute(f, g1 * g2)) < 1e-12);
}

TEST_CASE("equivariance on a few samples") {
  Rng rng(25);
  for (std::size_t n = 2; n <= 4; ++n) {
    const Tensor3 t = rng.complex_tensor({n, n, 3});
    const MatrixC p = random_nonsingular(static_cast<Eigen::Index>(n), 100 + n), q = random_nonsingular(static_cast<Eigen::Index>(n), 200 + n);
    const MatrixC g = random_nonsingular(3, 300 + n);
    CHECK(rel_diff(det_poly(apply_type1(t, p, q)), det_poly(t) * (p.determinant() * q.determinant())) < 1e-10);
    CHECK(rel_diff(det_poly(apply_type2(t, g)), substitute(det_poly(t), g)) < 1e-10);
  }
}

TEST_CASE("monic normalization") {
  const HomPoly3 x = HomPoly3::linear(1, 0, 0), y = HomPoly3::linear(0, 1, 0);
  const auto r = monic_normalize(x * y * Complex(0, 2) + y * y * Complex(4, 0));
  CHECK(r.leading == Complex(0, 2));
  CHECK(r.poly.coeff({1, 1, 0}) == Complex(1, 0));
  // tiny leading coefficients are skipped
  const auto s = monic_normalize(x * x * Complex(1e-14, 0) + y * y * Complex(3, 0));
  CHECK(s.leading == Complex(3, 0));
  CHECK_THROWS_AS(monic_normalize(HomPoly3(2)), DomainError);
}

TEST_CASE("formatting") {
  const HomPoly3 x = HomPoly3::linear(1, 0, 0), y = HomPoly3::linear(0, 1, 0), z = HomPoly3::linear(0, 0, 1);
  CHECK(format_poly(x * y * z) == "x*y*z");
  CHECK(format_poly(x * x * y * Complex(2, 0) - z * z * z) == "2*x^2*y - z^3");
  CHECK(format_poly(HomPoly3(3)) == "0");
}

TEST_CASE("equivalent pairs yield a candidate") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    Rng rng(400 + s);
    const Tensor3 t = rng.complex_tensor({3, 3, 3});
    const Tensor3 u = apply_type2(apply_type1(t, random_nonsingular(3, s), random_nonsingular(3, s + 50)),
                                  random_nonsingular(3, s + 99, 10.0));
    EquivOptions o;
    o.seed = s;
    const EquivVerdict v = detpoly_equiv_test(t, u, o);
    REQUIRE(v.kind == VerdictKind::CandidateFound);
    CHECK(v.residual < 1e-8);
    CHECK(monic_residual(det_poly(t), det_poly(u), v.g) < 1e-8);
  }
}

TEST_CASE("a vanishing polynomial on one side is a certified obstruction") {
  const Tensor3 full = parse_ket("|000>+|111>+|222>", {3, 3, 3});
  // all slices share a zero row
  const Tensor3 degenerate = parse_ket("|000>+|111>+|012>", {3, 3, 3});
  CHECK(det_poly(degenerate).is_zero());
  const EquivVerdict v = detpoly_equiv_test(full, degenerate);
  CHECK(v.kind == VerdictKind::CertifiedObstruction);
  CHECK_FALSE(v.obstruction.empty());
  CHECK(detpoly_equiv_test(degenerate, degenerate).kind == VerdictKind::CandidateFound);
}

TEST_CASE("concurrent lines are not matched to a triangle") {
  MatrixC a = MatrixC::Zero(3, 3), b = MatrixC::Zero(3, 3), c = MatrixC::Zero(3, 3);
  a(0, 0) = 1;
  b(1, 1) = 1;
  c(2, 2) = 1;
  const Tensor3 tri = from_slices(a, b, c);  // xyz
  // det(x I + y P) = x^3 + y^3 for the cyclic shift P; z does not appear
  MatrixC p = MatrixC::Identity(3, 3), q = MatrixC::Zero(3, 3);
  q(0, 1) = q(1, 2) = q(2, 0) = 1;
  const Tensor3 cyc = from_slices(p, q, MatrixC::Zero(3, 3));
  const HomPoly3 f = det_poly(cyc);
  CHECK(f.coeff({3, 0, 0}) == Complex(1, 0));
  CHECK(f.coeff({0, 3, 0}) == Complex(1, 0));
  CHECK(f.terms().size() == 2);
  // three concurrent lines cannot be deformed into a triangle
  EquivOptions o;
  o.restarts = 16;
  const EquivVerdict v = detpoly_equiv_test(cyc, tri, o);
  CHECK(v.kind == VerdictKind::NoCandidateFound);
  CHECK(v.residual > 1e-3);
}

}  // TEST_SUITE
