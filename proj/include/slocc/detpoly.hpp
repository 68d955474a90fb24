#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "slocc/tensor.hpp"

namespace slocc {

/// Exponents (p, q, r) of x^p y^q z^r.
using Exponent = std::array<int, 3>;

/// Lexicographic order with x > y > z, greatest monomial first.
struct LexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const { return a > b; }
};

/// Homogeneous polynomial in x, y, z. Only nonzero coefficients are stored.
class HomPoly3 {
 public:
  using TermMap = std::map<Exponent, Complex, LexGreater>;

  explicit HomPoly3(int degree = 0);

  static HomPoly3 constant(Complex c);
  static HomPoly3 linear(Complex cx, Complex cy, Complex cz);
  /// All exponents of the given degree in lexicographic order (x^n first).
  static std::vector<Exponent> monomials(int degree);
  static HomPoly3 from_dense(int degree, const VectorC& coeffs);

  int degree() const noexcept { return degree_; }
  const TermMap& terms() const noexcept { return terms_; }
  Complex coeff(const Exponent& e) const;
  void add_term(const Exponent& e, Complex c);

  bool is_zero() const noexcept { return terms_.empty(); }
  double max_abs() const;
  /// Coefficients over `monomials(degree())`.
  VectorC dense() const;

  Complex evaluate(Complex x, Complex y, Complex z) const;
  /// d/dx (var 0), d/dy (var 1) or d/dz (var 2). Requires degree >= 1.
  HomPoly3 derivative(int var) const;

  HomPoly3 operator+(const HomPoly3& o) const;
  HomPoly3 operator-(const HomPoly3& o) const;
  HomPoly3 operator*(const HomPoly3& o) const;
  HomPoly3 operator*(Complex s) const;

  friend bool operator==(const HomPoly3&, const HomPoly3&) = default;

 private:
  int degree_;
  TermMap terms_;
};

/// Number of monomials of degree n in three variables, C(n+2, 2).
inline int monomial_count(int n) { return (n + 1) * (n + 2) / 2; }

enum class DetPolyMethod { Auto, Cofactor, Interpolation };

/// f(x,y,z) = det(x A + y B + z C) for the mode-3 slices A, B, C of an
/// n×n×3 tensor. Auto uses cofactor expansion for n <= 6 and interpolation
/// above that.
HomPoly3 det_poly(const Tensor3& t, DetPolyMethod method = DetPolyMethod::Auto);

/// f evaluated at the row vector (x, y, z)·Gᵗ, i.e. variable i becomes
/// sum_j g(i,j) x_j.
HomPoly3 substitute(const HomPoly3& f, const MatrixC& g);

struct MonicResult {
  HomPoly3 poly;
  Complex leading;
};

inline constexpr double kMonicRelTol = 1e-10;

/// Divides by the coefficient of the lexicographically greatest monomial
/// whose magnitude exceeds rel_tol times the largest coefficient.
MonicResult monic_normalize(const HomPoly3& f, double rel_tol = kMonicRelTol);

/// "(-0.5+1i)*x^2*y + 2*x*y*z" style text, lexicographic term order.
std::string format_poly(const HomPoly3& f, int precision = 17);

enum class VerdictKind { CertifiedObstruction, CandidateFound, NoCandidateFound };

std::string to_string(VerdictKind k);

/// Outcome of the determinant-polynomial test. Only CertifiedObstruction is
/// a decision; NoCandidateFound is inconclusive.
struct EquivVerdict {
  VerdictKind kind = VerdictKind::NoCandidateFound;
  std::string obstruction;   // CertifiedObstruction only
  MatrixC g;                 // CandidateFound only: monic(f1 ∘ G) ≈ monic(f2)
  double residual = 0.0;     // coefficient-vector 2-norm of the monic difference
  int restart = -1;          // restart that produced g / the best residual
};

struct EquivOptions {
  int restarts = 64;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  int max_iter = 200;
  double zero_tol = 1e-10;
};

/// Necessary-condition test for type-1/type-2 equivalence of two n×n×3 tensors.
EquivVerdict detpoly_equiv_test(const Tensor3& t1, const Tensor3& t2, const EquivOptions& opts = {});

/// Residual ||monic(f1 ∘ G) - monic(f2)|| used by the test.
double monic_residual(const HomPoly3& f1, const HomPoly3& f2, const MatrixC& g);

}  // namespace slocc
