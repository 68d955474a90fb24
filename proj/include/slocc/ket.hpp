#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "slocc/tensor.hpp"

namespace slocc {

struct KetTerm {
  Complex coefficient;
  std::vector<std::size_t> indices;  // one per party
};

/// Sum of coefficient-weighted kets; every term has the same party count.
struct KetExpr {
  std::vector<KetTerm> terms;
};

// Grammar (whitespace insignificant):
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := coeff? ['*'] factor+
//   factor := ket | '(' expr ')'          adjacency is the tensor product
//   ket    := '|' idx (',' idx)* '>'
//   coeff  := number | '(' arith ')'      arith: + - * / sqrt() and the unit i
// Inside a comma-free ket each digit is a separate index when every party
// dimension is at most 10; otherwise the whole digit run is one index.
// The literal "0" denotes the zero tensor.

KetExpr parse_ket_expr(std::string_view text, Dims3 dims);

/// Coefficient tensor of `text`; like terms are summed. With `normalize` the
/// result is divided by its Euclidean norm.
Tensor3 parse_ket(std::string_view text, Dims3 dims, bool normalize = false);

struct PrintOptions {
  int precision = 17;  // significant digits per real component
};

/// Canonical text: lexicographic index order, zero terms omitted, unit
/// coefficients elided. Prints "0" for the zero tensor.
std::string print_ket(const Tensor3& t, const PrintOptions& opts = {});

}  // namespace slocc
