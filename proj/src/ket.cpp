#include "slocc/ket.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

#include "slocc/error.hpp"

namespace slocc {

namespace {

// Term with the text offset of each index, for bound-check diagnostics.
struct RawTerm {
  Complex coefficient;
  std::vector<std::size_t> indices;
  std::vector<std::size_t> positions;
};
using RawExpr = std::vector<RawTerm>;

class Parser {
 public:
  Parser(std::string_view text, bool split_digits) : s_(text), split_digits_(split_digits) {}

  RawExpr parse() {
    skip_ws();
    if (at_end()) throw ParseError("empty expression", pos_);
    RawExpr e = expr();
    skip_ws();
    if (!at_end()) throw ParseError(std::string("unexpected character '") + s_[pos_] + "'", pos_);
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  bool split_digits_;

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() {
    skip_ws();
    return at_end() ? '\0' : s_[pos_];
  }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    if (peek() != c) {
      if (at_end()) throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
      throw ParseError(std::string("expected '") + c + "' but found '" + s_[pos_] + "'", pos_);
    }
    ++pos_;
  }

  // Offset of the parenthesis matching the '(' at `open`.
  std::size_t matching_paren(std::size_t open) const {
    int depth = 0;
    for (std::size_t p = open; p < s_.size(); ++p) {
      if (s_[p] == '(') ++depth;
      if (s_[p] == ')' && --depth == 0) return p;
    }
    throw ParseError("unbalanced '('", open);
  }

  bool group_contains_ket(std::size_t open) const {
    const std::size_t close = matching_paren(open);
    return s_.substr(open, close - open).find('|') != std::string_view::npos;
  }

  static void add_into(RawExpr& acc, RawExpr rhs, Complex sign, std::size_t where) {
    if (!acc.empty() && !rhs.empty() && acc.front().indices.size() != rhs.front().indices.size())
      throw ParseError("terms with different numbers of parties (" + std::to_string(acc.front().indices.size()) +
                           " vs " + std::to_string(rhs.front().indices.size()) + ")",
                       where);
    for (auto& t : rhs) {
      t.coefficient *= sign;
      acc.push_back(std::move(t));
    }
  }

  RawExpr expr() {
    Complex sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      if (s_[pos_] == '-') sign = -1.0;
      ++pos_;
    }
    RawExpr acc;
    std::size_t where = pos_;
    add_into(acc, term(), sign, where);
    while (peek() == '+' || peek() == '-') {
      sign = s_[pos_] == '-' ? -1.0 : 1.0;
      ++pos_;
      where = (skip_ws(), pos_);
      add_into(acc, term(), sign, where);
    }
    return acc;
  }

  RawExpr term() {
    Complex coef = 1.0;
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      coef = number();
    } else if (c == '(' && !group_contains_ket(pos_)) {
      ++pos_;
      coef = arith();
      expect(')');
    }
    if (peek() == '*') ++pos_;

    RawExpr product{RawTerm{coef, {}, {}}};
    int factors = 0;
    for (;;) {
      const char f = peek();
      RawExpr factor;
      if (f == '|') {
        factor = RawExpr{ket()};
      } else if (f == '(' && group_contains_ket(pos_)) {
        ++pos_;
        factor = expr();
        expect(')');
      } else {
        break;
      }
      RawExpr next;
      for (const auto& a : product)
        for (const auto& b : factor) {
          RawTerm t{a.coefficient * b.coefficient, a.indices, a.positions};
          t.indices.insert(t.indices.end(), b.indices.begin(), b.indices.end());
          t.positions.insert(t.positions.end(), b.positions.begin(), b.positions.end());
          next.push_back(std::move(t));
        }
      product = std::move(next);
      ++factors;
    }
    if (factors == 0) {
      if (at_end()) throw ParseError("expected a ket but input ended", pos_);
      throw ParseError(std::string("expected a ket or '(' but found '") + s_[pos_] + "'", pos_);
    }
    return product;
  }

  RawTerm ket() {
    expect('|');
    RawTerm t{1.0, {}, {}};
    skip_ws();
    std::vector<std::pair<std::string, std::size_t>> items;
    for (;;) {
      skip_ws();
      const std::size_t start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == start) {
        if (at_end()) throw ParseError("unterminated ket", pos_);
        throw ParseError(std::string("expected an index digit but found '") + s_[pos_] + "'", pos_);
      }
      items.emplace_back(std::string(s_.substr(start, pos_ - start)), start);
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      break;
    }
    expect('>');
    if (items.size() == 1 && split_digits_) {
      const auto& [digits, start] = items.front();
      for (std::size_t p = 0; p < digits.size(); ++p) {
        t.indices.push_back(static_cast<std::size_t>(digits[p] - '0'));
        t.positions.push_back(start + p);
      }
    } else {
      for (const auto& [digits, start] : items) {
        if (digits.size() > 9) throw ParseError("index too large", start);
        t.indices.push_back(std::stoul(digits));
        t.positions.push_back(start);
      }
    }
    return t;
  }

  Complex number() {
    skip_ws();
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (!at_end() && s_[pos_] == '.') {
      ++pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    if (!at_end() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) ++p;
      if (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) {
        pos_ = p;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    const std::string tok(s_.substr(start, pos_ - start));
    if (tok.empty() || tok == ".") throw ParseError("malformed number", start);
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || !std::isfinite(v)) throw ParseError("malformed number '" + tok + "'", start);
    return v;
  }

  Complex arith() {
    Complex v = product();
    while (peek() == '+' || peek() == '-') {
      const bool minus = s_[pos_++] == '-';
      const Complex r = product();
      v = minus ? v - r : v + r;
    }
    return v;
  }

  Complex product() {
    Complex v = unary();
    while (peek() == '*' || peek() == '/') {
      const std::size_t at = pos_;
      const bool div = s_[pos_++] == '/';
      const Complex r = unary();
      if (div) {
        if (r == Complex{}) throw ParseError("division by zero", at);
        v /= r;
      } else {
        v *= r;
      }
    }
    return v;
  }

  Complex unary() {
    const char c = peek();
    if (c == '-' || c == '+') {
      ++pos_;
      const Complex v = unary();
      return c == '-' ? -v : v;
    }
    return primary();
  }

  Complex primary() {
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      Complex v = number();
      if (!at_end() && s_[pos_] == 'i') {  // 2i
        ++pos_;
        v *= Complex(0, 1);
      }
      return v;
    }
    if (c == '(') {
      ++pos_;
      const Complex v = arith();
      expect(')');
      return v;
    }
    if (s_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      expect('(');
      const Complex v = arith();
      expect(')');
      return std::sqrt(v);
    }
    if (c == 'i') {
      ++pos_;
      return Complex(0, 1);
    }
    if (at_end()) throw ParseError("expected a number but input ended", pos_);
    throw ParseError(std::string("unexpected character '") + c + "' in coefficient", pos_);
  }
};

bool small_dims(const Dims3& dims) { return dims[0] <= 10 && dims[1] <= 10 && dims[2] <= 10; }

void append_number(std::string& out, double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  out += buf;
}

}  // namespace

KetExpr parse_ket_expr(std::string_view text, Dims3 dims) {
  Parser parser(text, small_dims(dims));
  RawExpr raw = parser.parse();
  KetExpr out;
  for (auto& t : raw) {
    if (t.indices.size() != 3)
      throw ParseError("expected 3 parties per term, got " + std::to_string(t.indices.size()),
                       t.positions.empty() ? 0 : t.positions.front());
    for (std::size_t p = 0; p < 3; ++p)
      if (t.indices[p] >= dims[p])
        throw ParseError("index " + std::to_string(t.indices[p]) + " of party " + std::to_string(p + 1) +
                             " exceeds dimension " + std::to_string(dims[p]),
                         t.positions[p]);
    out.terms.push_back(KetTerm{t.coefficient, std::move(t.indices)});
  }
  return out;
}

Tensor3 parse_ket(std::string_view text, Dims3 dims, bool normalize) {
  {
    std::size_t a = 0, b = text.size();
    while (a < b && std::isspace(static_cast<unsigned char>(text[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(text[b - 1]))) --b;
    if (text.substr(a, b - a) == "0") {
      if (normalize) throw DomainError("cannot normalize the zero tensor");
      return Tensor3(dims);
    }
  }
  const KetExpr e = parse_ket_expr(text, dims);
  std::vector<Complex> entries(dims[0] * dims[1] * dims[2]);
  for (const auto& t : e.terms)
    entries[(t.indices[0] * dims[1] + t.indices[1]) * dims[2] + t.indices[2]] += t.coefficient;
  Tensor3 out(dims, std::move(entries));
  if (normalize) {
    const double n = out.norm();
    if (n == 0.0) throw DomainError("cannot normalize the zero tensor");
    out = out * Complex(1.0 / n);
  }
  return out;
}

std::string print_ket(const Tensor3& t, const PrintOptions& opts) {
  const auto& d = t.dims();
  const bool compact = small_dims(d);
  std::string out;
  for (std::size_t i = 0; i < d[0]; ++i)
    for (std::size_t j = 0; j < d[1]; ++j)
      for (std::size_t k = 0; k < d[2]; ++k) {
        const Complex c = t(i, j, k);
        if (c == Complex{}) continue;
        const bool first = out.empty();
        if (c.imag() == 0.0) {
          double mag = c.real();
          if (mag < 0) {
            out += '-';
            mag = -mag;
          } else if (!first) {
            out += '+';
          }
          if (mag != 1.0) append_number(out, mag, opts.precision);
        } else {
          if (!first) out += '+';
          out += '(';
          if (c.real() != 0.0) {
            append_number(out, c.real(), opts.precision);
            out += c.imag() < 0 ? '-' : '+';
            append_number(out, std::abs(c.imag()), opts.precision);
          } else {
            append_number(out, c.imag(), opts.precision);
          }
          out += "*i)";
        }
        out += '|';
        if (compact) {
          out += std::to_string(i) + std::to_string(j) + std::to_string(k);
        } else {
          out += std::to_string(i) + ',' + std::to_string(j) + ',' + std::to_string(k);
        }
        out += '>';
      }
  return out.empty() ? "0" : out;
}

}  // namespace slocc
