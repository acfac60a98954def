#pragma once

/*
 * Expression trees over a single complex variable `x`.
 *
 * Grammar (whitespace is ignored between tokens):
 *
 *   expr    := term   (('+' | '-') term)*
 *   term    := unary  (('*' | '/') unary)*
 *   unary   := '-' unary | power
 *   power   := primary ('^' unary)?          right-associative
 *   primary := number | 'x' | 'pi' | 'e'
 *            | ('exp' | 'log' | 'sin' | 'cos' | 'sqrt') '(' expr ')'
 *            | '(' expr ')'
 *   number  := digits ['.' digits] [('e' | 'E') ['+' | '-'] digits]
 *
 * `^` binds tighter than unary minus, so -x^2 is -(x^2) and 2^-x is 2^(-x).
 * Multivalued functions use principal branches; a^b is exp(b*log(a)).
 */

#include <array>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "phisimpson/errors.hpp"

namespace phisimpson {

using complex = std::complex<double>;

enum class Op { Constant, Variable, Neg, Exp, Log, Sin, Cos, Sqrt, Add, Sub, Mul, Div, Pow };

constexpr int arity(Op op) noexcept {
  switch (op) {
    case Op::Constant:
    case Op::Variable:
      return 0;
    case Op::Neg:
    case Op::Exp:
    case Op::Log:
    case Op::Sin:
    case Op::Cos:
    case Op::Sqrt:
      return 1;
    default:
      return 2;
  }
}

constexpr std::string_view op_name(Op op) noexcept {
  switch (op) {
    case Op::Constant: return "const";
    case Op::Variable: return "x";
    case Op::Neg: return "neg";
    case Op::Exp: return "exp";
    case Op::Log: return "log";
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Sqrt: return "sqrt";
    case Op::Add: return "add";
    case Op::Sub: return "sub";
    case Op::Mul: return "mul";
    case Op::Div: return "div";
    case Op::Pow: return "pow";
  }
  return "?";
}

// Immutable expression handle. Copies share the underlying tree.
class Expr {
  struct Node {
    Op op;
    complex value{};
    std::string name;  // spelling of a named constant ("pi", "e"); empty otherwise
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };
  using NodePtr = std::shared_ptr<const Node>;

 public:
  Expr() : Expr(constant(0.0)) {}

  static Expr constant(complex v, std::string name = {}) {
    return Expr(std::make_shared<const Node>(Node{Op::Constant, v, std::move(name), {}, {}}));
  }
  static Expr variable() {
    return Expr(std::make_shared<const Node>(Node{Op::Variable, {}, {}, {}, {}}));
  }
  static Expr unary(Op op, const Expr& arg) {
    if (arity(op) != 1) throw std::invalid_argument("Expr::unary: not a unary op");
    return Expr(std::make_shared<const Node>(Node{op, {}, {}, arg.root_, {}}));
  }
  static Expr binary(Op op, const Expr& lhs, const Expr& rhs) {
    if (arity(op) != 2) throw std::invalid_argument("Expr::binary: not a binary op");
    return Expr(std::make_shared<const Node>(Node{op, {}, {}, lhs.root_, rhs.root_}));
  }

  Op op() const noexcept { return root_->op; }
  complex value() const noexcept { return root_->value; }
  const std::string& name() const noexcept { return root_->name; }
  Expr lhs() const { return Expr(root_->lhs); }
  Expr rhs() const { return Expr(root_->rhs); }

  bool is_constant() const noexcept { return op() == Op::Constant; }
  bool is_constant(double v) const noexcept { return is_constant() && value() == complex(v, 0.0); }

  bool depends_on_x() const noexcept {
    if (op() == Op::Variable) return true;
    if (root_->lhs && lhs().depends_on_x()) return true;
    return root_->rhs && rhs().depends_on_x();
  }

  std::size_t size() const noexcept {
    std::size_t n = 1;
    if (root_->lhs) n += lhs().size();
    if (root_->rhs) n += rhs().size();
    return n;
  }

  complex operator()(complex z) const;

  bool same_node(const Expr& other) const noexcept { return root_ == other.root_; }

 private:
  explicit Expr(NodePtr root) : root_(std::move(root)) {}

  NodePtr root_;
};

namespace detail {

inline std::string format_real(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

inline bool is_finite(complex z) noexcept { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Exponent that is a small real integer, evaluated by repeated squaring.
inline bool small_integer(complex w, long& n) noexcept {
  if (w.imag() != 0.0) return false;
  const double r = w.real();
  if (std::abs(r) > 64.0 || r != std::floor(r)) return false;
  n = static_cast<long>(r);
  return true;
}

inline complex ipow(complex base, long n) {
  complex result = 1.0;
  unsigned long k = static_cast<unsigned long>(n < 0 ? -n : n);
  while (k != 0) {
    if (k & 1UL) result *= base;
    base *= base;
    k >>= 1;
  }
  return n < 0 ? 1.0 / result : result;
}

}  // namespace detail

// Fully parenthesized rendering; parse(to_string(e)) evaluates identically to e.
inline std::string to_string(const Expr& e) {
  switch (e.op()) {
    case Op::Constant: {
      if (!e.name().empty()) return e.name();
      const complex v = e.value();
      std::string re = detail::format_real(v.real());
      if (v.real() < 0.0 || std::signbit(v.real())) re = "(0 - " + detail::format_real(-v.real()) + ")";
      if (v.imag() == 0.0) return re;
      return "(" + re + " + " + detail::format_real(v.imag()) + "*sqrt(0 - 1))";
    }
    case Op::Variable:
      return "x";
    case Op::Neg:
      return "(-" + to_string(e.lhs()) + ")";
    case Op::Exp:
    case Op::Log:
    case Op::Sin:
    case Op::Cos:
    case Op::Sqrt:
      return std::string(op_name(e.op())) + "(" + to_string(e.lhs()) + ")";
    case Op::Add:
      return "(" + to_string(e.lhs()) + " + " + to_string(e.rhs()) + ")";
    case Op::Sub:
      return "(" + to_string(e.lhs()) + " - " + to_string(e.rhs()) + ")";
    case Op::Mul:
      return "(" + to_string(e.lhs()) + "*" + to_string(e.rhs()) + ")";
    case Op::Div:
      return "(" + to_string(e.lhs()) + "/" + to_string(e.rhs()) + ")";
    case Op::Pow:
      return "(" + to_string(e.lhs()) + "^" + to_string(e.rhs()) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

inline complex eval(const Expr& e, complex z) {
  auto checked = [&](complex v) {
    if (!detail::is_finite(v)) throw DomainError(to_string(e), "non-finite result");
    return v;
  };

  switch (e.op()) {
    case Op::Constant:
      return e.value();
    case Op::Variable:
      return z;
    case Op::Neg:
      // 0 - u keeps the imaginary zero positive, so log/sqrt stay on the principal branch.
      return complex(0.0) - eval(e.lhs(), z);
    case Op::Exp:
      return checked(std::exp(eval(e.lhs(), z)));
    case Op::Log: {
      const complex u = eval(e.lhs(), z);
      if (u == complex(0.0)) throw DomainError(to_string(e), "logarithm of zero");
      return checked(std::log(u));
    }
    case Op::Sin:
      return checked(std::sin(eval(e.lhs(), z)));
    case Op::Cos:
      return checked(std::cos(eval(e.lhs(), z)));
    case Op::Sqrt:
      return std::sqrt(eval(e.lhs(), z));
    case Op::Add:
      return checked(eval(e.lhs(), z) + eval(e.rhs(), z));
    case Op::Sub:
      return checked(eval(e.lhs(), z) - eval(e.rhs(), z));
    case Op::Mul:
      return checked(eval(e.lhs(), z) * eval(e.rhs(), z));
    case Op::Div: {
      const complex num = eval(e.lhs(), z);
      const complex den = eval(e.rhs(), z);
      if (den == complex(0.0)) throw DomainError(to_string(e), "division by zero");
      return checked(num / den);
    }
    case Op::Pow: {
      const complex base = eval(e.lhs(), z);
      const complex w = eval(e.rhs(), z);
      long n = 0;
      if (detail::small_integer(w, n)) {
        if (n < 0 && base == complex(0.0)) throw DomainError(to_string(e), "zero to a negative power");
        return checked(detail::ipow(base, n));
      }
      if (base == complex(0.0)) {
        if (w.real() > 0.0) return 0.0;
        throw DomainError(to_string(e), "zero to a power with non-positive real part");
      }
      return checked(std::exp(w * std::log(base)));
    }
  }
  throw DomainError(to_string(e), "unknown node");
}

inline complex Expr::operator()(complex z) const { return eval(*this, z); }

// ---------------------------------------------------------------------------
// Smart constructors (fold only trivially constant cases)
// ---------------------------------------------------------------------------

inline Expr operator-(const Expr& u) {
  if (u.is_constant()) return Expr::constant(complex(0.0) - u.value());
  if (u.op() == Op::Neg) return u.lhs();
  return Expr::unary(Op::Neg, u);
}

inline Expr operator+(const Expr& u, const Expr& v) {
  if (u.is_constant() && v.is_constant()) return Expr::constant(u.value() + v.value());
  if (u.is_constant(0.0)) return v;
  if (v.is_constant(0.0)) return u;
  return Expr::binary(Op::Add, u, v);
}

inline Expr operator-(const Expr& u, const Expr& v) {
  if (u.is_constant() && v.is_constant()) return Expr::constant(u.value() - v.value());
  if (v.is_constant(0.0)) return u;
  if (u.is_constant(0.0)) return -v;
  return Expr::binary(Op::Sub, u, v);
}

inline Expr operator*(const Expr& u, const Expr& v) {
  if (u.is_constant() && v.is_constant()) return Expr::constant(u.value() * v.value());
  if (u.is_constant(0.0) || v.is_constant(0.0)) return Expr::constant(0.0);
  if (u.is_constant(1.0)) return v;
  if (v.is_constant(1.0)) return u;
  return Expr::binary(Op::Mul, u, v);
}

inline Expr operator/(const Expr& u, const Expr& v) {
  if (u.is_constant(0.0)) return Expr::constant(0.0);
  if (v.is_constant(1.0)) return u;
  return Expr::binary(Op::Div, u, v);
}

inline Expr pow(const Expr& u, const Expr& v) {
  if (v.is_constant(1.0)) return u;
  if (v.is_constant(0.0)) return Expr::constant(1.0);
  return Expr::binary(Op::Pow, u, v);
}

inline Expr exp(const Expr& u) { return Expr::unary(Op::Exp, u); }
inline Expr log(const Expr& u) { return Expr::unary(Op::Log, u); }
inline Expr sin(const Expr& u) { return Expr::unary(Op::Sin, u); }
inline Expr cos(const Expr& u) { return Expr::unary(Op::Cos, u); }
inline Expr sqrt(const Expr& u) { return Expr::unary(Op::Sqrt, u); }

// ---------------------------------------------------------------------------
// Symbolic differentiation with respect to x
// ---------------------------------------------------------------------------

inline Expr differentiate(const Expr& e) {
  const auto c = [](double v) { return Expr::constant(v); };

  switch (e.op()) {
    case Op::Constant:
      return c(0.0);
    case Op::Variable:
      return c(1.0);
    case Op::Neg:
      return -differentiate(e.lhs());
    case Op::Exp:
      return e * differentiate(e.lhs());
    case Op::Log:
      return differentiate(e.lhs()) / e.lhs();
    case Op::Sin:
      return cos(e.lhs()) * differentiate(e.lhs());
    case Op::Cos:
      return -(sin(e.lhs()) * differentiate(e.lhs()));
    case Op::Sqrt:
      return differentiate(e.lhs()) / (c(2.0) * e);
    case Op::Add:
      return differentiate(e.lhs()) + differentiate(e.rhs());
    case Op::Sub:
      return differentiate(e.lhs()) - differentiate(e.rhs());
    case Op::Mul: {
      const Expr u = e.lhs(), v = e.rhs();
      return differentiate(u) * v + u * differentiate(v);
    }
    case Op::Div: {
      const Expr u = e.lhs(), v = e.rhs();
      return (differentiate(u) * v - u * differentiate(v)) / pow(v, c(2.0));
    }
    case Op::Pow: {
      const Expr u = e.lhs(), w = e.rhs();
      if (!w.depends_on_x()) return w * pow(u, w - c(1.0)) * differentiate(u);
      if (!u.depends_on_x()) return e * log(u) * differentiate(w);
      return e * (differentiate(w) * log(u) + w * differentiate(u) / u);
    }
  }
  return c(0.0);
}

inline Expr differentiate(const Expr& e, int order) {
  Expr d = e;
  for (int i = 0; i < order; ++i) d = differentiate(d);
  return d;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError("syntax error: " + what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(char ch) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(Op::Add, lhs, term());
      } else if (accept('-')) {
        lhs = Expr::binary(Op::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(Op::Mul, lhs, unary());
      } else if (accept('/')) {
        lhs = Expr::binary(Op::Div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return Expr::unary(Op::Neg, unary());
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) return Expr::binary(Op::Pow, base, unary());
    return base;
  }

  static bool is_digit(char ch) { return ch >= '0' && ch <= '9'; }
  static bool is_ident_start(char ch) { return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || ch == '_'; }
  static bool is_ident(char ch) { return is_ident_start(ch) || is_digit(ch); }

  Expr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input, expected operand");
    const char ch = text_[pos_];

    if (ch == '(') {
      ++pos_;
      Expr inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (is_digit(ch) || ch == '.') return number();
    if (is_ident_start(ch)) return identifier();
    fail("unexpected '" + std::string(1, ch) + "', expected operand");
  }

  Expr number() {
    const std::size_t start = pos_;
    std::size_t end = pos_;
    while (end < text_.size() && is_digit(text_[end])) ++end;
    if (end < text_.size() && text_[end] == '.') {
      ++end;
      while (end < text_.size() && is_digit(text_[end])) ++end;
    }
    // An exponent needs at least one digit; otherwise a trailing 'e' is left for the parser.
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      std::size_t k = end + 1;
      if (k < text_.size() && (text_[k] == '+' || text_[k] == '-')) ++k;
      if (k < text_.size() && is_digit(text_[k])) {
        while (k < text_.size() && is_digit(text_[k])) ++k;
        end = k;
      }
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + end, v);
    if (ec != std::errc() || ptr != text_.data() + end) fail("malformed number");
    pos_ = end;
    return Expr::constant(v);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident(text_[pos_])) ++pos_;
    const std::string_view id = text_.substr(start, pos_ - start);

    if (id == "x") return Expr::variable();
    if (id == "pi") return Expr::constant(3.14159265358979323846, "pi");
    if (id == "e") return Expr::constant(2.71828182845904523536, "e");

    static constexpr std::array<std::pair<std::string_view, Op>, 5> functions{{
        {"exp", Op::Exp}, {"log", Op::Log}, {"sin", Op::Sin}, {"cos", Op::Cos}, {"sqrt", Op::Sqrt}}};
    for (const auto& [fname, op] : functions) {
      if (id != fname) continue;
      if (!accept('(')) fail("expected '(' after '" + std::string(id) + "'");
      Expr arg = expr();
      if (!accept(')')) fail("expected ')'");
      return Expr::unary(op, arg);
    }
    throw UnknownIdentifierError(std::string(id), start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse(std::string_view text) { return detail::Parser(text).parse(); }

}  // namespace phisimpson
