#pragma once

// A small expression language for user-supplied functions: curve components,
// coefficient functions such as k1(x) or H(x), ambient fields xi(x, y, z).
//
// Grammar (precedence climbing, loosest first):
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' unary)?          right associative, integer exponent
//   atom    := number | x | y | z | u | v | pi | func '(' sum ')' | '(' sum ')'
//   func    := sin | cos | exp | sqrt
// '^' binds tighter than unary minus, so -x^2 is -(x^2).  Exponents must be
// constant integers; there is no log, so general powers are rejected.

#include "asymptotica/jet.hpp"
#include "asymptotica/series.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace asym {

enum class Var { x = 0, y, z, u, v };
enum class Func { sin, cos, exp, sqrt };
enum class BinaryOp { add, sub, mul, div };

std::string_view name(Var v);
std::string_view name(Func f);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& message);
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class UnboundVariable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Expr {
 public:
  struct Literal;
  struct Variable;
  struct Pi;
  struct Negate;
  struct Binary;
  struct Power;
  struct Call;
  using Node = std::variant<Literal, Variable, Pi, Negate, Binary, Power, Call>;

  Expr();  // the literal 0
  explicit Expr(Node node);

  static Expr literal(Rational q);
  static Expr variable(Var v);
  static Expr pi();
  static Expr call(Func f, Expr arg);
  static Expr power(Expr base, long exponent);

  const Node& node() const;

  std::set<Var> free_variables() const;

  friend bool operator==(const Expr& a, const Expr& b);

  friend Expr operator+(Expr a, Expr b);
  friend Expr operator-(Expr a, Expr b);
  friend Expr operator*(Expr a, Expr b);
  friend Expr operator/(Expr a, Expr b);
  friend Expr operator-(Expr a);

 private:
  std::shared_ptr<const Node> node_;
};

struct Expr::Literal {
  Rational value;
};
struct Expr::Variable {
  Var var;
};
struct Expr::Pi {};
struct Expr::Negate {
  Expr operand;
};
struct Expr::Binary {
  BinaryOp op;
  Expr lhs, rhs;
};
struct Expr::Power {
  Expr base;
  long exponent;
};
struct Expr::Call {
  Func func;
  Expr arg;
};

inline const Expr::Node& Expr::node() const { return *node_; }

/// Parses `source`; throws ParseError carrying the byte offset and expected tokens.
Expr parse(std::string_view source);

/// Minimal-parenthesis rendering that re-parses to a structurally equal tree.
std::string to_string(const Expr& e);

// ---------------------------------------------------------------------------
// Evaluation over a scalar ring.

template <class R>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static double constant(const Rational& q, const double&) { return q.convert_to<double>(); }
  static double pi(const double&) { return std::numbers::pi; }
  static double reciprocal(double a) {
    if (a == 0.0) throw DomainError("division by zero");
    return 1.0 / a;
  }
  static double sqrt(double a) {
    if (a < 0.0) throw DomainError("sqrt of a negative value");
    return std::sqrt(a);
  }
  static double sin(double a) { return std::sin(a); }
  static double cos(double a) { return std::cos(a); }
  static double exp(double a) { return std::exp(a); }
};

template <>
struct ScalarTraits<Jet> {
  static Jet constant(const Rational& q, const Jet& like) { return Jet(q.convert_to<double>(), like.shape()); }
  static Jet pi(const Jet& like) { return Jet(std::numbers::pi, like.shape()); }
  static Jet reciprocal(const Jet& a) { return asym::reciprocal(a); }
  static Jet sqrt(const Jet& a) { return asym::sqrt(a); }
  static Jet sin(const Jet& a) { return asym::sin(a); }
  static Jet cos(const Jet& a) { return asym::cos(a); }
  static Jet exp(const Jet& a) { return asym::exp(a); }
};

template <>
struct ScalarTraits<PowerSeriesQ> {
  static PowerSeriesQ constant(const Rational& q, const PowerSeriesQ& like) { return PowerSeriesQ(q, like.order()); }
  static PowerSeriesQ pi(const PowerSeriesQ&) { throw NotExact("pi has no exact rational value"); }
  static PowerSeriesQ reciprocal(const PowerSeriesQ& a) {
    if (a[0] == 0) throw DomainError("division by a series without a constant term");
    return PowerSeriesQ(Rational(1), a.order()) / a;
  }
  static PowerSeriesQ sqrt(const PowerSeriesQ& a) { return asym::sqrt(a); }
  static PowerSeriesQ sin(const PowerSeriesQ& a) { return asym::sin(a); }
  static PowerSeriesQ cos(const PowerSeriesQ& a) { return asym::cos(a); }
  static PowerSeriesQ exp(const PowerSeriesQ& a) { return asym::exp(a); }
};

/// Variable values for one evaluation.  `prototype` fixes the shape (jet
/// orders, series truncation) of constants.
template <class R>
class Bindings {
 public:
  explicit Bindings(R prototype) : prototype_(std::move(prototype)) {}

  Bindings& bind(Var v, R value) {
    values_[static_cast<std::size_t>(v)] = std::move(value);
    return *this;
  }
  const R& get(Var v) const {
    const auto& slot = values_[static_cast<std::size_t>(v)];
    if (!slot) throw UnboundVariable("unbound variable '" + std::string(name(v)) + "'");
    return *slot;
  }
  const R& prototype() const { return prototype_; }

 private:
  R prototype_;
  std::array<std::optional<R>, 5> values_{};
};

namespace detail {

// Repeated squaring; identical for every ring so the value slot of a jet
// evaluation agrees bit-for-bit with the plain evaluation.
template <class R>
R integer_power(const R& a, long n, const R& one) {
  if (n < 0) return ScalarTraits<R>::reciprocal(integer_power(a, -n, one));
  R result = one;
  R base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

}  // namespace detail

template <class R>
R eval(const Expr& e, const Bindings<R>& b) {
  using T = ScalarTraits<R>;
  return std::visit(
      [&](const auto& n) -> R {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Expr::Literal>) {
          return T::constant(n.value, b.prototype());
        } else if constexpr (std::is_same_v<N, Expr::Variable>) {
          return b.get(n.var);
        } else if constexpr (std::is_same_v<N, Expr::Pi>) {
          return T::pi(b.prototype());
        } else if constexpr (std::is_same_v<N, Expr::Negate>) {
          return -eval(n.operand, b);
        } else if constexpr (std::is_same_v<N, Expr::Binary>) {
          R l = eval(n.lhs, b);
          R r = eval(n.rhs, b);
          switch (n.op) {
            case BinaryOp::add: return l + r;
            case BinaryOp::sub: return l - r;
            case BinaryOp::mul: return l * r;
            case BinaryOp::div: return l * T::reciprocal(r);
          }
          throw std::logic_error("unreachable");
        } else if constexpr (std::is_same_v<N, Expr::Power>) {
          return detail::integer_power(eval(n.base, b), n.exponent, T::constant(Rational(1), b.prototype()));
        } else {
          R a = eval(n.arg, b);
          switch (n.func) {
            case Func::sin: return T::sin(a);
            case Func::cos: return T::cos(a);
            case Func::exp: return T::exp(a);
            case Func::sqrt: return T::sqrt(a);
          }
          throw std::logic_error("unreachable");
        }
      },
      e.node());
}

/// Replaces every occurrence of `v` by `replacement`.
Expr substitute(const Expr& e, Var v, const Expr& replacement);

/// Convenience: evaluate an expression in one variable at a real point.
double eval_at(const Expr& e, Var v, double value);

/// Univariate Taylor jet of `e` in `v` at `base`, truncated at `order`.
Jet jet_at(const Expr& e, Var v, double base, int order);

}  // namespace asym
