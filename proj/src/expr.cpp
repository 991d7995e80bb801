#include "asymptotica/expr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace asym {

std::string_view name(Var v) {
  switch (v) {
    case Var::x: return "x";
    case Var::y: return "y";
    case Var::z: return "z";
    case Var::u: return "u";
    case Var::v: return "v";
  }
  return "?";
}

std::string_view name(Func f) {
  switch (f) {
    case Func::sin: return "sin";
    case Func::cos: return "cos";
    case Func::exp: return "exp";
    case Func::sqrt: return "sqrt";
  }
  return "?";
}

namespace {

std::string describe_expected(const std::vector<std::string>& expected) {
  std::string s;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) s += (i + 1 == expected.size()) ? " or " : ", ";
    s += expected[i];
  }
  return s;
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& message)
    : std::runtime_error(message + " at offset " + std::to_string(offset) +
                         (expected.empty() ? std::string() : " (expected " + describe_expected(expected) + ")")),
      offset_(offset),
      expected_(std::move(expected)) {}

Expr::Expr() : Expr(Literal{Rational(0)}) {}
Expr::Expr(Node node) : node_(std::make_shared<const Node>(std::move(node))) {}

Expr Expr::literal(Rational q) { return Expr(Literal{std::move(q)}); }
Expr Expr::variable(Var v) { return Expr(Variable{v}); }
Expr Expr::pi() { return Expr(Pi{}); }
Expr Expr::call(Func f, Expr arg) { return Expr(Call{f, std::move(arg)}); }
Expr Expr::power(Expr base, long exponent) { return Expr(Power{std::move(base), exponent}); }

Expr operator+(Expr a, Expr b) { return Expr(Expr::Binary{BinaryOp::add, std::move(a), std::move(b)}); }
Expr operator-(Expr a, Expr b) { return Expr(Expr::Binary{BinaryOp::sub, std::move(a), std::move(b)}); }
Expr operator*(Expr a, Expr b) { return Expr(Expr::Binary{BinaryOp::mul, std::move(a), std::move(b)}); }
Expr operator/(Expr a, Expr b) { return Expr(Expr::Binary{BinaryOp::div, std::move(a), std::move(b)}); }
Expr operator-(Expr a) { return Expr(Expr::Negate{std::move(a)}); }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.node().index() != b.node().index()) return false;
  return std::visit(
      [&](const auto& n) -> bool {
        using N = std::decay_t<decltype(n)>;
        const auto& m = std::get<N>(b.node());
        if constexpr (std::is_same_v<N, Expr::Literal>) return n.value == m.value;
        else if constexpr (std::is_same_v<N, Expr::Variable>) return n.var == m.var;
        else if constexpr (std::is_same_v<N, Expr::Pi>) return true;
        else if constexpr (std::is_same_v<N, Expr::Negate>) return n.operand == m.operand;
        else if constexpr (std::is_same_v<N, Expr::Binary>) return n.op == m.op && n.lhs == m.lhs && n.rhs == m.rhs;
        else if constexpr (std::is_same_v<N, Expr::Power>) return n.exponent == m.exponent && n.base == m.base;
        else return n.func == m.func && n.arg == m.arg;
      },
      a.node());
}

std::set<Var> Expr::free_variables() const {
  std::set<Var> out;
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Variable>) {
          out.insert(n.var);
        } else if constexpr (std::is_same_v<N, Negate>) {
          out.merge(n.operand.free_variables());
        } else if constexpr (std::is_same_v<N, Binary>) {
          out.merge(n.lhs.free_variables());
          out.merge(n.rhs.free_variables());
        } else if constexpr (std::is_same_v<N, Power>) {
          out.merge(n.base.free_variables());
        } else if constexpr (std::is_same_v<N, Call>) {
          out.merge(n.arg.free_variables());
        }
      },
      node());
  return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
};

constexpr int kPrecSum = 10;
constexpr int kPrecProduct = 20;
constexpr int kPrecUnary = 30;
constexpr int kPrecPower = 40;

const std::vector<std::string> kOperandStart{"number", "variable", "function", "'('", "'-'"};

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) { advance(); }

  Expr parse_all() {
    if (tok_.kind == Tok::end) throw ParseError(tok_.offset, kOperandStart, "empty input");
    Expr e = parse_expr(0);
    if (tok_.kind != Tok::end) {
      throw ParseError(tok_.offset, {"operator", "end of input"},
                       tok_.kind == Tok::rparen ? "unbalanced ')'" : "unexpected '" + tok_.text + "'");
    }
    return e;
  }

 private:
  Expr parse_expr(int min_prec) {
    Expr lhs = parse_prefix();
    for (;;) {
      int prec = 0;
      BinaryOp op{};
      switch (tok_.kind) {
        case Tok::plus: prec = kPrecSum; op = BinaryOp::add; break;
        case Tok::minus: prec = kPrecSum; op = BinaryOp::sub; break;
        case Tok::star: prec = kPrecProduct; op = BinaryOp::mul; break;
        case Tok::slash: prec = kPrecProduct; op = BinaryOp::div; break;
        case Tok::caret: prec = kPrecPower; break;
        default: return lhs;
      }
      if (prec < min_prec) return lhs;
      const Token op_tok = tok_;
      advance();
      if (op_tok.kind == Tok::caret) {
        const std::size_t at = tok_.offset;
        Expr rhs = parse_expr(kPrecPower);
        lhs = Expr::power(std::move(lhs), integer_exponent(rhs, at));
      } else {
        Expr rhs = parse_expr(prec + 1);
        lhs = Expr(Expr::Binary{op, std::move(lhs), std::move(rhs)});
      }
    }
  }

  Expr parse_prefix() {
    const Token t = tok_;
    switch (t.kind) {
      case Tok::minus: {
        advance();
        return -parse_expr(kPrecUnary);
      }
      case Tok::number: {
        advance();
        return Expr::literal(parse_number(t));
      }
      case Tok::lparen: {
        advance();
        Expr inner = parse_expr(0);
        expect(Tok::rparen, "')'");
        return inner;
      }
      case Tok::ident: return parse_identifier();
      case Tok::end: throw ParseError(t.offset, kOperandStart, "unexpected end of input");
      case Tok::rparen: throw ParseError(t.offset, kOperandStart, "unbalanced ')'");
      default: throw ParseError(t.offset, kOperandStart, "unexpected '" + t.text + "'");
    }
  }

  Expr parse_identifier() {
    const Token t = tok_;
    advance();
    static const std::vector<std::pair<std::string_view, Var>> vars{
        {"x", Var::x}, {"y", Var::y}, {"z", Var::z}, {"u", Var::u}, {"v", Var::v}};
    static const std::vector<std::pair<std::string_view, Func>> funcs{
        {"sin", Func::sin}, {"cos", Func::cos}, {"exp", Func::exp}, {"sqrt", Func::sqrt}};
    for (const auto& [n, v] : vars)
      if (t.text == n) return Expr::variable(v);
    if (t.text == "pi") return Expr::pi();
    for (const auto& [n, f] : funcs) {
      if (t.text != n) continue;
      expect(Tok::lparen, "'('");
      Expr arg = parse_expr(0);
      expect(Tok::rparen, "')'");
      return Expr::call(f, std::move(arg));
    }
    throw ParseError(t.offset, {"x", "y", "z", "u", "v", "pi", "sin", "cos", "exp", "sqrt"},
                     "unknown identifier '" + t.text + "'");
  }

  long integer_exponent(const Expr& rhs, std::size_t at) const {
    const auto q = constant_value(rhs, at);
    if (boost::multiprecision::denominator(q) != 1)
      throw ParseError(at, {"integer exponent"}, "exponent " + to_string(q) + " is not an integer");
    const auto n = boost::multiprecision::numerator(q);
    if (n > 4096 || n < -4096) throw ParseError(at, {"integer exponent"}, "exponent out of range");
    return n.convert_to<long>();
  }

  // Exponents must be built from literals with + - * / ^ only.
  Rational constant_value(const Expr& e, std::size_t at) const {
    return std::visit(
        [&](const auto& n) -> Rational {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, Expr::Literal>) {
            return n.value;
          } else if constexpr (std::is_same_v<N, Expr::Negate>) {
            return -constant_value(n.operand, at);
          } else if constexpr (std::is_same_v<N, Expr::Binary>) {
            const Rational l = constant_value(n.lhs, at);
            const Rational r = constant_value(n.rhs, at);
            switch (n.op) {
              case BinaryOp::add: return l + r;
              case BinaryOp::sub: return l - r;
              case BinaryOp::mul: return l * r;
              case BinaryOp::div:
                if (r == 0) throw ParseError(at, {"integer exponent"}, "division by zero in exponent");
                return l / r;
            }
            return Rational(0);
          } else if constexpr (std::is_same_v<N, Expr::Power>) {
            const Rational b = constant_value(n.base, at);
            if (b == 0 && n.exponent < 0) throw ParseError(at, {"integer exponent"}, "division by zero in exponent");
            Rational r(1);
            for (long i = 0; i < (n.exponent < 0 ? -n.exponent : n.exponent); ++i) r *= b;
            return n.exponent < 0 ? Rational(1) / r : r;
          } else {
            throw ParseError(at, {"integer exponent"}, "exponent must be a constant integer (general powers need log, which is not provided)");
          }
        },
        e.node());
  }

  Rational parse_number(const Token& t) const {
    // digits [. digits] [e [+-] digits], converted exactly.
    const std::string& s = t.text;
    std::size_t i = 0;
    boost::multiprecision::cpp_int mantissa = 0;
    int scale = 0;
    bool seen_digit = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      mantissa = mantissa * 10 + (s[i] - '0');
      seen_digit = true;
      ++i;
    }
    if (i < s.size() && s[i] == '.') {
      ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        mantissa = mantissa * 10 + (s[i] - '0');
        --scale;
        seen_digit = true;
        ++i;
      }
    }
    if (!seen_digit) throw ParseError(t.offset, {"digit"}, "malformed number '" + s + "'");
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
      ++i;
      int sign = 1;
      if (i < s.size() && (s[i] == '+' || s[i] == '-')) sign = (s[i++] == '-') ? -1 : 1;
      if (i >= s.size()) throw ParseError(t.offset + i, {"digit"}, "malformed exponent in '" + s + "'");
      int ex = 0;
      while (i < s.size()) {
        ex = ex * 10 + (s[i] - '0');
        if (ex > 400) throw ParseError(t.offset, {}, "literal exponent out of range");
        ++i;
      }
      scale += sign * ex;
    }
    boost::multiprecision::cpp_int ten_pow = 1;
    for (int k = 0; k < (scale < 0 ? -scale : scale); ++k) ten_pow *= 10;
    return scale >= 0 ? Rational(mantissa * ten_pow) : Rational(mantissa, ten_pow);
  }

  void expect(Tok kind, const std::string& what) {
    if (tok_.kind != kind) {
      if (tok_.kind == Tok::end) throw ParseError(tok_.offset, {what}, "unexpected end of input");
      throw ParseError(tok_.offset, {what}, "unexpected '" + tok_.text + "'");
    }
    advance();
  }

  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) {
      tok_ = {Tok::end, start, ""};
      return;
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        ++pos_;
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
      tok_ = {Tok::number, start, std::string(src_.substr(start, pos_ - start))};
      if (std::count(tok_.text.begin(), tok_.text.end(), '.') > 1)
        throw ParseError(start, {"number"}, "malformed number '" + tok_.text + "'");
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
      tok_ = {Tok::ident, start, std::string(src_.substr(start, pos_ - start))};
      return;
    }
    ++pos_;
    switch (c) {
      case '+': tok_ = {Tok::plus, start, "+"}; return;
      case '-': tok_ = {Tok::minus, start, "-"}; return;
      case '*': tok_ = {Tok::star, start, "*"}; return;
      case '/': tok_ = {Tok::slash, start, "/"}; return;
      case '^': tok_ = {Tok::caret, start, "^"}; return;
      case '(': tok_ = {Tok::lparen, start, "("}; return;
      case ')': tok_ = {Tok::rparen, start, ")"}; return;
      default: break;
    }
    throw ParseError(start, {"operator", "operand"}, "unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token tok_{Tok::end, 0, ""};
};

// ---------------------------------------------------------------------------
// Printer

int precedence(const Expr& e) {
  return std::visit(
      [](const auto& n) -> int {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Expr::Binary>)
          return (n.op == BinaryOp::add || n.op == BinaryOp::sub) ? kPrecSum : kPrecProduct;
        else if constexpr (std::is_same_v<N, Expr::Negate>) return kPrecUnary;
        else if constexpr (std::is_same_v<N, Expr::Power>) return kPrecPower;
        else if constexpr (std::is_same_v<N, Expr::Literal>) return n.value < 0 ? kPrecUnary : 100;
        else return 100;
      },
      e.node());
}

std::string literal_text(const Rational& q) {
  using boost::multiprecision::cpp_int;
  if (q < 0) return "-" + literal_text(-q);
  cpp_int num = boost::multiprecision::numerator(q);
  cpp_int den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  // Exact decimal when the denominator is 2^a 5^b, otherwise a quotient.
  cpp_int d = den;
  int twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1) return num.str() + "/" + den.str();
  const int digits = std::max(twos, fives);
  cpp_int scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const cpp_int scaled = num * (scale / den);
  std::string s = scaled.str();
  if (static_cast<int>(s.size()) <= digits) s = std::string(static_cast<std::size_t>(digits) + 1 - s.size(), '0') + s;
  return s.substr(0, s.size() - static_cast<std::size_t>(digits)) + "." + s.substr(s.size() - static_cast<std::size_t>(digits));
}

std::string wrap(const std::string& s, bool parens) { return parens ? "(" + s + ")" : s; }

std::string render(const Expr& e) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Expr::Literal>) {
          const std::string s = literal_text(n.value);
          // A quotient literal would re-parse as a division; keep it atomic.
          return s.find('/') != std::string::npos ? "(" + s + ")" : s;
        } else if constexpr (std::is_same_v<N, Expr::Variable>) {
          return std::string(name(n.var));
        } else if constexpr (std::is_same_v<N, Expr::Pi>) {
          return "pi";
        } else if constexpr (std::is_same_v<N, Expr::Negate>) {
          return "-" + wrap(render(n.operand), precedence(n.operand) < kPrecUnary);
        } else if constexpr (std::is_same_v<N, Expr::Binary>) {
          const int p = precedence(e);
          static constexpr const char* ops[] = {" + ", " - ", "*", "/"};
          return wrap(render(n.lhs), precedence(n.lhs) < p) + ops[static_cast<int>(n.op)] +
                 wrap(render(n.rhs), precedence(n.rhs) <= p);
        } else if constexpr (std::is_same_v<N, Expr::Power>) {
          const std::string ex = n.exponent < 0 ? "(" + std::to_string(n.exponent) + ")" : std::to_string(n.exponent);
          return wrap(render(n.base), precedence(n.base) <= kPrecPower) + "^" + ex;
        } else {
          return std::string(name(n.func)) + "(" + render(n.arg) + ")";
        }
      },
      e.node());
}

}  // namespace

Expr parse(std::string_view source) { return Parser(source).parse_all(); }

std::string to_string(const Expr& e) { return render(e); }

double eval_at(const Expr& e, Var v, double value) {
  Bindings<double> b(0.0);
  b.bind(v, value);
  return eval(e, b);
}

Jet jet_at(const Expr& e, Var v, double base, int order) {
  const JetShape shape{order, 0};
  Bindings<Jet> b(Jet(0.0, shape));
  b.bind(v, Jet::variable(Slot::x, base, shape));
  return eval(e, b);
}

}  // namespace asym

namespace asym {

Expr substitute(const Expr& e, Var v, const Expr& replacement) {
  return std::visit(
      [&](const auto& n) -> Expr {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Expr::Variable>) {
          return n.var == v ? replacement : e;
        } else if constexpr (std::is_same_v<N, Expr::Negate>) {
          return -substitute(n.operand, v, replacement);
        } else if constexpr (std::is_same_v<N, Expr::Binary>) {
          return Expr(Expr::Binary{n.op, substitute(n.lhs, v, replacement), substitute(n.rhs, v, replacement)});
        } else if constexpr (std::is_same_v<N, Expr::Power>) {
          return Expr::power(substitute(n.base, v, replacement), n.exponent);
        } else if constexpr (std::is_same_v<N, Expr::Call>) {
          return Expr::call(n.func, substitute(n.arg, v, replacement));
        } else {
          return e;
        }
      },
      e.node());
}

}  // namespace asym
