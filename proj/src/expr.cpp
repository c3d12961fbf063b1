#include "sphconv/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "sphconv/errors.hpp"
#include "sphconv/jet.hpp"

namespace sphconv {

struct Expr::Node {
  Op op = Op::Var;
  std::complex<double> value{};
  int exponent = 0;
  bool constant = false;
  std::size_t size = 1;
  std::array<Expr, 2> children{};  // unused slots hold a (null) Var
};

namespace {

bool is_binary(Op op) {
  return op == Op::Add || op == Op::Sub || op == Op::Mul || op == Op::Div;
}

}  // namespace

// A null node is the variable z; Node's own child slots default-construct
// through here, so this must not allocate.
Expr::Expr() : node_(nullptr) {}

Expr Expr::var() { return Expr(); }

Expr Expr::constant(std::complex<double> c) {
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
    throw EvaluationError("non-finite constant in expression");
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = c;
  n->constant = true;
  return Expr(std::move(n));
}

Expr Expr::unary(Op op, Expr arg) {
  if (op != Op::Neg && op != Op::Exp && op != Op::Sqrt)
    throw std::invalid_argument("Expr::unary: not a unary op");
  auto n = std::make_shared<Node>();
  n->op = op;
  n->constant = arg.is_constant();
  n->size = 1 + arg.size();
  n->children[0] = std::move(arg);
  return Expr(std::move(n));
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  if (!is_binary(op)) throw std::invalid_argument("Expr::binary: not a binary op");
  auto n = std::make_shared<Node>();
  n->op = op;
  n->constant = lhs.is_constant() && rhs.is_constant();
  n->size = 1 + lhs.size() + rhs.size();
  n->children[0] = std::move(lhs);
  n->children[1] = std::move(rhs);
  return Expr(std::move(n));
}

Expr Expr::pow_int(Expr base, int exponent) {
  auto n = std::make_shared<Node>();
  n->op = Op::PowInt;
  n->exponent = exponent;
  n->constant = base.is_constant();
  n->size = 1 + base.size();
  n->children[0] = std::move(base);
  return Expr(std::move(n));
}

Op Expr::op() const noexcept { return node_ ? node_->op : Op::Var; }

std::complex<double> Expr::value() const {
  if (op() != Op::Const) throw std::logic_error("Expr::value on non-constant node");
  return node().value;
}

int Expr::exponent() const {
  if (op() != Op::PowInt) throw std::logic_error("Expr::exponent on non-power node");
  return node().exponent;
}

const Expr& Expr::arg() const {
  switch (op()) {
    case Op::Neg:
    case Op::Exp:
    case Op::Sqrt:
    case Op::PowInt:
      return node().children[0];
    default:
      throw std::logic_error("Expr::arg on node without a single operand");
  }
}

const Expr& Expr::lhs() const {
  if (!is_binary(op())) throw std::logic_error("Expr::lhs on non-binary node");
  return node().children[0];
}

const Expr& Expr::rhs() const {
  if (!is_binary(op())) throw std::logic_error("Expr::rhs on non-binary node");
  return node().children[1];
}

bool Expr::is_constant() const noexcept { return node_ && node_->constant; }

std::size_t Expr::size() const noexcept { return node_ ? node_->size : 1; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::Var:
      return true;
    case Op::Const:
      return a.value() == b.value();
    case Op::PowInt:
      return a.exponent() == b.exponent() && a.arg() == b.arg();
    case Op::Neg:
    case Op::Exp:
    case Op::Sqrt:
      return a.arg() == b.arg();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

Expr operator-(Expr a) { return Expr::unary(Op::Neg, std::move(a)); }
Expr operator+(Expr a, Expr b) { return Expr::binary(Op::Add, std::move(a), std::move(b)); }
Expr operator-(Expr a, Expr b) { return Expr::binary(Op::Sub, std::move(a), std::move(b)); }
Expr operator*(Expr a, Expr b) { return Expr::binary(Op::Mul, std::move(a), std::move(b)); }
Expr operator/(Expr a, Expr b) { return Expr::binary(Op::Div, std::move(a), std::move(b)); }
Expr exp(Expr a) { return Expr::unary(Op::Exp, std::move(a)); }
Expr sqrt(Expr a) { return Expr::unary(Op::Sqrt, std::move(a)); }
Expr pow(Expr base, int exponent) { return Expr::pow_int(std::move(base), exponent); }

Expr compose(const Expr& outer, const Expr& inner) {
  switch (outer.op()) {
    case Op::Var:
      return inner;
    case Op::Const:
      return outer;
    case Op::PowInt:
      return pow(compose(outer.arg(), inner), outer.exponent());
    case Op::Neg:
    case Op::Exp:
    case Op::Sqrt:
      return Expr::unary(outer.op(), compose(outer.arg(), inner));
    default:
      return Expr::binary(outer.op(), compose(outer.lhs(), inner), compose(outer.rhs(), inner));
  }
}

std::complex<double> evaluate_constant(const Expr& e) {
  if (!e.is_constant() && e.op() != Op::Const)
    throw EvaluationError("expression depends on z: " + to_string(e));
  return eval_jet(e, std::complex<double>{}).v;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr run() {
    Expr e = sum();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(pos_, msg); }

  void skip_space() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size()) fail(std::string("expected '") + c + "' before end of input");
      fail(std::string("expected '") + c + "'");
    }
  }

  Expr sum() {
    Expr e = product();
    for (;;) {
      if (accept('+'))
        e = std::move(e) + product();
      else if (accept('-'))
        e = std::move(e) - product();
      else
        return e;
    }
  }

  Expr product() {
    Expr e = signed_factor();
    for (;;) {
      if (accept('*'))
        e = std::move(e) * signed_factor();
      else if (accept('/'))
        e = std::move(e) / signed_factor();
      else
        return e;
    }
  }

  Expr signed_factor() {
    if (accept('-')) return -signed_factor();
    if (accept('+')) return signed_factor();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!accept('^')) return base;
    const std::size_t at = pos_;
    Expr rhs = signed_factor();  // right associative: z^2^3 == z^(2^3)
    if (!rhs.is_constant()) throw NonIntegerExponent(at, "exponent must be an integer constant");
    std::complex<double> v;
    try {
      v = evaluate_constant(rhs);
    } catch (const EvaluationError&) {
      throw NonIntegerExponent(at, "exponent does not evaluate to a finite integer");
    }
    const double k = v.real();
    if (v.imag() != 0.0 || k != std::round(k) || std::abs(k) > 1 << 20)
      throw NonIntegerExponent(at, "exponent must be an integer (use sqrt for square roots)");
    return pow(std::move(base), static_cast<int>(k));
  }

  Expr primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Expr e = sum();
      expect(')');
      return e;
    }
    if ((c >= '0' && c <= '9') || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return word();
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
      ++pos_;
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t q = pos_ + 1;
      if (q < src_.size() && (src_[q] == '+' || src_[q] == '-')) ++q;
      if (q < src_.size() && std::isdigit(static_cast<unsigned char>(src_[q]))) {
        pos_ = q;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    double v = 0.0;
    const auto [end, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (ec != std::errc() || end != src_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    if (!std::isfinite(v)) {
      pos_ = start;
      fail("number out of range");
    }
    if (pos_ < src_.size() && src_[pos_] == 'i' &&
        !(pos_ + 1 < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_ + 1])))) {
      ++pos_;
      return constant({0.0, v});
    }
    return constant({v, 0.0});
  }

  Expr word() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::string_view w = src_.substr(start, pos_ - start);
    if (w == "z") return z();
    if (w == "i") return constant({0.0, 1.0});
    if (w == "pi") return constant({std::numbers::pi, 0.0});
    if (w == "exp" || w == "sqrt") {
      expect('(');
      Expr a = sum();
      expect(')');
      return w == "exp" ? exp(std::move(a)) : sqrt(std::move(a));
    }
    pos_ = start;
    fail("unknown identifier '" + std::string(w) + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// Printer precedence levels; higher binds tighter.
int precedence(const Expr& e) {
  switch (e.op()) {
    case Op::Add:
    case Op::Sub:
      return 1;
    case Op::Mul:
    case Op::Div:
      return 2;
    case Op::Neg:
      return 3;
    case Op::PowInt:
      return 4;
    default:
      return 5;
  }
}

std::string format_double(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string print(const Expr& e);

std::string wrap_if(const Expr& e, bool paren) {
  return paren ? "(" + print(e) + ")" : print(e);
}

std::string print_const(std::complex<double> c) {
  const double re = c.real(), im = c.imag();
  if (im == 0.0 && !std::signbit(re)) return format_double(re);
  if (re == 0.0 && !std::signbit(re) && !std::signbit(im)) return format_double(im) + "i";
  // General constants only arise from programmatic construction; print them
  // value-exactly as a parenthesized sum.
  std::string s = "(" + format_double(re);
  s += std::signbit(im) ? "-" : "+";
  s += format_double(std::abs(im)) + "i)";
  return s;
}

std::string print(const Expr& e) {
  const int p = precedence(e);
  switch (e.op()) {
    case Op::Var:
      return "z";
    case Op::Const:
      return print_const(e.value());
    case Op::Exp:
      return "exp(" + print(e.arg()) + ")";
    case Op::Sqrt:
      return "sqrt(" + print(e.arg()) + ")";
    case Op::Neg:
      return "-" + wrap_if(e.arg(), precedence(e.arg()) < p);
    case Op::PowInt: {
      const Expr& b = e.arg();
      // Constants print as literals; anything composite needs parentheses.
      const bool atom = b.op() == Op::Var ||
                        (b.op() == Op::Const && print_const(b.value()).front() != '(') ||
                        b.op() == Op::Exp || b.op() == Op::Sqrt;
      return wrap_if(b, !atom) + "^" + std::to_string(e.exponent());
    }
    default: {
      const char* sym = e.op() == Op::Add ? "+" : e.op() == Op::Sub ? "-" : e.op() == Op::Mul ? "*" : "/";
      return wrap_if(e.lhs(), precedence(e.lhs()) < p) + sym + wrap_if(e.rhs(), precedence(e.rhs()) <= p);
    }
  }
}

}  // namespace

Expr parse(std::string_view source) { return Parser(source).run(); }

std::string to_string(const Expr& e) { return print(e); }

}  // namespace sphconv
