#pragma once

#include <complex>
#include <memory>
#include <string>
#include <string_view>

namespace sphconv {

enum class Op { Var, Const, Neg, Add, Sub, Mul, Div, PowInt, Exp, Sqrt };

/// Immutable expression tree in the single complex variable z.
///
/// Nodes are shared, never mutated, so copies are cheap and an Expr can be
/// read from any number of threads. Build trees either with `parse` or with
/// the free operators below, e.g. `exp(z()) * pow(z(), 2)`.
class Expr {
 public:
  /// Default-constructed Expr is the variable z.
  Expr();

  static Expr var();
  static Expr constant(std::complex<double> c);
  static Expr unary(Op op, Expr arg);
  static Expr binary(Op op, Expr lhs, Expr rhs);
  static Expr pow_int(Expr base, int exponent);

  Op op() const noexcept;
  std::complex<double> value() const;  // Const only
  int exponent() const;                // PowInt only
  const Expr& arg() const;             // Neg, Exp, Sqrt, PowInt (base)
  const Expr& lhs() const;             // binary ops
  const Expr& rhs() const;

  bool is_constant() const noexcept;  // no Var anywhere in the tree
  std::size_t size() const noexcept;  // node count

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  const Node& node() const noexcept { return *node_; }

  std::shared_ptr<const Node> node_;
};

inline Expr z() { return Expr::var(); }
inline Expr constant(std::complex<double> c) { return Expr::constant(c); }

Expr operator-(Expr a);
Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);
Expr exp(Expr a);
Expr sqrt(Expr a);
Expr pow(Expr base, int exponent);

/// Substitutes `inner` for every occurrence of z in `outer`.
Expr compose(const Expr& outer, const Expr& inner);

/// Parses the documented grammar:
///   + - * / ^, unary minus, parentheses, exp(), sqrt(), the variable z,
///   real literals (`2`, `0.5`, `1e-3`), imaginary literals (`2i`, `i`), `pi`.
/// `^` binds tightest, then unary minus, then * /, then + -. `^` is right
/// associative and its exponent must fold to an integer constant.
Expr parse(std::string_view source);

/// Renders an expression in the grammar accepted by `parse`. Trees produced by
/// `parse` survive print/parse unchanged.
std::string to_string(const Expr& e);

/// Value of a variable-free expression; throws EvaluationError otherwise.
std::complex<double> evaluate_constant(const Expr& e);

}  // namespace sphconv
