#pragma once

#include <cmath>
#include <complex>

#include "sphconv/errors.hpp"
#include "sphconv/expr.hpp"

namespace sphconv {

/// Second-order jet of a holomorphic function: (f, f', f'') at one point.
/// `d2` is the raw second derivative, not the Taylor coefficient f''/2.
template <typename Scalar = double>
struct Jet2 {
  using Complex = std::complex<Scalar>;

  Complex v{};
  Complex d1{};
  Complex d2{};

  static Jet2 variable(Complex z) { return {z, Complex(1), Complex(0)}; }
  static Jet2 constant(Complex c) { return {c, Complex(0), Complex(0)}; }

  bool finite() const {
    using std::isfinite;
    return isfinite(v.real()) && isfinite(v.imag()) && isfinite(d1.real()) &&
           isfinite(d1.imag()) && isfinite(d2.real()) && isfinite(d2.imag());
  }

  friend bool operator==(const Jet2&, const Jet2&) = default;
};

template <typename S>
Jet2<S> operator-(const Jet2<S>& a) {
  return {-a.v, -a.d1, -a.d2};
}

template <typename S>
Jet2<S> operator+(const Jet2<S>& a, const Jet2<S>& b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
}

template <typename S>
Jet2<S> operator-(const Jet2<S>& a, const Jet2<S>& b) {
  return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
}

// (uv)'' = u''v + 2u'v' + uv''
template <typename S>
Jet2<S> operator*(const Jet2<S>& a, const Jet2<S>& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + S(2) * a.d1 * b.d1 + a.v * b.d2};
}

/// 1/u; the caller guarantees u != 0.
template <typename S>
Jet2<S> reciprocal(const Jet2<S>& u) {
  const auto r = S(1) / u.v;
  const auto r2 = r * r;
  return {r, -u.d1 * r2, (S(2) * u.d1 * u.d1 - u.v * u.d2) * r2 * r};
}

template <typename S>
Jet2<S> operator/(const Jet2<S>& a, const Jet2<S>& b) {
  return a * reciprocal(b);
}

template <typename S>
Jet2<S> exp(const Jet2<S>& u) {
  const auto e = std::exp(u.v);
  return {e, e * u.d1, e * (u.d2 + u.d1 * u.d1)};
}

/// Principal branch. w = sqrt(u), w' = u'/(2w), w'' = (u'' - 2w'^2)/(2w).
template <typename S>
Jet2<S> sqrt(const Jet2<S>& u) {
  const auto w = std::sqrt(u.v);
  const auto w1 = u.d1 / (S(2) * w);
  return {w, w1, (u.d2 - S(2) * w1 * w1) / (S(2) * w)};
}

namespace detail {

template <typename S>
std::complex<S> ipow(std::complex<S> x, unsigned n) {
  std::complex<S> r(1);
  while (n) {
    if (n & 1u) r *= x;
    x *= x;
    n >>= 1u;
  }
  return r;
}

}  // namespace detail

/// u^n for integer n; for n < 0 the caller guarantees u != 0.
template <typename S>
Jet2<S> pow(const Jet2<S>& u, int n) {
  if (n == 0) return Jet2<S>::constant(std::complex<S>(1));
  if (n < 0) return reciprocal(pow(u, -n));
  const auto k = static_cast<unsigned>(n);
  const S sn = static_cast<S>(n);
  const auto p1 = detail::ipow(u.v, k - 1);  // u^(n-1)
  const auto p2 = k >= 2 ? detail::ipow(u.v, k - 2) : std::complex<S>(0);
  return {p1 * u.v, sn * p1 * u.d1, sn * (sn - S(1)) * p2 * u.d1 * u.d1 + sn * p1 * u.d2};
}

/// Evaluates f, f', f'' of `e` at `at` by forward propagation of jets.
/// Throws PoleError on a vanishing denominator (including z^-n at 0) and
/// BranchError on sqrt(0), where the derivative is singular.
template <typename Scalar = double>
Jet2<Scalar> eval_jet(const Expr& e, std::complex<Scalar> at) {
  using J = Jet2<Scalar>;
  using C = std::complex<Scalar>;
  const auto where = [&] {
    return std::complex<double>(static_cast<double>(at.real()), static_cast<double>(at.imag()));
  };
  switch (e.op()) {
    case Op::Var:
      return J::variable(at);
    case Op::Const: {
      const auto c = e.value();
      return J::constant(C(static_cast<Scalar>(c.real()), static_cast<Scalar>(c.imag())));
    }
    case Op::Neg:
      return -eval_jet<Scalar>(e.arg(), at);
    case Op::Add:
      return eval_jet<Scalar>(e.lhs(), at) + eval_jet<Scalar>(e.rhs(), at);
    case Op::Sub:
      return eval_jet<Scalar>(e.lhs(), at) - eval_jet<Scalar>(e.rhs(), at);
    case Op::Mul:
      return eval_jet<Scalar>(e.lhs(), at) * eval_jet<Scalar>(e.rhs(), at);
    case Op::Div: {
      const J num = eval_jet<Scalar>(e.lhs(), at);
      const J den = eval_jet<Scalar>(e.rhs(), at);
      if (den.v == C(0)) throw PoleError(where());
      return num / den;
    }
    case Op::PowInt: {
      const J base = eval_jet<Scalar>(e.arg(), at);
      if (e.exponent() < 0 && base.v == C(0)) throw PoleError(where());
      return pow(base, e.exponent());
    }
    case Op::Exp:
      return exp(eval_jet<Scalar>(e.arg(), at));
    case Op::Sqrt: {
      const J u = eval_jet<Scalar>(e.arg(), at);
      if (u.v == C(0)) throw BranchError(where());
      return sqrt(u);
    }
  }
  throw std::logic_error("eval_jet: unhandled node");
}

}  // namespace sphconv
