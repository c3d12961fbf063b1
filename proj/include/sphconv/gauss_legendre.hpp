#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace sphconv {

/// Gauss–Legendre rule on [-1, 1]; nodes ascending.
template <typename Scalar = double>
struct GaussLegendreRule {
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
  Array nodes;
  Array weights;

  /// Integral of f over [a, b].
  template <typename F>
  Scalar integrate(F&& f, Scalar a, Scalar b) const {
    const Scalar half = (b - a) / Scalar(2), mid = (b + a) / Scalar(2);
    Scalar sum(0);
    for (Eigen::Index i = 0; i < nodes.size(); ++i) sum += weights[i] * f(mid + half * nodes[i]);
    return half * sum;
  }
};

namespace detail {

// P_m(x) and P_m'(x) by the three-term recurrence.
template <typename Scalar>
std::pair<Scalar, Scalar> legendre_with_derivative(int m, Scalar x) {
  Scalar p0(1), p1 = x;
  for (int k = 2; k <= m; ++k) {
    const Scalar pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / Scalar(k);
    p0 = p1;
    p1 = pk;
  }
  const Scalar dp = m * (x * p1 - p0) / (x * x - Scalar(1));
  return {p1, dp};
}

}  // namespace detail

/// m-point rule. Nodes are the eigenvalues of the symmetric Jacobi matrix
/// (Golub–Welsch), polished by Newton steps on P_m; weights come from
/// 2 / ((1 - x^2) P_m'(x)^2).
template <typename Scalar = double>
GaussLegendreRule<Scalar> gauss_legendre(int m) {
  if (m < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix jacobi = Matrix::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    const Scalar beta = Scalar(k) / std::sqrt(Scalar(4 * k * k - 1));
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(jacobi, Eigen::EigenvaluesOnly);
  GaussLegendreRule<Scalar> rule;
  rule.nodes = solver.eigenvalues().array();
  rule.weights.resize(m);
  if (m == 1) {
    rule.nodes[0] = Scalar(0);
    rule.weights[0] = Scalar(2);
    return rule;
  }
  for (int i = 0; i < m; ++i) {
    Scalar x = rule.nodes[i];
    for (int it = 0; it < 3; ++it) {
      const auto [p, dp] = detail::legendre_with_derivative(m, x);
      x -= p / dp;
    }
    const Scalar dp = detail::legendre_with_derivative(m, x).second;
    rule.nodes[i] = x;
    rule.weights[i] = Scalar(2) / ((Scalar(1) - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace sphconv
