#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numbers>

#include "sphconv/catalog.hpp"
#include "sphconv/errors.hpp"
#include "sphconv/gauss_legendre.hpp"
#include "sphconv/quad.hpp"
#include "sphconv/verify.hpp"

using namespace sphconv;
using cd = std::complex<double>;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

namespace {

const QuadratureConfig kDefault{};

// Trapezoidal mean of a closed-form integrand of t over [0, 2 pi).
template <typename F>
double reference_mean(F&& g, int n) {
  double s = 0;
  for (int k = 0; k < n; ++k) s += g(2 * pi * k / n);
  return s / n;
}

// Roots of P_m by Newton from the Chebyshev-like initial guesses, with
// weights from the derivative; shares no code with the library rule.
std::vector<std::pair<double, double>> newton_legendre(int m) {
  std::vector<std::pair<double, double>> out;
  for (int i = 1; i <= m; ++i) {
    double x = std::cos(pi * (i - 0.25) / (m + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double pk = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = m * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    out.emplace_back(x, 2 / ((1 - x * x) * dp * dp));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("quadrature configuration limits") {
  CHECK_NOTHROW(kDefault.validate());
  CHECK_THROWS_AS((QuadratureConfig{100, 48}.validate()), DomainError);
  CHECK_THROWS_AS((QuadratureConfig{8, 48}.validate()), DomainError);
  CHECK_THROWS_AS((QuadratureConfig{256, 7}.validate()), DomainError);
  CHECK_NOTHROW((QuadratureConfig{16, 8}.validate()));
}

TEST_CASE("Gauss-Legendre rule matches an independent construction") {
  for (int m : {1, 2, 5, 8, 17, 48, 64}) {
    CAPTURE(m);
    const auto rule = gauss_legendre(m);
    const auto ref = newton_legendre(m);
    REQUIRE(rule.nodes.size() == m);
    for (int i = 0; i < m; ++i) {
      CHECK(rule.nodes[i] == Approx(ref[static_cast<std::size_t>(i)].first).epsilon(1e-14).scale(1));
      CHECK(rule.weights[i] == Approx(ref[static_cast<std::size_t>(i)].second).epsilon(1e-13));
    }
    CHECK(rule.weights.sum() == Approx(2).epsilon(1e-14));
  }
}

TEST_CASE("Gauss-Legendre integrates polynomials up to degree 2m-1 exactly") {
  for (int m : {3, 8, 20}) {
    const auto rule = gauss_legendre(m);
    for (int k = 0; k <= 2 * m - 1; ++k) {
      CAPTURE(m);
      CAPTURE(k);
      const double a = 0.0, b = 0.7;
      const double exact = (std::pow(b, k + 1) - std::pow(a, k + 1)) / (k + 1);
      const double got = rule.integrate([k](double x) { return std::pow(x, k); }, a, b);
      CHECK(got == Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("circle means") {
  CHECK(circle_mean(builtin("identity"), PointQuantity::FSharp, 0.5, 256) == Approx(0.8).epsilon(1e-14));

  // h for e^z is 1 - r cos t tanh(r cos t)
  const double oracle =
      reference_mean([](double t) { return 1 - 0.5 * std::cos(t) * std::tanh(0.5 * std::cos(t)); }, 1 << 14);
  CHECK(circle_mean(builtin("f2"), PointQuantity::H, 0.5, 256) == Approx(oracle).epsilon(1e-14));
  const double fs_oracle = reference_mean([](double t) { return 1 / (2 * std::cosh(0.5 * std::cos(t))); }, 1 << 14);
  CHECK(circle_mean(builtin("f2"), PointQuantity::FSharp, 0.5, 256) == Approx(fs_oracle).epsilon(1e-14));

  const MapDefinition f1 = builtin("f1");
  for (auto q : {PointQuantity::FSharp, PointQuantity::FSharpSquared, PointQuantity::H, PointQuantity::LogScaled})
    for (int n : {128, 256, 512})
      CHECK(std::abs(circle_mean(f1, q, 0.5, n) - circle_mean(f1, q, 0.5, 2 * n)) < 1e-12);
}

TEST_CASE("circle means report the failing node") {
  // sqrt(z - 0.5) has its branch point on the circle |z| = 0.5 at node 0
  try {
    circle_mean(from_expression("sqrt(z-0.5)"), PointQuantity::FSharp, 0.5, 16);
    FAIL("expected a node error");
  } catch (const NodeError& e) {
    CHECK(e.node() == 0);
  }
}

TEST_CASE("spherical length, area and total curvature of images") {
  const MapDefinition id = builtin("identity"), half = builtin("scale(0.5)"), f1 = builtin("f1");
  CHECK(spherical_length_image(id, 0.5, kDefault) == Approx(4 * pi / 5).epsilon(1e-14));
  CHECK(spherical_length_image(half, 0.8, kDefault) == Approx(2 * pi * 0.4 / 1.16).epsilon(1e-14));
  CHECK(spherical_length_image(half, 0.8, kDefault) == Approx(2.16662).epsilon(1e-5));
  CHECK(spherical_length_image(f1, 1e-3, kDefault) / (2 * pi * 1e-3) == Approx(0.5).epsilon(1e-6));

  CHECK(spherical_area_image(id, 0.5, kDefault) == Approx(pi / 5).epsilon(1e-14));
  CHECK(spherical_area_image(half, 0.8, kDefault) == Approx(pi * 0.16 / 1.16).epsilon(1e-14));
  for (const char* name : {"f1", "f2", "f3", "scale(0.3)"}) {
    CAPTURE(name);
    const MapDefinition m = builtin(name);
    const double s = spherical_derivative(m, 0);
    CHECK(spherical_area_image(m, 1e-3, kDefault) / (pi * 1e-6) == Approx(s * s).epsilon(1e-5).scale(1));
  }

  CHECK(total_curvature_image(id, 0.5, kDefault) == Approx(1.2 * pi).epsilon(1e-14));
  CHECK(total_curvature_image(f1, 1e-4, kDefault) == Approx(2 * pi).epsilon(1e-7));
  CHECK(total_curvature_image(f1, 0.5, kDefault) ==
        Approx(2 * pi - 4 * spherical_area_image(f1, 0.5, kDefault)).epsilon(1e-12));
}

TEST_CASE("ratios") {
  const MapDefinition id = builtin("identity"), half = builtin("scale(0.5)"), f1 = builtin("f1");
  for (double r : {0.1, 0.5, 0.9}) {
    CHECK(len_ratio(id, r, kDefault) == Approx(1).epsilon(1e-14));
    CHECK(area_ratio(id, r, kDefault) == Approx(1).epsilon(1e-14));
    CHECK(curv_ratio(id, r, kDefault) == Approx(1).epsilon(1e-14));
  }
  CHECK(area_ratio(half, 0.8, kDefault) == Approx(1.64 * 0.25 / 1.16).epsilon(1e-14));
  CHECK(area_ratio(half, 0.8, kDefault) == Approx(0.353448).epsilon(1e-6));

  CHECK(hyp_len_ratio(id, 0.5, kDefault) == Approx(0.6).epsilon(1e-14));
  CHECK(hyp_len_ratio(f1, 1e-4, kDefault) == Approx(0.5).epsilon(1e-7));
  CHECK(hyp_len_ratio(f1, 0.3, kDefault) >= hyp_len_ratio(f1, 0.6, kDefault));

  CHECK(std::abs(log_mean(id, 0.5, kDefault)) < 1e-15);
  CHECK(log_mean(f1, 0.6, kDefault) > log_mean(f1, 0.3, kDefault));
  CHECK(log_mean(f1, 1e-4, kDefault) == Approx(std::log(0.5)).epsilon(1e-7));
}

TEST_CASE("curvature ratio of e^z agrees with its closed form") {
  // Phi(r) = (1 + r^2)/(1 - r^2) * mean of 1 - r cos t tanh(r cos t)
  const MapDefinition f2 = builtin("f2");
  double previous = 0;
  for (double r = 0.05; r < 0.96; r += 0.05) {
    const double mean_h =
        reference_mean([r](double t) { return 1 - r * std::cos(t) * std::tanh(r * std::cos(t)); }, 1 << 14);
    const double oracle = (1 + r * r) / (1 - r * r) * mean_h;
    CAPTURE(r);
    CHECK(curv_ratio(f2, r, kDefault) == Approx(oracle).epsilon(1e-13));
    // the closed form increases on the whole sampled range
    CHECK(oracle > previous);
    previous = oracle;
  }
}

TEST_CASE("quantity names") {
  for (auto q : {Quantity::LenRatio, Quantity::AreaRatio, Quantity::CurvRatio, Quantity::HypLenRatio, Quantity::LogMean,
                 Quantity::IntegralMeanH, Quantity::SphericalLength, Quantity::SphericalArea,
                 Quantity::TotalCurvature})
    CHECK(parse_quantity(to_string(q)) == q);
  CHECK_FALSE(parse_quantity("bogus"));
  CHECK(to_string(Quantity::CurvRatio) == "curvratio");
}

TEST_CASE("radial profiles") {
  const auto id = radial_profile(builtin("identity"), Quantity::AreaRatio, 0.1, 0.9, 9, kDefault);
  REQUIRE(id.samples.size() == 9);
  CHECK(id.samples.front().r == Approx(0.1));
  CHECK(id.samples.back().r == Approx(0.9));
  for (const auto& s : id.samples) {
    REQUIRE(s.value);
    CHECK(std::abs(*s.value - 1) <= 1e-10);
  }

  const auto f1 = radial_profile(builtin("f1"), Quantity::CurvRatio, 0.05, 0.95, 50, kDefault);
  for (std::size_t i = 1; i < f1.samples.size(); ++i) {
    CHECK(f1.samples[i].r > f1.samples[i - 1].r);
    CHECK(*f1.samples[i].value > *f1.samples[i - 1].value);
  }

  // log f# is undefined on circles through a critical point; |z|=0.5 misses it
  const auto gaps = radial_profile(from_expression("z^2-0.25"), Quantity::LogMean, 0.25, 0.75, 3, kDefault);
  CHECK(gaps.gap_count() == 0);
  const auto hole = radial_profile(from_expression("(z-0.5)^2"), Quantity::LogMean, 0.25, 0.75, 3, kDefault);
  CHECK(hole.gap_count() == 1);
  CHECK_FALSE(hole.samples[1].value);
  CHECK_FALSE(hole.samples[1].gap_reason.empty());

  CHECK_THROWS_AS(radial_profile(builtin("f1"), Quantity::LenRatio, 0.5, 0.4, 5, kDefault), DomainError);
  CHECK_THROWS_AS(radial_profile(builtin("f1"), Quantity::LenRatio, 0.1, 0.4, 1, kDefault), DomainError);
}

TEST_CASE("Gauss-Bonnet on convex maps") {
  for (const char* name : {"identity", "f1", "f2", "scale(0.5)", "rot(0.3,1)", "invrot(0.4)"}) {
    CAPTURE(name);
    const MapDefinition m = builtin(name);
    for (double r : {0.25, 0.5, 0.75}) {
      CAPTURE(r);
      const double residual =
          total_curvature_image(m, r, kDefault) + 4 * spherical_area_image(m, r, kDefault) - 2 * pi;
      CHECK(std::abs(residual) <= 1e-7);
    }
  }
}

TEST_CASE("spherical isoperimetric inequality on univalent maps") {
  for (const char* name : {"identity", "f1", "f2", "scale(0.5)", "scale(2)", "rot(0.3,1)", "invrot(0.4)"}) {
    CAPTURE(name);
    const MapDefinition m = builtin(name);
    for (double r = 0.05; r < 0.96; r += 0.05) {
      const double len = spherical_length_image(m, r, kDefault);
      const double area = spherical_area_image(m, r, kDefault);
      CHECK(len * len - 4 * pi * area + 4 * area * area >= -1e-8);
    }
  }
}

TEST_CASE("boundary and interior forms of the connection identity agree") {
  const MapDefinition f1 = builtin("f1");
  const double r = 0.5;
  const double boundary = 2 * pi * circle_mean(f1, PointQuantity::FSharpSquared, r, kDefault.angular_nodes);
  const double interior = 2 / (r * r) * disk_integral(f1, PointQuantity::HFSharpSquared, r, kDefault);
  CHECK(std::abs(boundary - interior) <= 1e-6);
}

TEST_CASE("integral mean of h is bounded below on convex maps") {
  for (const char* name : {"identity", "f1", "f2", "scale(0.5)", "rot(0.3,1)"}) {
    CAPTURE(name);
    const MapDefinition m = builtin(name);
    for (double r = 0.05; r < 0.96; r += 0.05)
      CHECK(integral_mean_h(m, r, kDefault) >= (1 - r * r) / (1 + r * r) - 1e-9);
  }
}

TEST_CASE("doubling the angular nodes leaves f1 outputs unchanged") {
  const MapDefinition f1 = builtin("f1");
  for (int n : {128, 256}) {
    const QuadratureConfig a{n, 48}, b{2 * n, 48};
    CHECK(std::abs(spherical_length_image(f1, 0.5, a) - spherical_length_image(f1, 0.5, b)) < 1e-12);
    CHECK(std::abs(spherical_area_image(f1, 0.5, a) - spherical_area_image(f1, 0.5, b)) < 1e-12);
    CHECK(std::abs(total_curvature_image(f1, 0.5, a) - total_curvature_image(f1, 0.5, b)) < 1e-12);
  }
}
