#include "sphconv/quad.hpp"

#include <array>
#include <cmath>

#include "sphconv/format.hpp"
#include "sphconv/gauss_legendre.hpp"
#include "sphconv/sphgeo.hpp"

namespace sphconv {

using cd = std::complex<double>;

void QuadratureConfig::validate() const {
  const bool pow2 = angular_nodes > 0 && (angular_nodes & (angular_nodes - 1)) == 0;
  if (angular_nodes < 16 || !pow2)
    throw DomainError("angular node count must be a power of two >= 16, got " + std::to_string(angular_nodes));
  if (radial_nodes < 8) throw DomainError("radial node count must be >= 8, got " + std::to_string(radial_nodes));
}

Eigen::ArrayXcd circle_nodes(double r, int n) {
  Eigen::ArrayXcd nodes(n);
  for (int k = 0; k < n; ++k) nodes[k] = std::polar(r, 2.0 * std::numbers::pi * k / n);
  return nodes;
}

namespace {

void require_radius(double r) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("radius must lie in (0,1), got " + format_number(r));
}

double require_h(const PointSample& s, cd z) {
  if (!s.h) throw CriticalPointError(z);
  return *s.h;
}

}  // namespace

double point_value(const MapDefinition& map, PointQuantity q, cd z) {
  const PointSample s = sample_point(map, z);
  switch (q) {
    case PointQuantity::FSharp:
      return s.fsharp;
    case PointQuantity::FSharpSquared:
      return s.fsharp * s.fsharp;
    case PointQuantity::H:
      return require_h(s, z);
    case PointQuantity::HFSharpSquared:
      return s.fsharp == 0.0 ? 0.0 : require_h(s, z) * s.fsharp * s.fsharp;
    case PointQuantity::LogScaled:
      if (s.fsharp == 0.0) throw LogOfZero("f# vanishes at z=" + format_number(z));
      return std::log((1.0 + std::norm(z)) * s.fsharp);
    case PointQuantity::HypDensity:
      return (1.0 - std::norm(z)) * s.fsharp;
  }
  throw std::logic_error("point_value: unhandled quantity");
}

double circle_mean(const MapDefinition& map, PointQuantity q, double r, int n) {
  return circle_mean([&](cd z) { return point_value(map, q, z); }, r, n);
}

double disk_integral(const MapDefinition& map, PointQuantity q, double r, const QuadratureConfig& config) {
  require_radius(r);
  config.validate();
  const auto rule = gauss_legendre<double>(config.radial_nodes);
  return rule.integrate(
      [&](double rho) { return 2.0 * std::numbers::pi * rho * circle_mean(map, q, rho, config.angular_nodes); }, 0.0,
      r);
}

double spherical_length_image(const MapDefinition& map, double r, const QuadratureConfig& config) {
  require_radius(r);
  config.validate();
  return 2.0 * std::numbers::pi * r * circle_mean(map, PointQuantity::FSharp, r, config.angular_nodes);
}

double spherical_area_image(const MapDefinition& map, double r, const QuadratureConfig& config) {
  return disk_integral(map, PointQuantity::FSharpSquared, r, config);
}

double total_curvature_image(const MapDefinition& map, double r, const QuadratureConfig& config) {
  require_radius(r);
  config.validate();
  return 2.0 * std::numbers::pi * circle_mean(map, PointQuantity::H, r, config.angular_nodes);
}

double len_ratio(const MapDefinition& map, double r, const QuadratureConfig& config) {
  return spherical_length_image(map, r, config) / circle_spherical_length(r);
}

double area_ratio(const MapDefinition& map, double r, const QuadratureConfig& config) {
  return spherical_area_image(map, r, config) / disk_spherical_area(r);
}

double curv_ratio(const MapDefinition& map, double r, const QuadratureConfig& config) {
  return total_curvature_image(map, r, config) / circle_total_curvature(r);
}

double hyp_len_ratio(const MapDefinition& map, double r, const QuadratureConfig& config) {
  require_radius(r);
  config.validate();
  return (1.0 - r * r) * circle_mean(map, PointQuantity::FSharp, r, config.angular_nodes);
}

double log_mean(const MapDefinition& map, double r, const QuadratureConfig& config) {
  require_radius(r);
  config.validate();
  return circle_mean(map, PointQuantity::LogScaled, r, config.angular_nodes);
}

double integral_mean_h(const MapDefinition& map, double r, const QuadratureConfig& config) {
  require_radius(r);
  config.validate();
  return circle_mean(map, PointQuantity::H, r, config.angular_nodes);
}

namespace {

constexpr std::array<std::pair<Quantity, std::string_view>, 9> kQuantityNames{{
    {Quantity::LenRatio, "lenratio"},
    {Quantity::AreaRatio, "arearatio"},
    {Quantity::CurvRatio, "curvratio"},
    {Quantity::HypLenRatio, "hyplenratio"},
    {Quantity::LogMean, "logmean"},
    {Quantity::IntegralMeanH, "intmeanh"},
    {Quantity::SphericalLength, "length"},
    {Quantity::SphericalArea, "area"},
    {Quantity::TotalCurvature, "totalcurv"},
}};

}  // namespace

std::string_view to_string(Quantity q) {
  for (const auto& [k, name] : kQuantityNames)
    if (k == q) return name;
  return "?";
}

std::optional<Quantity> parse_quantity(std::string_view name) {
  for (const auto& [k, n] : kQuantityNames)
    if (n == name) return k;
  return std::nullopt;
}

double evaluate_quantity(const MapDefinition& map, Quantity q, double r, const QuadratureConfig& config) {
  switch (q) {
    case Quantity::LenRatio:
      return len_ratio(map, r, config);
    case Quantity::AreaRatio:
      return area_ratio(map, r, config);
    case Quantity::CurvRatio:
      return curv_ratio(map, r, config);
    case Quantity::HypLenRatio:
      return hyp_len_ratio(map, r, config);
    case Quantity::LogMean:
      return log_mean(map, r, config);
    case Quantity::IntegralMeanH:
      return integral_mean_h(map, r, config);
    case Quantity::SphericalLength:
      return spherical_length_image(map, r, config);
    case Quantity::SphericalArea:
      return spherical_area_image(map, r, config);
    case Quantity::TotalCurvature:
      return total_curvature_image(map, r, config);
  }
  throw std::logic_error("evaluate_quantity: unhandled quantity");
}

std::size_t RadialProfile::gap_count() const {
  std::size_t n = 0;
  for (const auto& s : samples) n += s.value ? 0 : 1;
  return n;
}

RadialProfile radial_profile(const MapDefinition& map, Quantity q, double r_min, double r_max, int steps,
                             const QuadratureConfig& config) {
  if (!(r_min > 0.0 && r_min < r_max && r_max < 1.0))
    throw DomainError("radial_profile: need 0 < r_min < r_max < 1");
  if (steps < 2) throw DomainError("radial_profile: need at least 2 steps");
  config.validate();
  RadialProfile p;
  p.quantity = q;
  p.map_name = map.name;
  p.config = config;
  p.samples.resize(static_cast<std::size_t>(steps));
  const Eigen::ArrayXd radii = Eigen::ArrayXd::LinSpaced(steps, r_min, r_max);
  for (int i = 0; i < steps; ++i) {
    ProfileSample& s = p.samples[static_cast<std::size_t>(i)];
    s.r = radii[i];
    try {
      s.value = evaluate_quantity(map, q, s.r, config);
    } catch (const EvaluationError& e) {
      s.gap_reason = e.what();
    }
  }
  return p;
}

}  // namespace sphconv
