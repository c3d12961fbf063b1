#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sphconv/catalog.hpp"
#include "sphconv/errors.hpp"

namespace sphconv {

struct QuadratureConfig {
  int angular_nodes = 256;  // periodic trapezoidal rule on circles; power of two, >= 16
  int radial_nodes = 48;    // Gauss–Legendre on [0, r]; >= 8

  void validate() const;
};

// Reference values for the circle |z| = r and the disk |z| < r.
inline double circle_spherical_length(double r) { return 2.0 * std::numbers::pi * r / (1.0 + r * r); }
inline double disk_spherical_area(double r) { return std::numbers::pi * r * r / (1.0 + r * r); }
inline double circle_total_curvature(double r) { return 2.0 * std::numbers::pi * (1.0 - r * r) / (1.0 + r * r); }

/// Nodes r e^{2 pi i k / n}, k = 0..n-1.
Eigen::ArrayXcd circle_nodes(double r, int n);

/// (1/n) sum_k g(r e^{2 pi i k/n}), summed in node order. Evaluation errors are
/// rethrown as NodeError naming the failing node (LogOfZero keeps its type).
template <typename Integrand>
double circle_mean(Integrand&& g, double r, int n) {
  const Eigen::ArrayXcd nodes = circle_nodes(r, n);
  double sum = 0.0;
  for (Eigen::Index k = 0; k < nodes.size(); ++k) {
    try {
      sum += g(nodes[k]);
    } catch (const NodeError&) {
      throw;
    } catch (const LogOfZero& e) {
      throw LogOfZero("node " + std::to_string(k) + ": " + e.what());
    } catch (const EvaluationError& e) {
      throw NodeError(static_cast<std::size_t>(k), e.what());
    }
  }
  return sum / static_cast<double>(n);
}

/// Pointwise integrands understood by the map-based overloads.
enum class PointQuantity {
  FSharp,          // f#
  FSharpSquared,   // f#^2
  H,               // h_f
  HFSharpSquared,  // h_f f#^2
  LogScaled,       // log((1 + |z|^2) f#)
  HypDensity,      // (1 - |z|^2) f#
};

double point_value(const MapDefinition& map, PointQuantity q, std::complex<double> z);

double circle_mean(const MapDefinition& map, PointQuantity q, double r, int n);

/// Area integral of the quantity over |z| < r: Gauss–Legendre in the radius
/// over trapezoidal circle means.
double disk_integral(const MapDefinition& map, PointQuantity q, double r, const QuadratureConfig& config);

double spherical_length_image(const MapDefinition& map, double r, const QuadratureConfig& config);
double spherical_area_image(const MapDefinition& map, double r, const QuadratureConfig& config);
double total_curvature_image(const MapDefinition& map, double r, const QuadratureConfig& config);

double len_ratio(const MapDefinition& map, double r, const QuadratureConfig& config);
double area_ratio(const MapDefinition& map, double r, const QuadratureConfig& config);
double curv_ratio(const MapDefinition& map, double r, const QuadratureConfig& config);
double hyp_len_ratio(const MapDefinition& map, double r, const QuadratureConfig& config);
double log_mean(const MapDefinition& map, double r, const QuadratureConfig& config);
double integral_mean_h(const MapDefinition& map, double r, const QuadratureConfig& config);

enum class Quantity {
  LenRatio,
  AreaRatio,
  CurvRatio,
  HypLenRatio,
  LogMean,
  IntegralMeanH,
  SphericalLength,
  SphericalArea,
  TotalCurvature,
};

/// Short lowercase name used in CSV headers and on the command line.
std::string_view to_string(Quantity q);
std::optional<Quantity> parse_quantity(std::string_view name);

double evaluate_quantity(const MapDefinition& map, Quantity q, double r, const QuadratureConfig& config);

struct ProfileSample {
  double r = 0.0;
  std::optional<double> value;  // empty for a gap
  std::string gap_reason;
};

struct RadialProfile {
  Quantity quantity = Quantity::LenRatio;
  std::vector<ProfileSample> samples;
  std::string map_name;
  QuadratureConfig config;

  std::size_t gap_count() const;
};

/// steps equally spaced radii from r_min to r_max inclusive. Per-radius
/// failures become gaps; the profile itself never throws for them.
RadialProfile radial_profile(const MapDefinition& map, Quantity q, double r_min, double r_max, int steps,
                             const QuadratureConfig& config);

}  // namespace sphconv
