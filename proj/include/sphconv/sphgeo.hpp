#pragma once

#include <complex>
#include <optional>

#include "sphconv/catalog.hpp"
#include "sphconv/jet.hpp"

namespace sphconv {

enum class Chart { Standard, Inverted };

/// A point of the Riemann sphere held in whichever chart keeps it bounded.
/// In the Inverted chart `w` stores 1/value, so infinity is w == 0.
struct SpherePoint {
  std::complex<double> w{};
  Chart chart = Chart::Standard;

  static SpherePoint from_value(std::complex<double> value);
  std::complex<double> value() const;  // may be infinite
};

/// Jet of f (Standard) or of 1/f (Inverted) at one point of the disk.
struct ChartJet {
  Jet2<double> jet;
  Chart chart = Chart::Standard;

  SpherePoint point() const { return {jet.v, chart}; }
};

/// Evaluates the map at z in the standard chart, switching to the inverse
/// chart when the standard one hits a pole or leaves the closed unit disk.
ChartJet eval_charted(const MapDefinition& map, std::complex<double> z);

// Pointwise formulas on a jet. Both are invariant under w -> 1/w, so they
// apply to either chart.

/// |f'| / (1 + |f|^2)
template <typename S>
S spherical_derivative(const Jet2<S>& j) {
  return std::abs(j.d1) / (S(1) + std::norm(j.v));
}

/// Re{1 + z f''/f' - 2 z f' conj(f) / (1 + |f|^2)}; requires f' != 0.
template <typename S>
S convexity_function(const Jet2<S>& j, std::complex<S> z) {
  const auto t = S(1) + z * j.d2 / j.d1 - S(2) * z * j.d1 * std::conj(j.v) / (S(1) + std::norm(j.v));
  return t.real();
}

/// Spherical derivative f#(z) of the map.
double spherical_derivative(const MapDefinition& map, std::complex<double> z);

/// The convexity function h_f(z). Throws CriticalPointError where f'(z) = 0.
double convexity_function(const MapDefinition& map, std::complex<double> z);

/// f# and h_f from a single evaluation; `h` is empty at critical points.
struct PointSample {
  double fsharp = 0.0;
  std::optional<double> h;
};
PointSample sample_point(const MapDefinition& map, std::complex<double> z);

/// Spherical curvature (1 - r^2)/r of the circle |z| = r.
double curvature_circle(double r);

/// Spherical curvature of the image curve f(|z| = r) at f(z): h / (|z| f#).
double curvature_image_circle(const MapDefinition& map, std::complex<double> z);

/// Spherical curvature of a C^2 plane curve at the point zt with velocity dz
/// and acceleration ddz.
double curve_curvature(std::complex<double> zt, std::complex<double> dz, std::complex<double> ddz);

/// T o f with T(w) = e^{i theta} (w - a) / (1 + w conj(a)).
MapDefinition post_compose_rotation(const MapDefinition& map, std::complex<double> a, double theta);

struct NormalizationReport {
  std::complex<double> f0;    // infinite when f has a pole at 0
  std::complex<double> f2_0;  // f''(0)
  double alpha = 0.0;         // f#(0)
  double sup_density = 0.0;   // grid max of (1 - |z|^2) f#(z)
  bool is_centrally_normalized = false;
  double tol = 0.0;
  int grid_resolution = 0;
};

/// Tests f(0) = 0, f''(0) = 0 and that (1 - |z|^2) f# peaks at the origin,
/// scanning grid_resolution radii up to 0.995 times grid_resolution angles.
NormalizationReport check_central_normalization(const MapDefinition& map, int grid_resolution, double tol);

}  // namespace sphconv
