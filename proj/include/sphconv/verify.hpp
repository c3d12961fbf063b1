#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sphconv/catalog.hpp"
#include "sphconv/quad.hpp"
#include "sphconv/sphgeo.hpp"

namespace sphconv {

enum class Monotonicity {
  StrictlyIncreasing,
  StrictlyDecreasing,
  Constant,
  WeaklyIncreasing,  // no fall beyond slack, some but not all rises beyond it
  WeaklyDecreasing,
  NotMonotone,
};

std::string_view to_string(Monotonicity m);

struct MonotoneWitness {
  double r0, r1;
  double v0, v1;
};

struct MonotonicityVerdict {
  Monotonicity classification = Monotonicity::Constant;
  std::optional<MonotoneWitness> witness;  // set exactly for NotMonotone
  double slack = 0.0;
};

/// Classifies the gap-free samples of a profile by their successive
/// differences d: all d > slack is strictly increasing, all |d| <= slack is
/// constant, a rise and a fall both beyond slack is NotMonotone. The witness
/// is the first pair moving against the direction of the first significant
/// difference.
MonotonicityVerdict classify_monotone(const RadialProfile& profile, double slack);

struct ConvexityReport {
  double min_h = 0.0;
  std::complex<double> argmin;
  double r_max = 0.0;
  int radii = 0;
  int angles = 0;
  double tol = 0.0;
  bool is_nonnegative = false;
  std::vector<std::complex<double>> skipped;  // grid points where h is undefined
};

/// Minimum of h_f over the polar grid r = r_max k / radii (k = 1..radii),
/// t = 2 pi j / angles.
ConvexityReport convexity_scan(const MapDefinition& map, double r_max, int radii, int angles, double tol = 1e-10);

/// |five-point Laplacian of h at z + 8 f#(z)^2 h(z)|.
double check_laplace_identity(const MapDefinition& map, std::complex<double> z, double step);

enum class CheckStatus { Pass, Fail, Skipped };

std::string_view to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string reason;               // why Skipped or Fail
  std::optional<double> residual;   // headline number, sign convention per check
  std::string detail;               // witness / extra numbers, human readable
  std::vector<std::pair<std::string, double>> parameters;
};

struct Tolerances {
  double inequality = 1e-9;  // slack on theorem inequalities
  double identity = 1e-7;    // quadrature-limited identity residuals
  double laplace = 1e-5;     // finite-difference Laplacian residual
  double slack = 1e-9;       // monotonicity strictness
  double normalization = 1e-8;
};

struct PointGrid {
  double r_max = 0.95;
  int radii = 100;
  int angles = 256;
};

CheckResult check_schwarz_area(const MapDefinition& map, double r, const QuadratureConfig& config,
                               const Tolerances& tol = {});
CheckResult check_area_lower_bounds(const MapDefinition& map, double r, const QuadratureConfig& config,
                                    const Tolerances& tol = {});
CheckResult check_length_bounds(const MapDefinition& map, double r, const QuadratureConfig& config,
                                const Tolerances& tol = {});
CheckResult check_integral_mean_h(const MapDefinition& map, double r, const QuadratureConfig& config,
                                  const Tolerances& tol = {});
CheckResult check_pointwise_mp_bound(const MapDefinition& map, const PointGrid& grid, const Tolerances& tol = {},
                                     int normalization_grid = 64);
CheckResult check_mean_density_decreasing(const MapDefinition& map, const std::vector<double>& r_grid,
                                          const QuadratureConfig& config, const Tolerances& tol = {});

CheckResult check_gauss_bonnet(const MapDefinition& map, double r, const QuadratureConfig& config,
                               const Tolerances& tol = {});
CheckResult check_isoperimetric(const MapDefinition& map, double r, const QuadratureConfig& config,
                                const Tolerances& tol = {});
/// 2 pi mean(f#^2) on |z| = r against (2 / r^2) times the disk integral of h f#^2.
CheckResult check_connection_identity(const MapDefinition& map, double r, const QuadratureConfig& config,
                                      double tol = 1e-6);

/// Lower bounds on f#(0)-scaled area, as a pair (basic, refined).
std::pair<double, double> area_lower_bounds(double r, double fsharp0);

struct LengthBounds {
  double basic;    // L_S(rT) f#(0)
  double upper;    // 2 pi r f#(0) / (1 - r^2)
  double sharp;    // 2 pi r f#(0) / (1 + r^2 f#(0)^2)
  double refined;  // L_S(rT) f#(0) sqrt(1 + r^2 (1 - f#(0)^2))
};
LengthBounds length_bounds(double r, double fsharp0);

struct VerifyConfig {
  QuadratureConfig quad;
  Tolerances tol;
  std::uint64_t seed = 20240611;
  std::vector<double> check_radii{0.25, 0.5, 0.75};
  double profile_r_min = 0.05;
  double profile_r_max = 0.95;
  int profile_steps = 50;
  PointGrid scan;
  int normalization_grid = 64;
  int laplace_points = 5;
  double laplace_step = 1e-3;
  double laplace_radius = 0.5;  // random points drawn uniformly from |z| < this
};

/// Seeded interior points for the Laplace check; mt19937_64 bits are mapped
/// to doubles by hand so the sequence is identical on every platform.
std::vector<std::complex<double>> seeded_disk_points(std::uint64_t seed, int count, double radius);

/// Runs every check that applies to the map's claimed properties.
std::vector<CheckResult> verify_all(const MapDefinition& map, const VerifyConfig& config = {});

}  // namespace sphconv
