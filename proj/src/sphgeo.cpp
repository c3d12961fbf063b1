#include "sphconv/sphgeo.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "sphconv/errors.hpp"
#include "sphconv/format.hpp"

namespace sphconv {

using cd = std::complex<double>;

SpherePoint SpherePoint::from_value(cd value) {
  if (std::isinf(value.real()) || std::isinf(value.imag())) return {cd(0), Chart::Inverted};
  if (std::abs(value) <= 1.0) return {value, Chart::Standard};
  return {1.0 / value, Chart::Inverted};
}

cd SpherePoint::value() const {
  if (chart == Chart::Standard) return w;
  if (w == cd(0)) return {std::numeric_limits<double>::infinity(), 0.0};
  return 1.0 / w;
}

ChartJet eval_charted(const MapDefinition& map, cd z) {
  std::optional<Jet2<double>> standard;
  std::string failure;
  try {
    const auto j = eval_jet(map.ast, z);
    if (j.finite()) {
      if (!map.inverse_chart || std::abs(j.v) <= 1.0) return {j, Chart::Standard};
      standard = j;
    } else {
      failure = "non-finite value";
    }
  } catch (const EvaluationError& e) {
    failure = e.what();
  }
  if (map.inverse_chart) {
    try {
      const auto g = eval_jet(*map.inverse_chart, z);
      if (g.finite()) return {g, Chart::Inverted};
    } catch (const EvaluationError&) {
    }
  }
  if (standard) return {*standard, Chart::Standard};
  throw EvaluationError("map '" + map.name + "' not evaluable at z=" + format_number(z) + ": " + failure);
}

double spherical_derivative(const MapDefinition& map, cd z) {
  return spherical_derivative(eval_charted(map, z).jet);
}

double convexity_function(const MapDefinition& map, cd z) {
  const auto cj = eval_charted(map, z);
  if (cj.jet.d1 == cd(0)) throw CriticalPointError(z);
  return convexity_function(cj.jet, z);
}

PointSample sample_point(const MapDefinition& map, cd z) {
  const auto cj = eval_charted(map, z);
  PointSample s;
  s.fsharp = spherical_derivative(cj.jet);
  if (cj.jet.d1 != cd(0)) s.h = convexity_function(cj.jet, z);
  return s;
}

double curvature_circle(double r) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("curvature_circle: r must lie in (0,1), got " + format_number(r));
  return (1.0 - r * r) / r;
}

double curvature_image_circle(const MapDefinition& map, cd z) {
  const double r = std::abs(z);
  if (!(r > 0.0 && r < 1.0)) throw DomainError("curvature_image_circle: need 0 < |z| < 1");
  const auto cj = eval_charted(map, z);
  const double fs = spherical_derivative(cj.jet);
  if (fs == 0.0 || cj.jet.d1 == cd(0)) throw CriticalPointError(z);
  return convexity_function(cj.jet, z) / (r * fs);
}

double curve_curvature(cd zt, cd dz, cd ddz) {
  const double speed = std::abs(dz);
  if (speed == 0.0) throw DegenerateTangent();
  const double euclid = (std::conj(dz) * ddz).imag() / (speed * speed * speed);
  const double density = 1.0 + std::norm(zt);  // 1 / lambda(zt)
  const double correction = (2.0 * std::conj(zt) * dz / (density * speed)).imag();
  return (euclid - correction) * density;
}

MapDefinition post_compose_rotation(const MapDefinition& map, cd a, double theta) {
  const Expr u = constant(std::polar(1.0, theta));
  const Expr ua = constant(std::polar(1.0, -theta));
  const Expr ca = constant(a);
  const Expr cbar = constant(std::conj(a));
  const Expr one = constant(1.0);
  const Expr& f = map.ast;

  MapDefinition out;
  out.name = "rot(" + format_number(a) + "," + format_number(theta) + ")o" + map.name;
  out.ast = u * ((f - ca) / (one + f * cbar));
  if (map.inverse_chart) {
    // With g = 1/f: T(f) = e^{i theta} (1 - a g) / (g + conj(a)), so 1/T(f)
    // stays finite where f has poles.
    const Expr& g = *map.inverse_chart;
    out.inverse_chart = ua * ((g + cbar) / (one - ca * g));
  } else {
    out.inverse_chart = ua * ((one + f * cbar) / (f - ca));
  }
  out.claimed = map.claimed;
  // f(0) = 0 survives only rotations fixing the origin.
  if (a != cd(0)) out.claimed.set(Property::CentrallyNormalized, false);
  return out;
}

NormalizationReport check_central_normalization(const MapDefinition& map, int grid_resolution, double tol) {
  if (grid_resolution < 1) throw DomainError("grid_resolution must be positive");
  NormalizationReport rep;
  rep.tol = tol;
  rep.grid_resolution = grid_resolution;
  bool finite_at_origin = true;
  try {
    const auto j = eval_jet(map.ast, cd(0));
    rep.f0 = j.v;
    rep.f2_0 = j.d2;
    finite_at_origin = j.finite();
  } catch (const PoleError&) {
    finite_at_origin = false;
  }
  if (!finite_at_origin) {
    const double inf = std::numeric_limits<double>::infinity();
    rep.f0 = {inf, 0.0};
    rep.f2_0 = {inf, 0.0};
  }
  rep.alpha = spherical_derivative(map, cd(0));
  rep.sup_density = rep.alpha;
  const int n = grid_resolution;
  for (int k = 1; k <= n; ++k) {
    const double r = 0.995 * k / n;
    for (int j = 0; j < n; ++j) {
      const cd zz = std::polar(r, 2.0 * std::numbers::pi * j / n);
      rep.sup_density = std::max(rep.sup_density, (1.0 - r * r) * spherical_derivative(map, zz));
    }
  }
  rep.is_centrally_normalized = finite_at_origin && std::abs(rep.f0) <= tol && std::abs(rep.f2_0) <= tol &&
                                rep.sup_density <= rep.alpha + tol;
  return rep;
}

}  // namespace sphconv
