#include "sphconv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "sphconv/errors.hpp"
#include "sphconv/format.hpp"

namespace sphconv {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

std::string_view to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::StrictlyIncreasing:
      return "StrictlyIncreasing";
    case Monotonicity::StrictlyDecreasing:
      return "StrictlyDecreasing";
    case Monotonicity::Constant:
      return "Constant";
    case Monotonicity::WeaklyIncreasing:
      return "WeaklyIncreasing";
    case Monotonicity::WeaklyDecreasing:
      return "WeaklyDecreasing";
    case Monotonicity::NotMonotone:
      return "NotMonotone";
  }
  return "?";
}

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "Pass";
    case CheckStatus::Fail:
      return "Fail";
    case CheckStatus::Skipped:
      return "Skipped";
  }
  return "?";
}

MonotonicityVerdict classify_monotone(const RadialProfile& profile, double slack) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& s : profile.samples)
    if (s.value) pts.emplace_back(s.r, *s.value);
  if (pts.size() < 3)
    throw TooFewSamples("classify_monotone needs at least 3 gap-free samples, got " + std::to_string(pts.size()));

  MonotonicityVerdict v;
  v.slack = slack;
  std::size_t rises = 0, falls = 0;
  int first_sign = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double d = pts[i + 1].second - pts[i].second;
    const int sign = d > slack ? 1 : d < -slack ? -1 : 0;
    rises += sign > 0;
    falls += sign < 0;
    if (sign != 0 && first_sign == 0) first_sign = sign;
    if (sign != 0 && sign != first_sign && !v.witness)
      v.witness = MonotoneWitness{pts[i].first, pts[i + 1].first, pts[i].second, pts[i + 1].second};
  }
  const std::size_t n = pts.size() - 1;
  if (rises == n)
    v.classification = Monotonicity::StrictlyIncreasing;
  else if (falls == n)
    v.classification = Monotonicity::StrictlyDecreasing;
  else if (rises == 0 && falls == 0)
    v.classification = Monotonicity::Constant;
  else if (rises > 0 && falls > 0)
    v.classification = Monotonicity::NotMonotone;
  else
    v.classification = rises > 0 ? Monotonicity::WeaklyIncreasing : Monotonicity::WeaklyDecreasing;
  return v;
}

ConvexityReport convexity_scan(const MapDefinition& map, double r_max, int radii, int angles, double tol) {
  if (!(r_max > 0.0 && r_max < 1.0) || radii < 1 || angles < 1)
    throw DomainError("convexity_scan: need 0 < r_max < 1 and positive grid sizes");
  ConvexityReport rep;
  rep.r_max = r_max;
  rep.radii = radii;
  rep.angles = angles;
  rep.tol = tol;
  rep.min_h = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= radii; ++k) {
    const double r = r_max * k / radii;
    for (int j = 0; j < angles; ++j) {
      const cd zz = std::polar(r, 2.0 * kPi * j / angles);
      std::optional<double> h;
      try {
        h = sample_point(map, zz).h;
      } catch (const EvaluationError&) {
      }
      if (!h) {
        rep.skipped.push_back(zz);
        continue;
      }
      if (*h < rep.min_h) {
        rep.min_h = *h;
        rep.argmin = zz;
      }
    }
  }
  if (std::isinf(rep.min_h)) rep.min_h = std::numeric_limits<double>::quiet_NaN();
  rep.is_nonnegative = rep.min_h >= -tol;
  return rep;
}

double check_laplace_identity(const MapDefinition& map, cd z, double step) {
  if (!(step > 0.0)) throw DomainError("laplace step must be positive");
  const auto h = [&](cd w) {
    if (std::abs(w) >= 1.0) throw DomainError("laplace stencil leaves the unit disk");
    return convexity_function(map, w);
  };
  const cd is(0.0, step);
  const double center = h(z);
  const double lap = (h(z + step) + h(z - step) + h(z + is) + h(z - is) - 4.0 * center) / (step * step);
  const double fs = spherical_derivative(map, z);
  return std::abs(lap + 8.0 * fs * fs * center);
}

namespace {

CheckResult make(std::string name, double r) {
  CheckResult c;
  c.name = std::move(name);
  c.parameters.emplace_back("r", r);
  return c;
}

std::string property_name(Property p) {
  Properties ps;
  ps.set(p);
  return to_string(ps);
}

// Skipped result when a claimed hypothesis is missing.
std::optional<CheckResult> gate(const MapDefinition& map, CheckResult base, std::initializer_list<Property> needs) {
  for (Property p : needs) {
    if (!map.claims(p)) {
      base.status = CheckStatus::Skipped;
      base.reason = "hypothesis not claimed: " + property_name(p);
      return base;
    }
  }
  return std::nullopt;
}

void set_pass(CheckResult& c, bool ok, const std::string& why_fail) {
  c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  if (!ok) c.reason = why_fail;
}

std::string kv(const char* k, double v) { return std::string(k) + "=" + format_number(v); }

}  // namespace

std::pair<double, double> area_lower_bounds(double r, double s) {
  const double basic = disk_spherical_area(r) * s * s;
  const double refined = kPi * r * r * s * s / (1.0 + r * r * s * s);
  return {basic, refined};
}

LengthBounds length_bounds(double r, double s) {
  LengthBounds b;
  b.basic = circle_spherical_length(r) * s;
  b.upper = 2.0 * kPi * r * s / (1.0 - r * r);
  b.sharp = 2.0 * kPi * r * s / (1.0 + r * r * s * s);
  b.refined = circle_spherical_length(r) * s * std::sqrt(1.0 + r * r * (1.0 - s * s));
  return b;
}

CheckResult check_schwarz_area(const MapDefinition& map, double r, const QuadratureConfig& config,
                               const Tolerances& tol) {
  CheckResult c = make("schwarz_area", r);
  if (auto g = gate(map, c, {Property::SphericallyConvex})) return *g;
  const double a = spherical_area_image(map, r, config);
  const double bound = disk_spherical_area(r);
  c.residual = a - bound;
  c.detail = kv("area", a) + " " + kv("bound", bound);
  const bool equal = std::abs(a - bound) <= tol.identity;
  if (map.claims(Property::SphericalIsometry)) {
    set_pass(c, equal, "isometry must attain equality");
    c.detail += " equality(isometry)";
  } else {
    set_pass(c, a <= bound + tol.inequality, "area exceeds the disk's spherical area");
    if (equal) c.detail += " near-equality";
  }
  return c;
}

CheckResult check_area_lower_bounds(const MapDefinition& map, double r, const QuadratureConfig& config,
                                    const Tolerances& tol) {
  CheckResult c = make("area_lower_bounds", r);
  if (auto g = gate(map, c, {Property::SphericallyConvex})) return *g;
  const double a = spherical_area_image(map, r, config);
  const double s = spherical_derivative(map, cd(0));
  const auto [basic, refined] = area_lower_bounds(r, s);
  c.residual = a - refined;
  c.detail = kv("area", a) + " " + kv("basic", basic) + " " + kv("refined", refined) + " " + kv("fsharp0", s);
  const bool ordered = refined >= basic - 1e-14;
  set_pass(c, a >= basic - tol.inequality && a >= refined - tol.inequality && ordered,
           ordered ? "area below a lower bound" : "refined bound below basic bound");
  return c;
}

CheckResult check_length_bounds(const MapDefinition& map, double r, const QuadratureConfig& config,
                                const Tolerances& tol) {
  CheckResult c = make("length_bounds", r);
  if (auto g = gate(map, c, {Property::SphericallyConvex})) return *g;
  const double len = spherical_length_image(map, r, config);
  const double s = spherical_derivative(map, cd(0));
  const LengthBounds b = length_bounds(r, s);
  const double margin = std::min({len - b.basic, b.upper - len, len - b.sharp, len - b.refined});
  c.residual = margin;
  c.detail = kv("length", len) + " " + kv("basic", b.basic) + " " + kv("upper", b.upper) + " " +
             kv("sharp", b.sharp) + " " + kv("refined", b.refined);
  const bool ordered = b.sharp >= b.basic - 1e-14 && b.refined >= b.basic - 1e-14;
  set_pass(c, margin >= -tol.inequality && ordered,
           ordered ? "length violates a bound" : "refined bounds below basic bound");
  return c;
}

CheckResult check_integral_mean_h(const MapDefinition& map, double r, const QuadratureConfig& config,
                                  const Tolerances& tol) {
  CheckResult c = make("integral_mean_h", r);
  if (auto g = gate(map, c, {Property::SphericallyConvex})) return *g;
  const double m = integral_mean_h(map, r, config);
  const double bound = (1.0 - r * r) / (1.0 + r * r);
  c.residual = m - bound;
  c.detail = kv("mean_h", m) + " " + kv("bound", bound);
  const bool equal = std::abs(m - bound) <= tol.identity;
  if (map.claims(Property::SphericalIsometry)) {
    set_pass(c, equal, "isometry must attain equality");
    c.detail += " equality(isometry)";
  } else {
    set_pass(c, m >= bound - tol.inequality, "integral mean of h below bound");
    if (equal) c.detail += " near-equality";
  }
  return c;
}

CheckResult check_pointwise_mp_bound(const MapDefinition& map, const PointGrid& grid, const Tolerances& tol,
                                     int normalization_grid) {
  CheckResult c;
  c.name = "pointwise_h_bound";
  c.parameters = {{"r_max", grid.r_max}, {"radii", grid.radii}, {"angles", grid.angles}};
  if (auto g = gate(map, c, {Property::SphericallyConvex, Property::CentrallyNormalized})) return *g;
  NormalizationReport norm;
  try {
    norm = check_central_normalization(map, normalization_grid, tol.normalization);
  } catch (const EvaluationError& e) {
    c.status = CheckStatus::Skipped;
    c.reason = std::string("normalization check failed: ") + e.what();
    return c;
  }
  if (!norm.is_centrally_normalized) {
    c.status = CheckStatus::Skipped;
    c.reason = "not centrally normalized";
    return c;
  }
  double worst = std::numeric_limits<double>::infinity();
  cd where{};
  for (int k = 1; k <= grid.radii; ++k) {
    const double r = grid.r_max * k / grid.radii;
    const double bound = (1.0 - r * r) / (1.0 + r * r);
    for (int j = 0; j < grid.angles; ++j) {
      const cd zz = std::polar(r, 2.0 * kPi * j / grid.angles);
      const auto h = sample_point(map, zz).h;
      if (!h) continue;
      if (*h - bound < worst) {
        worst = *h - bound;
        where = zz;
      }
    }
  }
  c.residual = worst;
  c.detail = "min(h - bound) at z=" + format_number(where);
  set_pass(c, worst >= -tol.inequality, "h below the pointwise bound");
  return c;
}

namespace {

RadialProfile profile_on(const MapDefinition& map, Quantity q, const std::vector<double>& radii,
                         const QuadratureConfig& config) {
  RadialProfile p;
  p.quantity = q;
  p.map_name = map.name;
  p.config = config;
  for (double r : radii) {
    ProfileSample s;
    s.r = r;
    try {
      s.value = evaluate_quantity(map, q, r, config);
    } catch (const EvaluationError& e) {
      s.gap_reason = e.what();
    }
    p.samples.push_back(std::move(s));
  }
  return p;
}

std::string describe(const MonotonicityVerdict& v) {
  std::string s(to_string(v.classification));
  if (v.witness) {
    s += " witness r=(" + format_number(v.witness->r0) + "," + format_number(v.witness->r1) + ") values=(" +
         format_number(v.witness->v0) + "," + format_number(v.witness->v1) + ")";
  }
  return s;
}

// Monotone-increasing theorem: strictly increasing, or constant 1 for isometries.
void judge_increasing(CheckResult& c, const MapDefinition& map, const RadialProfile& p, double slack) {
  if (p.gap_count() > 0) {
    c.status = CheckStatus::Fail;
    for (const auto& s : p.samples)
      if (!s.value) {
        c.reason = "profile has gaps: " + s.gap_reason;
        break;
      }
    return;
  }
  const auto v = classify_monotone(p, slack);
  c.detail = describe(v);
  if (map.claims(Property::SphericalIsometry))
    set_pass(c, v.classification == Monotonicity::Constant, "isometry profile must be constant");
  else
    set_pass(c, v.classification == Monotonicity::StrictlyIncreasing, "profile not strictly increasing");
}

std::vector<double> profile_radii(const VerifyConfig& cfg) {
  std::vector<double> out;
  const Eigen::ArrayXd r = Eigen::ArrayXd::LinSpaced(cfg.profile_steps, cfg.profile_r_min, cfg.profile_r_max);
  out.assign(r.data(), r.data() + r.size());
  return out;
}

}  // namespace

CheckResult check_mean_density_decreasing(const MapDefinition& map, const std::vector<double>& r_grid,
                                          const QuadratureConfig& config, const Tolerances& tol) {
  CheckResult c;
  c.name = "mean_density_decreasing";
  c.parameters = {{"points", static_cast<double>(r_grid.size())}};
  if (auto g = gate(map, c, {Property::SphericallyConvex})) return *g;
  const RadialProfile p = profile_on(map, Quantity::HypLenRatio, r_grid, config);
  const auto v = classify_monotone(p, tol.slack);
  c.detail = describe(v);
  set_pass(c,
           p.gap_count() == 0 && (v.classification == Monotonicity::StrictlyDecreasing ||
                                  v.classification == Monotonicity::Constant),
           "circle means of (1-|z|^2) f# not decreasing");
  return c;
}

CheckResult check_gauss_bonnet(const MapDefinition& map, double r, const QuadratureConfig& config,
                               const Tolerances& tol) {
  CheckResult c = make("gauss_bonnet", r);
  if (auto g = gate(map, c, {Property::SphericallyConvex})) return *g;
  const double total = total_curvature_image(map, r, config);
  const double area = spherical_area_image(map, r, config);
  const double res = std::abs(total + 4.0 * area - 2.0 * kPi);
  c.residual = res;
  c.detail = kv("total_curvature", total) + " " + kv("area", area);
  set_pass(c, res <= tol.identity, "Gauss-Bonnet residual too large");
  return c;
}

CheckResult check_isoperimetric(const MapDefinition& map, double r, const QuadratureConfig& config,
                                const Tolerances&) {
  CheckResult c = make("isoperimetric", r);
  if (auto g = gate(map, c, {Property::SphericallyConvex})) return *g;
  const double len = spherical_length_image(map, r, config);
  const double a = spherical_area_image(map, r, config);
  const double deficit = len * len - 4.0 * kPi * a + 4.0 * a * a;
  c.residual = deficit;
  c.detail = kv("length", len) + " " + kv("area", a);
  set_pass(c, deficit >= -1e-8, "isoperimetric inequality violated");
  return c;
}

CheckResult check_connection_identity(const MapDefinition& map, double r, const QuadratureConfig& config,
                                      double tol) {
  CheckResult c = make("connection_identity", r);
  if (auto g = gate(map, c, {Property::SphericallyConvex})) return *g;
  config.validate();
  const double lhs = 2.0 * kPi * circle_mean(map, PointQuantity::FSharpSquared, r, config.angular_nodes);
  const double rhs = 2.0 / (r * r) * disk_integral(map, PointQuantity::HFSharpSquared, r, config);
  const double res = std::abs(lhs - rhs);
  c.residual = res;
  c.detail = kv("boundary", lhs) + " " + kv("interior", rhs);
  set_pass(c, res <= tol, "connection identity residual too large");
  return c;
}

std::vector<cd> seeded_disk_points(std::uint64_t seed, int count, double radius) {
  std::mt19937_64 gen(seed);
  const auto unit = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  std::vector<cd> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double rho = radius * std::sqrt(unit());
    const double t = 2.0 * kPi * unit();
    pts.push_back(std::polar(rho, t));
  }
  return pts;
}

std::vector<CheckResult> verify_all(const MapDefinition& map, const VerifyConfig& cfg) {
  cfg.quad.validate();
  std::vector<CheckResult> out;
  const Tolerances& tol = cfg.tol;

  // Evidence first: convexity scan and normalization, each checked against the claim.
  {
    CheckResult c;
    c.name = "convexity_scan";
    c.parameters = {{"r_max", cfg.scan.r_max}, {"radii", cfg.scan.radii}, {"angles", cfg.scan.angles}};
    const auto rep = convexity_scan(map, cfg.scan.r_max, cfg.scan.radii, cfg.scan.angles, tol.inequality);
    c.residual = rep.min_h;
    c.detail = kv("min_h", rep.min_h) + " argmin=" + format_number(rep.argmin) +
               (rep.is_nonnegative ? " h>=0 on grid" : " h<0 on grid: not spherically convex");
    if (map.claims(Property::SphericallyConvex))
      set_pass(c, rep.is_nonnegative, "claimed spherically convex but h < 0 on the grid");
    else
      c.status = CheckStatus::Pass;
    out.push_back(std::move(c));
  }

  bool normalized = false;
  {
    CheckResult c;
    c.name = "central_normalization";
    c.parameters = {{"grid", cfg.normalization_grid}, {"tol", tol.normalization}};
    try {
      const auto rep = check_central_normalization(map, cfg.normalization_grid, tol.normalization);
      normalized = rep.is_centrally_normalized;
      c.residual = rep.sup_density - rep.alpha;
      c.detail = "f(0)=" + format_number(rep.f0) + " f''(0)=" + format_number(rep.f2_0) + " " +
                 kv("alpha", rep.alpha) + " " + kv("sup_density", rep.sup_density) +
                 (normalized ? " normalized" : " not normalized");
    } catch (const EvaluationError& e) {
      c.detail = std::string("not evaluable: ") + e.what();
    }
    if (map.claims(Property::CentrallyNormalized))
      set_pass(c, normalized, "claimed centrally normalized but the check fails");
    else
      c.status = CheckStatus::Pass;
    out.push_back(std::move(c));
  }

  const auto guarded = [&](auto&& fn, const std::string& name) {
    try {
      out.push_back(fn());
    } catch (const Error& e) {
      CheckResult c;
      c.name = name;
      c.status = CheckStatus::Fail;
      c.reason = e.what();
      out.push_back(std::move(c));
    }
  };

  for (double r : cfg.check_radii) {
    guarded([&] { return check_schwarz_area(map, r, cfg.quad, tol); }, "schwarz_area");
    guarded([&] { return check_area_lower_bounds(map, r, cfg.quad, tol); }, "area_lower_bounds");
    guarded([&] { return check_length_bounds(map, r, cfg.quad, tol); }, "length_bounds");
    guarded([&] { return check_integral_mean_h(map, r, cfg.quad, tol); }, "integral_mean_h");
    guarded([&] { return check_gauss_bonnet(map, r, cfg.quad, tol); }, "gauss_bonnet");
    guarded([&] { return check_isoperimetric(map, r, cfg.quad, tol); }, "isoperimetric");
  }
  guarded([&] { return check_connection_identity(map, 0.5, cfg.quad); }, "connection_identity");
  guarded([&] { return check_pointwise_mp_bound(map, cfg.scan, tol, cfg.normalization_grid); },
          "pointwise_h_bound");

  // Laplace identity at seeded interior points; draws past critical points.
  // A residual above tolerance still passes when it shrinks like step^2 over
  // two halvings, since then it is stencil truncation and not a defect.
  guarded(
      [&] {
        CheckResult c;
        c.name = "laplace_identity";
        c.parameters = {{"step", cfg.laplace_step}, {"seed", static_cast<double>(cfg.seed)}};
        const auto candidates = seeded_disk_points(cfg.seed, 4 * cfg.laplace_points, cfg.laplace_radius);
        double worst = 0.0, worst_ratio = 0.0;
        bool converging = true;
        int used = 0;
        for (const cd& p : candidates) {
          if (used == cfg.laplace_points) break;
          try {
            const double r0 = check_laplace_identity(map, p, cfg.laplace_step);
            worst = std::max(worst, r0);
            ++used;
            if (r0 <= tol.laplace) continue;
            const double r1 = check_laplace_identity(map, p, cfg.laplace_step / 2);
            const double r2 = check_laplace_identity(map, p, cfg.laplace_step / 4);
            for (double q : {r1 / r0, r2 / r1}) {
              worst_ratio = std::max(worst_ratio, q);
              if (!(q >= 0.15 && q <= 0.35)) converging = false;
            }
          } catch (const EvaluationError&) {
          }
        }
        c.residual = worst;
        c.detail = "points=" + std::to_string(used);
        if (worst > tol.laplace) c.detail += " above tolerance, worst halving ratio=" + format_number(worst_ratio);
        set_pass(c, used == cfg.laplace_points && (worst <= tol.laplace || converging),
                 "Laplace identity residual too large");
        return c;
      },
      "laplace_identity");

  const std::vector<double> radii = profile_radii(cfg);
  guarded([&] { return check_mean_density_decreasing(map, radii, cfg.quad, tol); }, "mean_density_decreasing");

  // Monotonicity theorems. The log-mean and area ratio need only convexity;
  // length and curvature ratios also need central normalization.
  const auto monotone = [&](const std::string& name, Quantity q, bool needs_normalization) {
    guarded(
        [&] {
          CheckResult c;
          c.name = name;
          c.parameters = {{"r_min", cfg.profile_r_min}, {"r_max", cfg.profile_r_max},
                          {"steps", static_cast<double>(cfg.profile_steps)}};
          if (auto g = gate(map, c, {Property::SphericallyConvex})) return *g;
          const RadialProfile p = profile_on(map, q, radii, cfg.quad);
          if (needs_normalization && !(map.claims(Property::CentrallyNormalized) && normalized)) {
            c.status = CheckStatus::Skipped;
            c.reason = "not centrally normalized";
            if (p.gap_count() == 0) c.detail = "observed " + describe(classify_monotone(p, tol.slack));
            return c;
          }
          judge_increasing(c, map, p, tol.slack);
          return c;
        },
        name);
  };
  monotone("log_mean_increasing", Quantity::LogMean, false);
  monotone("area_ratio_increasing", Quantity::AreaRatio, false);
  monotone("length_ratio_increasing", Quantity::LenRatio, true);
  monotone("curvature_ratio_increasing", Quantity::CurvRatio, true);

  return out;
}

}  // namespace sphconv
