#include "sphconv/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include "sphconv/catalog.hpp"
#include "sphconv/errors.hpp"
#include "sphconv/format.hpp"
#include "sphconv/report.hpp"
#include "sphconv/sphgeo.hpp"
#include "sphconv/verify.hpp"

namespace sphconv::cli {

namespace fs = std::filesystem;
using cd = std::complex<double>;

class IoError : public Error {
 public:
  using Error::Error;
};

QuadratureConfig default_quadrature() {
  QuadratureConfig q;
  if (const char* env = std::getenv("SPHCONV_NODES"); env && *env) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n <= 0 || n > (1 << 24)) throw DomainError(std::string("bad SPHCONV_NODES value: ") + env);
    q.angular_nodes = static_cast<int>(n);
  }
  return q;
}

namespace {

struct MapArgs {
  std::string fn;
  std::string builtin_name;

  void attach(CLI::App* cmd) {
    auto* f = cmd->add_option("--fn", fn, "expression in z, e.g. \"z^2*exp(z)\"");
    auto* b = cmd->add_option("--builtin", builtin_name, "identity, f1, f2, f3, scale(eta), rot(a,theta), invrot(theta)");
    f->excludes(b);
    b->excludes(f);
  }

  MapDefinition resolve() const {
    if (!fn.empty()) return from_expression(fn);
    if (!builtin_name.empty()) return builtin(builtin_name);
    throw SyntaxError(0, "one of --fn or --builtin is required");
  }
};

struct QuadArgs {
  std::optional<int> nodes;
  std::optional<int> radial;

  void attach(CLI::App* cmd) {
    cmd->add_option("--nodes", nodes, "angular nodes N (power of two, >= 16)");
    cmd->add_option("--radial", radial, "radial Gauss-Legendre nodes M (>= 8)");
  }

  QuadratureConfig resolve() const {
    QuadratureConfig q = default_quadrature();
    if (nodes) q.angular_nodes = *nodes;
    if (radial) q.radial_nodes = *radial;
    q.validate();
    return q;
  }
};

cd parse_point(const std::string& text) {
  const Expr e = parse(text);
  if (!e.is_constant()) throw SyntaxError(0, "--z must be a complex constant like 0.3+0.2i");
  return evaluate_constant(e);
}

int cmd_eval(const MapArgs& m, const std::string& ztext, const std::string& quantity, std::ostream& out) {
  const MapDefinition map = m.resolve();
  const cd at = parse_point(ztext);
  if (!(std::abs(at) < 1.0)) throw DomainError("--z must lie in the open unit disk");
  double v = 0.0;
  if (quantity == "fsharp")
    v = spherical_derivative(map, at);
  else if (quantity == "h")
    v = convexity_function(map, at);
  else
    v = curvature_image_circle(map, at);
  out << format_number(v) << '\n';
  return kOk;
}

std::string summary(const RadialProfile& p, double slack) {
  std::string s(to_string(p.quantity));
  s += ": ";
  try {
    const auto v = classify_monotone(p, slack);
    s += to_string(v.classification);
    if (v.witness)
      s += " witness r=(" + format_number(v.witness->r0) + "," + format_number(v.witness->r1) + ") values=(" +
           format_number(v.witness->v0) + "," + format_number(v.witness->v1) + ")";
  } catch (const TooFewSamples&) {
    s += "unclassified (too few samples)";
  }
  return s;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << content;
  f.close();
  if (!f) throw IoError("failed writing " + path.string());
}

struct CurveArgs {
  std::string quantity;
  double rmin = 0.05;
  double rmax = 0.95;
  int steps = 50;
  std::string out_path;
  double slack = 1e-9;
};

int cmd_curve(const MapArgs& m, const QuadArgs& qa, const CurveArgs& a, std::ostream& out, std::ostream& err) {
  const MapDefinition map = m.resolve();
  const auto q = parse_quantity(a.quantity);
  if (!q) throw SyntaxError(0, "unknown quantity '" + a.quantity + "'");
  const RadialProfile p = radial_profile(map, *q, a.rmin, a.rmax, a.steps, qa.resolve());
  std::ostringstream csv;
  write_profile_csv(csv, p);
  if (a.out_path.empty() || a.out_path == "-") {
    out << csv.str();
  } else {
    write_file(a.out_path, csv.str());
  }
  const bool to_stdout = a.out_path.empty() || a.out_path == "-";
  if (p.gap_count() > 0) {
    err << "error: " << p.gap_count() << " sample(s) failed; first: ";
    for (const auto& s : p.samples)
      if (!s.value) {
        err << s.gap_reason << '\n';
        break;
      }
    err << summary(p, a.slack) << '\n';
    return kEvalError;
  }
  (to_stdout ? err : out) << summary(p, a.slack) << '\n';
  return kOk;
}

int cmd_scan(const MapArgs& m, double rmax, int radii, int angles, double tol, std::ostream& out) {
  const MapDefinition map = m.resolve();
  const auto rep = convexity_scan(map, rmax, radii, angles, tol);
  out << "min_h=" << format_number(rep.min_h) << '\n';
  out << "argmin=" << format_number(rep.argmin) << " |z|=" << format_number(std::abs(rep.argmin)) << '\n';
  out << "skipped=" << rep.skipped.size() << '\n';
  out << "verdict=" << (rep.is_nonnegative ? "nonnegative" : "negative") << '\n';
  return rep.is_nonnegative ? kOk : kCheckFailed;
}

int cmd_verify(const MapArgs& m, const QuadArgs& qa, std::uint64_t seed, bool json, std::ostream& out) {
  const MapDefinition map = m.resolve();
  VerifyConfig cfg;
  cfg.quad = qa.resolve();
  cfg.seed = seed;
  const auto checks = verify_all(map, cfg);
  if (json)
    write_checks_json(out, checks);
  else
    write_checks_table(out, checks);
  for (const auto& c : checks)
    if (c.status == CheckStatus::Fail) return kCheckFailed;
  return kOk;
}

std::string h_surface_csv(const MapDefinition& map, int radii, double r_step, int angles) {
  std::ostringstream os;
  os << "r,t,h\n";
  for (int k = 1; k <= radii; ++k) {
    const double r = k * r_step;
    for (int j = 0; j < angles; ++j) {
      const double t = 2.0 * std::numbers::pi * j / angles;
      os << format_number(r) << ',' << format_number(t) << ',' << format_number(convexity_function(map, std::polar(r, t)))
         << '\n';
    }
  }
  return os.str();
}

std::string profiles_csv(const MapDefinition& map, std::initializer_list<Quantity> qs, const QuadratureConfig& cfg) {
  std::vector<RadialProfile> ps;
  for (Quantity q : qs) ps.push_back(radial_profile(map, q, 0.05, 0.95, 50, cfg));
  std::ostringstream os;
  write_profiles_csv(os, ps);
  return os.str();
}

}  // namespace

void write_figures(const fs::path& dir, const QuadratureConfig& cfg) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  const MapDefinition f1 = builtin("f1"), f2 = builtin("f2"), f3 = builtin("f3");

  write_file(dir / "fig1_f1_len_area.csv", profiles_csv(f1, {Quantity::LenRatio, Quantity::AreaRatio}, cfg));
  write_file(dir / "fig2_f1_curv.csv", profiles_csv(f1, {Quantity::CurvRatio}, cfg));
  write_file(dir / "fig3_f2_h_surface.csv", h_surface_csv(f2, 19, 0.05, 64));
  write_file(dir / "fig4_f2_ratios.csv",
             profiles_csv(f2, {Quantity::LenRatio, Quantity::AreaRatio, Quantity::CurvRatio}, cfg));
  write_file(dir / "fig5_f3_h_surface.csv", h_surface_csv(f3, 19, 0.05, 64));
  {
    std::ostringstream os;
    os << "t,h\n";
    constexpr int n = 256;
    for (int j = 0; j < n; ++j) {
      const double t = 2.0 * std::numbers::pi * j / n;
      os << format_number(t) << ',' << format_number(convexity_function(f3, std::polar(0.8, t))) << '\n';
    }
    write_file(dir / "fig6_f3_h_r08.csv", os.str());
  }
  write_file(dir / "fig7_f3_len_area.csv", profiles_csv(f3, {Quantity::LenRatio, Quantity::AreaRatio}, cfg));
  write_file(dir / "fig8_f3_curv.csv", profiles_csv(f3, {Quantity::CurvRatio}, cfg));
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spherical geometry of meromorphic maps of the unit disk"};
  app.require_subcommand(1);

  MapArgs map_args;
  QuadArgs quad_args;

  auto* eval = app.add_subcommand("eval", "evaluate f#, h or image-circle curvature at a point");
  std::string ztext, eval_quantity = "fsharp";
  map_args.attach(eval);
  eval->add_option("--z", ztext, "point in the unit disk, a+bi")->required();
  eval->add_option("--quantity", eval_quantity)->check(CLI::IsMember({"fsharp", "h", "kappa"}));

  auto* curve = app.add_subcommand("curve", "write a radial profile CSV");
  CurveArgs curve_args;
  map_args.attach(curve);
  quad_args.attach(curve);
  curve->add_option("--quantity", curve_args.quantity,
                    "lenratio|arearatio|curvratio|hyplenratio|logmean|intmeanh|length|area|totalcurv")
      ->required();
  curve->add_option("--rmin", curve_args.rmin);
  curve->add_option("--rmax", curve_args.rmax);
  curve->add_option("--steps", curve_args.steps);
  curve->add_option("--slack", curve_args.slack, "monotonicity slack");
  curve->add_option("--out", curve_args.out_path, "output path, '-' for standard output");

  auto* scan = app.add_subcommand("scan", "scan h over a polar grid");
  double scan_rmax = 0.95, scan_tol = 1e-10;
  int scan_radii = 100, scan_angles = 256;
  map_args.attach(scan);
  scan->add_option("--rmax", scan_rmax);
  scan->add_option("--radii", scan_radii)->check(CLI::PositiveNumber);
  scan->add_option("--angles", scan_angles)->check(CLI::PositiveNumber);
  scan->add_option("--tol", scan_tol);

  auto* verify = app.add_subcommand("verify", "run every applicable check");
  std::uint64_t seed = VerifyConfig{}.seed;
  bool json = false, table = false;
  map_args.attach(verify);
  quad_args.attach(verify);
  verify->add_option("--seed", seed, "seed for the Laplace-check points");
  auto* jflag = verify->add_flag("--json", json, "JSON report");
  auto* tflag = verify->add_flag("--table", table, "table report (default)");
  jflag->excludes(tflag);

  auto* figures = app.add_subcommand("figures", "write the figure CSVs");
  std::string outdir;
  figures->add_option("--outdir", outdir)->required();
  quad_args.attach(figures);

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }

  try {
    if (*eval) return cmd_eval(map_args, ztext, eval_quantity, out);
    if (*curve) return cmd_curve(map_args, quad_args, curve_args, out, err);
    if (*scan) return cmd_scan(map_args, scan_rmax, scan_radii, scan_angles, scan_tol, out);
    if (*verify) return cmd_verify(map_args, quad_args, seed, json, out);
    if (*figures) {
      write_figures(outdir, quad_args.resolve());
      return kOk;
    }
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const UnknownBuiltin& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kEvalError;
  }
  return kParseError;
}

}  // namespace sphconv::cli
