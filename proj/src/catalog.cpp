#include "sphconv/catalog.hpp"

#include <cmath>
#include <vector>

#include "sphconv/errors.hpp"
#include "sphconv/format.hpp"
#include "sphconv/jet.hpp"

namespace sphconv {

std::string to_string(Properties p) {
  std::string s;
  const auto add = [&](Property q, const char* label) {
    if (!p.has(q)) return;
    if (!s.empty()) s += '+';
    s += label;
  };
  add(Property::SphericallyConvex, "SphericallyConvex");
  add(Property::CentrallyNormalized, "CentrallyNormalized");
  add(Property::SphericalIsometry, "SphericalIsometry");
  return s.empty() ? "none" : s;
}

MapDefinition from_expression(std::string_view source, std::string name) {
  MapDefinition m;
  m.ast = parse(source);
  m.name = name.empty() ? std::string(source) : std::move(name);
  return m;
}

namespace {

using cd = std::complex<double>;

// Splits "head(a,b)" into head and argument strings. No arguments -> empty list.
struct Call {
  std::string_view head;
  std::vector<std::string_view> args;
};

Call split_call(std::string_view text) {
  Call c;
  const auto open = text.find('(');
  if (open == std::string_view::npos) {
    c.head = text;
    return c;
  }
  if (text.back() != ')') throw UnknownBuiltin(std::string(text));
  c.head = text.substr(0, open);
  std::string_view inner = text.substr(open + 1, text.size() - open - 2);
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (inner[i] == '(') ++depth;
    if (inner[i] == ')') --depth;
    if (inner[i] == ',' && depth == 0) {
      c.args.push_back(inner.substr(start, i - start));
      start = i + 1;
    }
  }
  c.args.push_back(inner.substr(start));
  return c;
}

cd constant_arg(std::string_view text) {
  const Expr e = parse(text);
  if (!e.is_constant()) throw SyntaxError(0, "builtin argument must be a constant");
  return evaluate_constant(e);
}

double real_arg(std::string_view text) {
  const cd v = constant_arg(text);
  if (v.imag() != 0.0) throw SyntaxError(0, "angle must be real");
  return v.real();
}

Expr f1_ast() {
  const Expr p = sqrt(constant(1.0) + z());
  const Expr m = sqrt(constant(1.0) - z());
  return (p - m) / (p + m);
}

}  // namespace

MapDefinition builtin(std::string_view name) {
  const Call call = split_call(name);
  const auto arity = [&](std::size_t n) {
    if (call.args.size() != n) throw UnknownBuiltin(std::string(name));
  };
  MapDefinition m;
  if (call.head == "identity") {
    arity(0);
    m.name = "identity";
    m.ast = z();
    m.claimed = {Property::SphericallyConvex, Property::CentrallyNormalized, Property::SphericalIsometry};
  } else if (call.head == "f1") {
    arity(0);
    m.name = "f1";
    m.ast = f1_ast();
    m.claimed = {Property::SphericallyConvex, Property::CentrallyNormalized};
  } else if (call.head == "f2") {
    arity(0);
    m.name = "f2";
    m.ast = exp(z());
    m.claimed = {Property::SphericallyConvex};
  } else if (call.head == "f3") {
    arity(0);
    m.name = "f3";
    m.ast = pow(z(), 2) * exp(z());
  } else if (call.head == "scale") {
    arity(1);
    const cd eta = constant_arg(call.args[0]);
    if (eta == cd(0)) throw DomainError("scale(0) is not a meromorphic map of interest");
    m.name = "scale(" + format_number(eta) + ")";
    m.ast = constant(eta) * z();
    // eta*z maps the disk onto a disk of radius |eta|; it is a hemisphere
    // (hence convex) exactly when |eta| <= 1.
    const double a = std::abs(eta);
    m.claimed.set(Property::SphericallyConvex, a <= 1.0);
    m.claimed.set(Property::CentrallyNormalized, a <= 1.0);
    m.claimed.set(Property::SphericalIsometry, a == 1.0);
  } else if (call.head == "rot") {
    arity(2);
    const cd a = constant_arg(call.args[0]);
    const double theta = real_arg(call.args[1]);
    m.name = "rot(" + format_number(a) + "," + format_number(theta) + ")";
    m.ast = constant(std::polar(1.0, theta)) * ((z() - constant(a)) / (constant(1.0) + z() * constant(std::conj(a))));
    m.claimed = {Property::SphericallyConvex, Property::SphericalIsometry};
    m.claimed.set(Property::CentrallyNormalized, a == cd(0));
  } else if (call.head == "invrot") {
    arity(1);
    const double theta = real_arg(call.args[0]);
    m.name = "invrot(" + format_number(theta) + ")";
    const cd u = std::polar(1.0, theta);
    m.ast = constant(u) / z();
    m.inverse_chart = theta == 0.0 ? z() : constant(std::conj(u)) * z();
    m.claimed = {Property::SphericallyConvex, Property::SphericalIsometry};
  } else {
    throw UnknownBuiltin(std::string(name));
  }
  return m;
}

double chart_mismatch(const MapDefinition& map, std::span<const std::complex<double>> points) {
  if (!map.inverse_chart) return 0.0;
  double worst = 0.0;
  for (const auto& p : points) {
    try {
      const cd f = eval_jet(map.ast, p).v;
      const cd g = eval_jet(*map.inverse_chart, p).v;
      worst = std::max(worst, std::abs(f * g - 1.0));
    } catch (const EvaluationError&) {
      // one chart is singular here; nothing to compare
    }
  }
  return worst;
}

}  // namespace sphconv
