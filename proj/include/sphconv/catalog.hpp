#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "sphconv/expr.hpp"

namespace sphconv {

enum class Property : std::uint8_t {
  SphericallyConvex = 1u << 0,
  CentrallyNormalized = 1u << 1,
  SphericalIsometry = 1u << 2,
};

/// Small flag set over Property.
class Properties {
 public:
  constexpr Properties() = default;
  constexpr Properties(std::initializer_list<Property> ps) {
    for (auto p : ps) bits_ |= static_cast<std::uint8_t>(p);
  }
  constexpr bool has(Property p) const { return bits_ & static_cast<std::uint8_t>(p); }
  constexpr Properties& set(Property p, bool on = true) {
    if (on)
      bits_ |= static_cast<std::uint8_t>(p);
    else
      bits_ &= static_cast<std::uint8_t>(~static_cast<std::uint8_t>(p));
    return *this;
  }
  friend constexpr bool operator==(Properties, Properties) = default;

 private:
  std::uint8_t bits_ = 0;
};

std::string to_string(Properties p);

/// A meromorphic map of the disk given by an expression, plus an optional
/// second chart `1/f` used wherever f has poles or |f| > 1.
struct MapDefinition {
  std::string name;
  Expr ast;
  std::optional<Expr> inverse_chart;
  Properties claimed;

  bool claims(Property p) const { return claimed.has(p); }
};

/// A map built from user text; claims nothing.
MapDefinition from_expression(std::string_view source, std::string name = {});

/// Catalog lookup. Accepted names:
///   identity, f1, f2, f3, scale(eta), rot(a,theta), invrot(theta)
/// where eta and a are complex literals and theta is real.
MapDefinition builtin(std::string_view name);

/// Largest |f(z) * g(z) - 1| over `points` where both charts evaluate;
/// 0 when the map has no inverse chart.
double chart_mismatch(const MapDefinition& map, std::span<const std::complex<double>> points);

}  // namespace sphconv
