#pragma once

#include <complex>
#include <cstdio>
#include <string>

namespace sphconv {

/// Decimal with 15 significant digits, the precision of every emitted number.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

/// `a+bi` form with no spaces; purely real values print without the `i` part.
inline std::string format_number(std::complex<double> v) {
  if (v.imag() == 0.0) return format_number(v.real());
  std::string s = format_number(v.real());
  s += std::signbit(v.imag()) ? "-" : "+";
  return s + format_number(std::abs(v.imag())) + "i";
}

}  // namespace sphconv
