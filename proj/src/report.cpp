#include "sphconv/report.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <json.hpp>

#include "sphconv/format.hpp"

namespace sphconv {

std::string csv_safe(std::string_view text) {
  std::string s(text);
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  return s;
}

void write_profile_csv(std::ostream& out, const RadialProfile& profile) {
  out << "r," << to_string(profile.quantity) << '\n';
  for (const auto& s : profile.samples) {
    out << format_number(s.r) << ',';
    if (s.value)
      out << format_number(*s.value);
    else
      out << "NaN," << csv_safe(s.gap_reason);
    out << '\n';
  }
}

void write_profiles_csv(std::ostream& out, const std::vector<RadialProfile>& profiles) {
  if (profiles.empty()) return;
  const std::size_t rows = profiles.front().samples.size();
  for (const auto& p : profiles)
    if (p.samples.size() != rows) throw std::invalid_argument("write_profiles_csv: profiles differ in length");
  out << 'r';
  for (const auto& p : profiles) out << ',' << to_string(p.quantity);
  out << '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    out << format_number(profiles.front().samples[i].r);
    for (const auto& p : profiles) {
      const auto& s = p.samples[i];
      out << ',' << (s.value ? format_number(*s.value) : std::string("NaN"));
    }
    out << '\n';
  }
}

namespace {

std::string label(const CheckResult& c) {
  std::string s = c.name;
  if (!c.parameters.empty() && c.parameters.front().first == "r")
    s += "[r=" + format_number(c.parameters.front().second) + "]";
  return s;
}

// Round-trips through the 15-digit text form so JSON carries the same digits
// as the table.
double rounded(double v) { return std::stod(format_number(v)); }

}  // namespace

void write_checks_table(std::ostream& out, const std::vector<CheckResult>& checks) {
  std::size_t width = 0;
  for (const auto& c : checks) width = std::max(width, label(c).size());
  for (const auto& c : checks) {
    std::string name = label(c);
    name.resize(width, ' ');
    std::string status(to_string(c.status));
    status.resize(8, ' ');
    out << name << "  " << status;
    out << "  residual=" << (c.residual ? format_number(*c.residual) : std::string("-"));
    if (!c.reason.empty()) out << "  reason: " << c.reason;
    if (!c.detail.empty()) out << "  " << c.detail;
    out << '\n';
  }
}

void write_checks_json(std::ostream& out, const std::vector<CheckResult>& checks) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["status"] = std::string(to_string(c.status));
    if (c.residual && std::isfinite(*c.residual))
      j["residual"] = rounded(*c.residual);
    else
      j["residual"] = nullptr;
    j["reason"] = c.reason;
    j["detail"] = c.detail;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : c.parameters) params[k] = rounded(v);
    j["parameters"] = std::move(params);
    arr.push_back(std::move(j));
  }
  out << arr.dump(2) << '\n';
}

}  // namespace sphconv
