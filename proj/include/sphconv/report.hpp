#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "sphconv/quad.hpp"
#include "sphconv/verify.hpp"

namespace sphconv {

/// `r,<quantity>` header, then one row per sample; gaps as `r,NaN,<reason>`.
void write_profile_csv(std::ostream& out, const RadialProfile& profile);

/// Shared-radius profiles side by side: `r,<q1>,<q2>,...`. Any gap in a row
/// writes NaN in that column.
void write_profiles_csv(std::ostream& out, const std::vector<RadialProfile>& profiles);

/// One aligned line per check: name, parameters, status, residual, detail.
void write_checks_table(std::ostream& out, const std::vector<CheckResult>& checks);

/// JSON array carrying the same fields as the table.
void write_checks_json(std::ostream& out, const std::vector<CheckResult>& checks);

/// Strips separators that would break a CSV cell.
std::string csv_safe(std::string_view text);

}  // namespace sphconv
