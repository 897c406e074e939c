#pragma once

#include <string>
#include <string_view>

namespace scmix {

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(std::string_view s);

/// Current UTC time as YYYY-MM-DDTHH:MM:SS.mmmZ.
std::string utc_timestamp();

}  // namespace scmix
