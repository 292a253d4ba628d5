#pragma once

#include <string>
#include <string_view>

namespace bernegger {

/// Shortest decimal that parses back to the same double; "nan", "inf",
/// "-inf" for non-finite values.
std::string format_double(double x);

/// Strict parse of a full decimal token; throws DataError otherwise.
double parse_double(std::string_view token);

}  // namespace bernegger
