#pragma once

#include <string>

namespace opqsl::runner {

/// Shortest round-trip-safe text for CSV and metadata: 17 significant digits,
/// '.' decimal point, "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double x);

}  // namespace opqsl::runner
