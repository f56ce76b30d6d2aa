#pragma once

#include <functional>
#include <string_view>

namespace opqsl {

// Non-fatal conditions (degenerate extremal levels, correlated seeds, ...) are
// reported through a process-wide handler. The default writes to stderr.
using WarningHandler = std::function<void(std::string_view)>;

void set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

}  // namespace opqsl
