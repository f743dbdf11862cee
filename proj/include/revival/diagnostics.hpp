#pragma once

#include <functional>
#include <string_view>

namespace revival {

using WarningHandler = std::function<void(std::string_view)>;

// Soft-regime warnings (large beta, series outside its range). Default handler
// writes to stderr. Install the handler before starting any worker threads.
void set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

}  // namespace revival
