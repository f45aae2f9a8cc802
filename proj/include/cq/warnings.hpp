#pragma once

#include <functional>
#include <string>

namespace cq {

using WarningHandler = std::function<void(const std::string&)>;

/// Install a sink for non-fatal diagnostics (e.g. conditioning warnings from
/// weight solves). Passing an empty handler silences warnings (the default).
void set_warning_handler(WarningHandler handler);

void emit_warning(const std::string& message);

}  // namespace cq
