#pragma once

#include <functional>
#include <string>

namespace covreg {

/// Non-fatal diagnostics (clamped grid lookups, tiny training sets). The
/// default sink writes "warning: <msg>" to stderr.
void warn(const std::string &msg);

/// Replaces the warning sink; returns the previous one. An empty function
/// silences warnings.
std::function<void(const std::string &)>
set_warning_sink(std::function<void(const std::string &)> sink);

} // namespace covreg
