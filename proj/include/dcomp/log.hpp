#pragma once

#include <functional>
#include <string>

namespace dcomp {

using WarningSink = std::function<void(const std::string&)>;

/// Emits a warning through the installed sink (stderr by default).
void warn(const std::string& message);

/// Replaces the warning sink; returns the previous one. Not thread-safe.
WarningSink set_warning_sink(WarningSink sink);

}  // namespace dcomp
