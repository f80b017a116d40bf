#pragma once

#include <string>
#include <vector>

#include "oopsie/checker.hpp"

namespace oopsie {

enum class OutputFormat { Text, Json };

// text:  file:line:col: severity OOPSNNN: message
// json:  array of {code, severity, file, line, column, message, expected?, actual?}
std::string render_diagnostics(const std::vector<Diagnostic>& diagnostics, OutputFormat format,
                               bool color = false);

std::string render_stats(const CheckStats& stats, OutputFormat format);

} // namespace oopsie
