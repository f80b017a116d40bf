#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oopsie/source.hpp"

namespace oopsie {

// Stable diagnostic codes; the numeric value is part of the output format.
enum class DiagCode {
    MalformedSql = 1,        // OOPS001
    UnsupportedSql = 2,      // OOPS002
    UnextractableSql = 3,    // OOPS003
    ParamIndexOob = 4,       // OOPS004
    ColumnIndexOob = 5,      // OOPS005
    ColumnNameUnknown = 6,   // OOPS006
    SetterTypeMismatch = 7,  // OOPS007
    GetterTypeMismatch = 8,  // OOPS008
    NonlocalAccess = 9,      // OOPS009
    UncheckedAccess = 10,    // OOPS010
    UnextractableIndex = 11, // OOPS011
    AnnotationArgMismatch = 12,    // OOPS012
    AnnotationReturnMismatch = 13, // OOPS013
    OutOfScope = 14,         // OOPS014 (Info)
    SubsetViolationCode = 15 // OOPS015 (Warning)
};

std::string code_id(DiagCode code);  // "OOPS004"

enum class Severity { Error, Warning, Info };

std::string_view severity_name(Severity s);  // "error", "warning", "info"

struct Diagnostic {
    DiagCode code = DiagCode::MalformedSql;
    Severity severity = Severity::Error;
    SourceSpan span;
    std::string message;
    std::optional<std::string> expected;
    std::optional<std::string> actual;
};

// Total order used for output: (file, line, column, code, severity, message).
bool diagnostic_less(const Diagnostic& a, const Diagnostic& b);

void sort_diagnostics(std::vector<Diagnostic>& diagnostics);

} // namespace oopsie
