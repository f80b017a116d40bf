#pragma once

// The type-checking core: introduces SQL qualifiers at database API calls
// from constant-propagation results and query signatures, refines them
// flow-sensitively through the CFG, verifies getter/setter calls against
// the conversion table, and enforces manual annotations.

#include <optional>
#include <string>
#include <vector>

#include "oopsie/constprop.hpp"
#include "oopsie/diagnostics.hpp"
#include "oopsie/javafront.hpp"
#include "oopsie/schema.hpp"
#include "oopsie/sqltype.hpp"
#include "oopsie/typemap.hpp"

namespace oopsie {

enum class Mode { Sound, Degraded };

struct QualifierState {
    std::vector<SqlQualifier> slots;

    friend bool operator==(const QualifierState& a, const QualifierState& b) {
        return a.slots == b.slots;
    }
};

QualifierState join_qualifiers(const QualifierState& a, const QualifierState& b);

struct CheckOptions {
    Mode mode = Mode::Sound;
    bool supported_as_warning = false;  // downgrade SupportedOnly mismatches
    int jobs = 0;                       // 0: one worker per hardware thread
};

struct CheckStats {
    long long checked_getters = 0;
    long long checked_setters = 0;
    long long out_of_scope = 0;       // accesses on receivers with no local info
    long long unchecked_accesses = 0; // accesses on unanalyzable statements

    CheckStats& operator+=(const CheckStats& o) {
        checked_getters += o.checked_getters;
        checked_setters += o.checked_setters;
        out_of_scope += o.out_of_scope;
        unchecked_accesses += o.unchecked_accesses;
        return *this;
    }
};

struct SourceFile {
    std::string path;
    std::string text;
};

struct CheckResult {
    std::vector<Diagnostic> diagnostics;  // sorted by (file, line, column, code)
    CheckStats stats;
    std::vector<std::string> tool_errors;  // unparsable files, bad annotations

    bool has_severity_at_least(Severity threshold) const;
};

// Analyzes every file: per method, builds the CFG, runs constant propagation
// and the qualifier fixpoint, and collects diagnostics. Methods never
// influence each other except through declared annotations. Deterministic
// for any worker count.
CheckResult check_program(const std::vector<SourceFile>& sources, const SchemaCatalog& catalog,
                          const ConversionTable& conversions, const CheckOptions& options);

// --- building blocks, exposed for direct testing ---------------------------

// Qualifier introduced for a statement-creating call whose SQL argument has
// the given constant value, plus the diagnostics the introduction emits.
struct IntroduceResult {
    SqlQualifier qualifier;
    std::vector<Diagnostic> diagnostics;
};

IntroduceResult introduce_statement_qualifier(const ConstValue& sql_value,
                                              const SchemaCatalog& catalog, Mode mode,
                                              const SourceSpan& span);

// Verification of one getter/setter call given the receiver qualifier and
// the already-evaluated argument values. `index_value` is the first
// argument's constant value; `name_is_string` tells a by-name getter from a
// by-index one.
struct AccessCheck {
    std::vector<Diagnostic> diagnostics;
    bool counted_checked = false;
    bool counted_out_of_scope = false;
    bool counted_unchecked = false;
};

AccessCheck verify_setter(const SqlQualifier& receiver, JavaAccessor accessor,
                          const ConstValue& index_value, const ConversionTable& conversions,
                          Mode mode, bool supported_as_warning, const SourceSpan& span);

AccessCheck verify_getter(const SqlQualifier& receiver, JavaAccessor accessor,
                          bool name_is_string, const ConstValue& arg_value,
                          const ConversionTable& conversions, Mode mode,
                          bool supported_as_warning, const SourceSpan& span);

} // namespace oopsie
