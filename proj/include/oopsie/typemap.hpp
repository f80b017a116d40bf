#pragma once

// Conversion tables: which Java accessor types are recommended (and which
// merely supported) for each SQL scalar type, per direction.

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "oopsie/schema.hpp"

namespace oopsie {

enum class JavaAccessor {
    Int,
    Long,
    Short,
    Float,
    Double,
    Boolean,
    String,
    Date,
    Time,
    Timestamp,
    BigDecimal,
};

std::string_view accessor_name(JavaAccessor a);                    // "int", "String", ...
std::optional<JavaAccessor> accessor_from_name(std::string_view);  // inverse
std::string_view accessor_method_suffix(JavaAccessor a);           // "Int" as in getInt/setInt

enum class Direction { Get, Set };
enum class Conversion { Recommended, SupportedOnly, Disallowed };

class ConversionTable {
public:
    Conversion classify(Direction dir, const SqlScalarType& sql, JavaAccessor java) const;

    const std::set<JavaAccessor>& recommended(Direction dir, SqlKind kind) const;
    const std::set<JavaAccessor>& supported(Direction dir, SqlKind kind) const;

    void set_recommended(Direction dir, SqlKind kind, std::set<JavaAccessor> accessors);
    void set_supported(Direction dir, SqlKind kind, std::set<JavaAccessor> accessors);

    // recommended and supported are disjoint per (direction, kind)
    void enforce_disjoint();

private:
    struct Entry {
        std::set<JavaAccessor> recommended, supported;
    };
    Entry& entry(Direction dir, SqlKind kind);
    const Entry& entry(Direction dir, SqlKind kind) const;

    static constexpr int kKindCount = 13;
    Entry getters_[kKindCount];
    Entry setters_[kKindCount];
};

struct ConfigError : std::runtime_error {
    enum class Kind { Syntax, UnknownJavaAccessor, UnknownSqlKind };

    ConfigError(Kind kind, int line, std::string message)
        : std::runtime_error(std::move(message)), kind(kind), line(line) {}

    Kind kind;
    int line;
};

// The built-in default table (JDBC 4.3 conversion appendix).
const ConversionTable& default_conversion_table();

// Default table with per-(direction, level, kind) overrides from the
// line-oriented `direction.level.SQLKIND = accessor[,accessor...]` format.
ConversionTable load_conversion_table(std::optional<std::string_view> config);

// The table in the config format, one line per (direction, level, kind).
std::string render_conversion_table(const ConversionTable& table);

} // namespace oopsie
