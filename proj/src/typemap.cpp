#include "oopsie/typemap.hpp"

#include <sstream>

namespace oopsie {

namespace {

using A = JavaAccessor;

constexpr SqlKind kAllKinds[] = {
    SqlKind::Char,    SqlKind::Varchar,  SqlKind::Integer, SqlKind::Bigint,
    SqlKind::Smallint, SqlKind::Boolean, SqlKind::Date,    SqlKind::Time,
    SqlKind::Timestamp, SqlKind::Decimal, SqlKind::Numeric, SqlKind::Double,
    SqlKind::Real,
};

constexpr JavaAccessor kAllAccessors[] = {
    A::Int,  A::Long,   A::Short,     A::Float, A::Double,    A::Boolean,
    A::String, A::Date, A::Time,      A::Timestamp, A::BigDecimal,
};

// JDBC 4.3 getter/setter capability matrix restricted to the modeled SQL
// kinds and accessor methods. The first row set is recommended, the second
// supported; the paper's excerpt pins CHAR/VARCHAR/INTEGER/BIGINT getters.
struct DefaultRow {
    SqlKind kind;
    std::set<JavaAccessor> get_rec, get_sup, set_rec, set_sup;
};

const std::set<JavaAccessor> kNumericsAndString = {
    A::Short, A::Int, A::Long, A::Float, A::Double, A::BigDecimal, A::Boolean, A::String};

std::set<JavaAccessor> minus(std::set<JavaAccessor> base, const std::set<JavaAccessor>& drop) {
    for (JavaAccessor a : drop) base.erase(a);
    return base;
}

const DefaultRow kDefaults[] = {
    {SqlKind::Char,
     {A::String},
     {A::Short, A::Int, A::Long, A::Float, A::Double, A::BigDecimal, A::Boolean, A::Date,
      A::Time, A::Timestamp},
     {A::String},
     {A::Short, A::Int, A::Long, A::Float, A::Double, A::BigDecimal, A::Boolean, A::Date,
      A::Time, A::Timestamp}},
    {SqlKind::Varchar,
     {A::String},
     {A::Short, A::Int, A::Long, A::Float, A::Double, A::BigDecimal, A::Boolean, A::Date,
      A::Time, A::Timestamp},
     {A::String},
     {A::Short, A::Int, A::Long, A::Float, A::Double, A::BigDecimal, A::Boolean, A::Date,
      A::Time, A::Timestamp}},
    {SqlKind::Integer,
     {A::Int, A::Long},
     minus(kNumericsAndString, {A::Int, A::Long}),
     {A::Int},
     minus(kNumericsAndString, {A::Int})},
    {SqlKind::Bigint,
     {A::Long},
     minus(kNumericsAndString, {A::Long}),
     {A::Long},
     minus(kNumericsAndString, {A::Long})},
    {SqlKind::Smallint,
     {A::Short},
     minus(kNumericsAndString, {A::Short}),
     {A::Short},
     minus(kNumericsAndString, {A::Short})},
    {SqlKind::Boolean,
     {A::Boolean},
     minus(kNumericsAndString, {A::Boolean}),
     {A::Boolean},
     minus(kNumericsAndString, {A::Boolean})},
    {SqlKind::Date,
     {A::Date},
     {A::String, A::Timestamp},
     {A::Date},
     {A::String, A::Timestamp}},
    {SqlKind::Time,
     {A::Time},
     {A::String, A::Timestamp},
     {A::Time},
     {A::String, A::Timestamp}},
    {SqlKind::Timestamp,
     {A::Timestamp},
     {A::String, A::Date, A::Time},
     {A::Timestamp},
     {A::String, A::Date, A::Time}},
    {SqlKind::Decimal,
     {A::BigDecimal},
     minus(kNumericsAndString, {A::BigDecimal}),
     {A::BigDecimal},
     minus(kNumericsAndString, {A::BigDecimal})},
    {SqlKind::Numeric,  // conversion-equivalent to DECIMAL
     {A::BigDecimal},
     minus(kNumericsAndString, {A::BigDecimal}),
     {A::BigDecimal},
     minus(kNumericsAndString, {A::BigDecimal})},
    {SqlKind::Double,
     {A::Double},
     minus(kNumericsAndString, {A::Double}),
     {A::Double},
     minus(kNumericsAndString, {A::Double})},
    {SqlKind::Real,
     {A::Float},
     minus(kNumericsAndString, {A::Float}),
     {A::Float},
     minus(kNumericsAndString, {A::Float})},
};

std::string trim(std::string_view s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string_view::npos) return "";
    return std::string(s.substr(a, b - a + 1));
}

} // namespace

std::string_view accessor_name(JavaAccessor a) {
    switch (a) {
    case A::Int: return "int";
    case A::Long: return "long";
    case A::Short: return "short";
    case A::Float: return "float";
    case A::Double: return "double";
    case A::Boolean: return "boolean";
    case A::String: return "String";
    case A::Date: return "Date";
    case A::Time: return "Time";
    case A::Timestamp: return "Timestamp";
    case A::BigDecimal: return "BigDecimal";
    }
    return "?";
}

std::optional<JavaAccessor> accessor_from_name(std::string_view name) {
    for (JavaAccessor a : kAllAccessors) {
        if (accessor_name(a) == name) return a;
    }
    return std::nullopt;
}

std::string_view accessor_method_suffix(JavaAccessor a) {
    switch (a) {
    case A::Int: return "Int";
    case A::Long: return "Long";
    case A::Short: return "Short";
    case A::Float: return "Float";
    case A::Double: return "Double";
    case A::Boolean: return "Boolean";
    case A::String: return "String";
    case A::Date: return "Date";
    case A::Time: return "Time";
    case A::Timestamp: return "Timestamp";
    case A::BigDecimal: return "BigDecimal";
    }
    return "?";
}

ConversionTable::Entry& ConversionTable::entry(Direction dir, SqlKind kind) {
    auto idx = static_cast<int>(kind);
    return dir == Direction::Get ? getters_[idx] : setters_[idx];
}

const ConversionTable::Entry& ConversionTable::entry(Direction dir, SqlKind kind) const {
    auto idx = static_cast<int>(kind);
    return dir == Direction::Get ? getters_[idx] : setters_[idx];
}

Conversion ConversionTable::classify(Direction dir, const SqlScalarType& sql,
                                     JavaAccessor java) const {
    const Entry& e = entry(dir, sql.kind);
    if (e.recommended.count(java)) return Conversion::Recommended;
    if (e.supported.count(java)) return Conversion::SupportedOnly;
    return Conversion::Disallowed;
}

const std::set<JavaAccessor>& ConversionTable::recommended(Direction dir, SqlKind kind) const {
    return entry(dir, kind).recommended;
}

const std::set<JavaAccessor>& ConversionTable::supported(Direction dir, SqlKind kind) const {
    return entry(dir, kind).supported;
}

void ConversionTable::set_recommended(Direction dir, SqlKind kind,
                                      std::set<JavaAccessor> accessors) {
    entry(dir, kind).recommended = std::move(accessors);
}

void ConversionTable::set_supported(Direction dir, SqlKind kind,
                                    std::set<JavaAccessor> accessors) {
    entry(dir, kind).supported = std::move(accessors);
}

void ConversionTable::enforce_disjoint() {
    for (SqlKind kind : kAllKinds) {
        for (Direction dir : {Direction::Get, Direction::Set}) {
            Entry& e = entry(dir, kind);
            for (JavaAccessor a : e.recommended) e.supported.erase(a);
        }
    }
}

const ConversionTable& default_conversion_table() {
    static const ConversionTable table = [] {
        ConversionTable t;
        for (const DefaultRow& row : kDefaults) {
            t.set_recommended(Direction::Get, row.kind, row.get_rec);
            t.set_supported(Direction::Get, row.kind, row.get_sup);
            t.set_recommended(Direction::Set, row.kind, row.set_rec);
            t.set_supported(Direction::Set, row.kind, row.set_sup);
        }
        t.enforce_disjoint();
        return t;
    }();
    return table;
}

ConversionTable load_conversion_table(std::optional<std::string_view> config) {
    ConversionTable table = default_conversion_table();
    if (!config) return table;

    std::istringstream in{std::string(*config)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;

        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(ConfigError::Kind::Syntax, line_no,
                              "line " + std::to_string(line_no) + ": expected 'key = accessors'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));

        std::size_t d1 = key.find('.');
        std::size_t d2 = key.find('.', d1 == std::string::npos ? d1 : d1 + 1);
        if (d1 == std::string::npos || d2 == std::string::npos)
            throw ConfigError(ConfigError::Kind::Syntax, line_no,
                              "line " + std::to_string(line_no) +
                                  ": key must be direction.level.SQLKIND");
        std::string dir_text = key.substr(0, d1);
        std::string level_text = key.substr(d1 + 1, d2 - d1 - 1);
        std::string kind_text = key.substr(d2 + 1);

        Direction dir;
        if (dir_text == "getter") dir = Direction::Get;
        else if (dir_text == "setter") dir = Direction::Set;
        else
            throw ConfigError(ConfigError::Kind::Syntax, line_no,
                              "line " + std::to_string(line_no) + ": direction must be getter or setter");

        bool rec;
        if (level_text == "recommended") rec = true;
        else if (level_text == "supported") rec = false;
        else
            throw ConfigError(ConfigError::Kind::Syntax, line_no,
                              "line " + std::to_string(line_no) +
                                  ": level must be recommended or supported");

        std::optional<SqlKind> kind = sql_kind_from_token(kind_text);
        if (!kind)
            throw ConfigError(ConfigError::Kind::UnknownSqlKind, line_no,
                              "line " + std::to_string(line_no) + ": unknown SQL kind '" +
                                  kind_text + "'");

        std::set<JavaAccessor> accessors;
        std::size_t start = 0;
        while (start <= value.size()) {
            std::size_t comma = value.find(',', start);
            std::string item = trim(value.substr(start, comma == std::string::npos
                                                              ? std::string::npos
                                                              : comma - start));
            if (!item.empty()) {
                std::optional<JavaAccessor> a = accessor_from_name(item);
                if (!a)
                    throw ConfigError(ConfigError::Kind::UnknownJavaAccessor, line_no,
                                      "line " + std::to_string(line_no) +
                                          ": unknown Java accessor '" + item + "'");
                accessors.insert(*a);
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
        }

        if (rec)
            table.set_recommended(dir, *kind, std::move(accessors));
        else
            table.set_supported(dir, *kind, std::move(accessors));
    }
    table.enforce_disjoint();
    return table;
}

std::string render_conversion_table(const ConversionTable& table) {
    std::ostringstream out;
    auto emit = [&out](const char* dir_name, const char* level, SqlKind kind,
                       const std::set<JavaAccessor>& accessors) {
        out << dir_name << "." << level << "." << to_string(kind) << " =";
        bool first = true;
        for (JavaAccessor a : accessors) {
            out << (first ? " " : ",") << accessor_name(a);
            first = false;
        }
        out << "\n";
    };
    for (SqlKind kind : kAllKinds) {
        emit("getter", "recommended", kind, table.recommended(Direction::Get, kind));
        emit("getter", "supported", kind, table.supported(Direction::Get, kind));
    }
    for (SqlKind kind : kAllKinds) {
        emit("setter", "recommended", kind, table.recommended(Direction::Set, kind));
        emit("setter", "supported", kind, table.supported(Direction::Set, kind));
    }
    return out.str();
}

} // namespace oopsie
