#pragma once

// Database schema (the data dictionary): SQL scalar types, tables with
// ordered columns, and the DDL loader that produces an immutable catalog.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace oopsie {

enum class SqlKind {
    Char,
    Varchar,
    Integer,
    Bigint,
    Smallint,
    Boolean,
    Date,
    Time,
    Timestamp,
    Decimal,
    Numeric,
    Double,
    Real,
};

std::string_view to_string(SqlKind kind);
std::optional<SqlKind> sql_kind_from_token(std::string_view token);

// ASCII case folding used for every identifier comparison in the tool.
std::string fold_ident(std::string_view ident);
bool ident_equal(std::string_view a, std::string_view b);

struct SqlScalarType {
    SqlKind kind = SqlKind::Integer;
    std::optional<int> length;     // CHAR / VARCHAR only
    std::optional<int> precision;  // DECIMAL / NUMERIC only
    std::optional<int> scale;      // DECIMAL / NUMERIC only

    // Equality is kind equality; length/precision never affect conversion
    // checking or qualifier comparison.
    friend bool operator==(const SqlScalarType& a, const SqlScalarType& b) {
        return a.kind == b.kind;
    }
};

SqlScalarType make_sql_type(SqlKind kind);
std::string render_sql_type(const SqlScalarType& type);

// Structural comparison (kind plus length/precision/scale); used by the
// DDL round-trip tests, not by the checker.
bool structurally_equal(const SqlScalarType& a, const SqlScalarType& b);

struct Column {
    std::string name;
    SqlScalarType type;
    bool nullable = true;
};

struct Table {
    std::string name;
    std::vector<Column> columns;  // declaration order; drives SELECT * expansion

    const Column* find_column(std::string_view name) const;
    int column_index(std::string_view name) const;  // 1-based, 0 if absent
};

class SchemaCatalog {
public:
    const Table* lookup_table(std::string_view name) const;
    const std::map<std::string, Table>& tables() const { return tables_; }
    bool empty() const { return tables_.empty(); }
    std::size_t size() const { return tables_.size(); }

private:
    friend SchemaCatalog load_schema(std::string_view ddl_text);
    std::map<std::string, Table> tables_;  // keyed by case-folded name
};

struct SchemaError : std::runtime_error {
    enum class Kind { Syntax, DuplicateTable, DuplicateColumn, UnsupportedType };

    SchemaError(Kind kind, std::size_t position, std::string message)
        : std::runtime_error(std::move(message)), kind(kind), position(position) {}

    Kind kind;
    std::size_t position;  // byte offset into the DDL text
};

// Parses a sequence of `CREATE TABLE name (col type [constraints], ...);`
// statements. `--` comments run to end of line. NOT NULL is recorded;
// PRIMARY KEY and DEFAULT <literal> are parsed and ignored.
SchemaCatalog load_schema(std::string_view ddl_text);

// Canonical DDL for a catalog; reloading the result yields an equal catalog.
std::string render_ddl(const SchemaCatalog& catalog);

bool catalogs_equal(const SchemaCatalog& a, const SchemaCatalog& b);

} // namespace oopsie
