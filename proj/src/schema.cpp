#include "oopsie/schema.hpp"

#include <algorithm>
#include <sstream>

#include "sql_lexer.hpp"

namespace oopsie {

namespace {

using sqllex::TokKind;
using sqllex::Token;

const std::pair<std::string_view, SqlKind> kKindNames[] = {
    {"char", SqlKind::Char},         {"varchar", SqlKind::Varchar},
    {"integer", SqlKind::Integer},   {"bigint", SqlKind::Bigint},
    {"smallint", SqlKind::Smallint}, {"boolean", SqlKind::Boolean},
    {"date", SqlKind::Date},         {"time", SqlKind::Time},
    {"timestamp", SqlKind::Timestamp},
    {"decimal", SqlKind::Decimal},   {"numeric", SqlKind::Numeric},
    {"double", SqlKind::Double},     {"real", SqlKind::Real},
};

[[noreturn]] void syntax_error(std::size_t pos, const std::string& what) {
    throw SchemaError(SchemaError::Kind::Syntax, pos, "DDL syntax error at offset " +
                                                          std::to_string(pos) + ": " + what);
}

class DdlParser {
public:
    explicit DdlParser(std::string_view text) : toks_(sqllex::scan(text)) {}

    std::map<std::string, Table> parse() {
        std::map<std::string, Table> tables;
        while (!at_end()) {
            std::size_t name_pos = cur().position;
            Table table = parse_create_table();
            std::string key = fold_ident(table.name);
            if (tables.count(key)) {
                throw SchemaError(SchemaError::Kind::DuplicateTable, name_pos,
                                  "duplicate table '" + table.name + "'");
            }
            tables.emplace(std::move(key), std::move(table));
        }
        return tables;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    bool at_end() const { return cur().kind == TokKind::End; }
    void advance() { ++pos_; }

    bool is_keyword(std::string_view kw) const {
        return cur().kind == TokKind::Ident && fold_ident(cur().text) == kw;
    }

    void expect_keyword(std::string_view kw) {
        if (!is_keyword(kw)) syntax_error(cur().position, "expected " + std::string(kw));
        advance();
    }

    void expect_punct(std::string_view p) {
        if (cur().kind != TokKind::Punct || cur().text != p)
            syntax_error(cur().position, "expected '" + std::string(p) + "'");
        advance();
    }

    std::string expect_ident(const char* what) {
        if (cur().kind != TokKind::Ident) syntax_error(cur().position, std::string("expected ") + what);
        std::string name = cur().text;
        advance();
        return name;
    }

    int expect_int() {
        if (cur().kind != TokKind::Number || cur().text.find('.') != std::string::npos)
            syntax_error(cur().position, "expected integer");
        int value = std::stoi(cur().text);
        advance();
        return value;
    }

    Table parse_create_table() {
        expect_keyword("create");
        expect_keyword("table");
        Table table;
        table.name = expect_ident("table name");
        expect_punct("(");
        while (true) {
            parse_column(table);
            if (cur().kind == TokKind::Punct && cur().text == ",") {
                advance();
                continue;
            }
            break;
        }
        expect_punct(")");
        expect_punct(";");
        return table;
    }

    void parse_column(Table& table) {
        Column col;
        std::size_t name_pos = cur().position;
        col.name = expect_ident("column name");
        col.type = parse_type();
        parse_constraints(col);
        for (const Column& existing : table.columns) {
            if (ident_equal(existing.name, col.name)) {
                throw SchemaError(SchemaError::Kind::DuplicateColumn, name_pos,
                                  "duplicate column '" + col.name + "' in table '" + table.name + "'");
            }
        }
        table.columns.push_back(std::move(col));
    }

    SqlScalarType parse_type() {
        if (cur().kind != TokKind::Ident) syntax_error(cur().position, "expected type name");
        std::size_t type_pos = cur().position;
        std::string token = cur().text;
        std::optional<SqlKind> kind = sql_kind_from_token(token);
        if (!kind) {
            throw SchemaError(SchemaError::Kind::UnsupportedType, type_pos,
                              "unsupported column type '" + token + "'");
        }
        advance();
        SqlScalarType type = make_sql_type(*kind);
        if (cur().kind == TokKind::Punct && cur().text == "(") {
            std::size_t paren_pos = cur().position;
            advance();
            int first = expect_int();
            std::optional<int> second;
            if (cur().kind == TokKind::Punct && cur().text == ",") {
                advance();
                second = expect_int();
            }
            expect_punct(")");
            switch (type.kind) {
            case SqlKind::Char:
            case SqlKind::Varchar:
                if (second) syntax_error(paren_pos, "length takes a single integer");
                if (first <= 0) syntax_error(paren_pos, "length must be positive");
                type.length = first;
                break;
            case SqlKind::Decimal:
            case SqlKind::Numeric:
                if (first < 0 || (second && *second < 0))
                    syntax_error(paren_pos, "precision/scale must be non-negative");
                type.precision = first;
                type.scale = second;
                break;
            default:
                syntax_error(paren_pos, "type '" + token + "' does not take parameters");
            }
        }
        return type;
    }

    void parse_constraints(Column& col) {
        while (cur().kind == TokKind::Ident) {
            std::string kw = fold_ident(cur().text);
            if (kw == "not") {
                advance();
                expect_keyword("null");
                col.nullable = false;
            } else if (kw == "primary") {
                advance();
                expect_keyword("key");
            } else if (kw == "default") {
                advance();
                if (cur().kind == TokKind::Number || cur().kind == TokKind::String) {
                    advance();
                } else if (cur().kind == TokKind::Ident) {
                    // NULL, TRUE, FALSE and similar keyword literals
                    advance();
                } else {
                    syntax_error(cur().position, "expected literal after DEFAULT");
                }
            } else {
                syntax_error(cur().position, "unexpected token '" + cur().text + "' in column definition");
            }
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace

std::string_view to_string(SqlKind kind) {
    switch (kind) {
    case SqlKind::Char: return "CHAR";
    case SqlKind::Varchar: return "VARCHAR";
    case SqlKind::Integer: return "INTEGER";
    case SqlKind::Bigint: return "BIGINT";
    case SqlKind::Smallint: return "SMALLINT";
    case SqlKind::Boolean: return "BOOLEAN";
    case SqlKind::Date: return "DATE";
    case SqlKind::Time: return "TIME";
    case SqlKind::Timestamp: return "TIMESTAMP";
    case SqlKind::Decimal: return "DECIMAL";
    case SqlKind::Numeric: return "NUMERIC";
    case SqlKind::Double: return "DOUBLE";
    case SqlKind::Real: return "REAL";
    }
    return "?";
}

std::optional<SqlKind> sql_kind_from_token(std::string_view token) {
    std::string folded = fold_ident(token);
    // common synonyms, normalized at parse time
    if (folded == "int") return SqlKind::Integer;
    if (folded == "bool") return SqlKind::Boolean;
    for (const auto& [name, kind] : kKindNames) {
        if (folded == name) return kind;
    }
    return std::nullopt;
}

std::string fold_ident(std::string_view ident) {
    std::string out(ident);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool ident_equal(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    }
    return true;
}

SqlScalarType make_sql_type(SqlKind kind) {
    SqlScalarType type;
    type.kind = kind;
    return type;
}

std::string render_sql_type(const SqlScalarType& type) {
    std::string out(to_string(type.kind));
    if (type.length) {
        out += "(" + std::to_string(*type.length) + ")";
    } else if (type.precision) {
        out += "(" + std::to_string(*type.precision);
        if (type.scale) out += "," + std::to_string(*type.scale);
        out += ")";
    }
    return out;
}

bool structurally_equal(const SqlScalarType& a, const SqlScalarType& b) {
    return a.kind == b.kind && a.length == b.length && a.precision == b.precision &&
           a.scale == b.scale;
}

const Column* Table::find_column(std::string_view name) const {
    for (const Column& col : columns) {
        if (ident_equal(col.name, name)) return &col;
    }
    return nullptr;
}

int Table::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (ident_equal(columns[i].name, name)) return static_cast<int>(i) + 1;
    }
    return 0;
}

const Table* SchemaCatalog::lookup_table(std::string_view name) const {
    auto it = tables_.find(fold_ident(name));
    return it == tables_.end() ? nullptr : &it->second;
}

SchemaCatalog load_schema(std::string_view ddl_text) {
    SchemaCatalog catalog;
    catalog.tables_ = DdlParser(ddl_text).parse();
    return catalog;
}

std::string render_ddl(const SchemaCatalog& catalog) {
    std::ostringstream out;
    for (const auto& [key, table] : catalog.tables()) {
        out << "CREATE TABLE " << table.name << " (\n";
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            const Column& col = table.columns[i];
            out << "  " << col.name << " " << render_sql_type(col.type);
            if (!col.nullable) out << " NOT NULL";
            if (i + 1 < table.columns.size()) out << ",";
            out << "\n";
        }
        out << ");\n";
    }
    return out.str();
}

bool catalogs_equal(const SchemaCatalog& a, const SchemaCatalog& b) {
    if (a.size() != b.size()) return false;
    for (const auto& [key, table] : a.tables()) {
        const Table* other = b.lookup_table(table.name);
        if (!other || other->name != table.name) return false;
        if (other->columns.size() != table.columns.size()) return false;
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            const Column& x = table.columns[i];
            const Column& y = other->columns[i];
            if (x.name != y.name || !structurally_equal(x.type, y.type) ||
                x.nullable != y.nullable)
                return false;
        }
    }
    return true;
}

} // namespace oopsie
