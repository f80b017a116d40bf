#pragma once

// CRUD SQL front end: parses statements with `?` placeholders, validates
// them against the schema catalog, and derives the in/out signature.

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "oopsie/schema.hpp"

namespace oopsie {

enum class SqlStmtKind { Select, Insert, Update, Delete };

// Operand of a predicate, a VALUES entry, or a SET right-hand side.
struct SqlOperand {
    enum class Kind { Column, Placeholder, Literal, Arith };
    Kind kind = Kind::Literal;
    std::string column;                   // Column
    int ordinal = 0;                      // Placeholder (1-based, textual order)
    std::vector<int> inner_placeholders;  // Arith: ordinals buried in arithmetic
};

struct SqlComparison {
    enum class Op { Eq, Ne, Lt, Le, Gt, Ge, Like, IsNull, IsNotNull, Between, In };
    Op op = Op::Eq;
    SqlOperand lhs;
    std::vector<SqlOperand> rhs;  // 1 for binary ops, 2 for BETWEEN, n for IN
};

struct SqlPred {
    enum class Kind { And, Or, Not, Leaf };
    Kind kind = Kind::Leaf;
    std::unique_ptr<SqlPred> a;
    std::unique_ptr<SqlPred> b;
    SqlComparison leaf;
};

struct SqlAst {
    SqlStmtKind kind = SqlStmtKind::Select;
    std::string table;

    bool select_star = false;
    std::vector<std::string> select_columns;

    std::vector<std::string> insert_columns;  // empty when the list is omitted
    bool insert_columns_listed = false;
    std::vector<SqlOperand> insert_values;

    std::vector<std::pair<std::string, SqlOperand>> set_assignments;

    std::unique_ptr<SqlPred> where;
    int placeholder_count = 0;
};

struct OutColumn {
    std::string name;
    SqlScalarType type;
};

struct QuerySignature {
    std::vector<SqlScalarType> in;  // one entry per `?`, in textual order
    std::vector<OutColumn> out;     // empty for INSERT/UPDATE/DELETE
};

bool signatures_equal(const QuerySignature& a, const QuerySignature& b);

struct SqlError : std::runtime_error {
    enum class Kind {
        Syntax,               // malformed text: typo-class problems
        Unsupported,          // recognized SQL the dialect does not cover
        UnknownTable,
        UnknownColumn,
        ArityMismatch,        // INSERT column list vs. VALUES count
        UntypablePlaceholder  // no schema anchor assigns the `?` a type
    };

    SqlError(Kind kind, std::size_t position, std::string message)
        : std::runtime_error(std::move(message)), kind(kind), position(position) {}

    // The statement can still run on a real system; the dialect just does
    // not model it. Distinguishes dialect gaps from typos.
    bool is_dialect_gap() const {
        return kind == Kind::Unsupported || kind == Kind::UntypablePlaceholder;
    }

    Kind kind;
    std::size_t position = 0;
    std::string token;     // offending token / table / column, if any
    int ordinal = 0;       // UntypablePlaceholder
    int expected_count = 0, actual_count = 0;  // ArityMismatch
};

// Parses one statement of the subset (keywords case-insensitive, optional
// trailing semicolon). Throws SqlError with Kind::Syntax or Kind::Unsupported.
SqlAst parse_sql(std::string_view text);

// Resolves the AST against the catalog and derives the signature.
// Placeholder typing: `col OP ?` / `? OP col` take the column type, likewise
// BETWEEN/IN and INSERT/UPDATE positions; anything else is untypable.
QuerySignature analyze_query(const SqlAst& ast, const SchemaCatalog& catalog);

// `?` tokens outside string literals; total over arbitrary text.
int placeholder_count(std::string_view text);

} // namespace oopsie
