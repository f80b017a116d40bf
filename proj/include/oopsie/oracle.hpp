#pragma once

// Test-facing interpreter: runs subset programs against an in-memory
// database, modeling the getter/setter runtime semantics. Every conditional
// is explored both ways and loops unroll up to a path budget, so the result
// is the ground truth over all bounded execution paths. Expected types come
// from a naive schema walk that is deliberately independent of the SQL
// front end; only the conversion table is shared with the checker.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "oopsie/javafront.hpp"
#include "oopsie/schema.hpp"
#include "oopsie/typemap.hpp"

namespace oopsie {

using SqlValue = std::variant<std::monostate, long long, double, std::string, bool>;

struct DbRow {
    std::vector<SqlValue> cells;
};

struct MiniDb {
    const SchemaCatalog* catalog = nullptr;
    std::map<std::string, std::vector<DbRow>> rows;  // keyed by folded table name
};

// `table: v1, v2, ...` per line, strings in single quotes, NULL for nulls.
MiniDb load_rows(const SchemaCatalog& catalog, std::string_view rows_text);

// Prop. 1 exception categories:
//   1 malformed SQL / schema mismatch at prepare or execute
//   2 setter with an invalid parameter index
//   3 getter with an invalid column name or index
//   4 getter/setter conversion that is not recommended
struct ModeledException {
    int category = 0;
    SourceSpan span;
    std::string detail;
};

struct PathResult {
    std::vector<ModeledException> exceptions;  // at most one: the first offending call
    bool hit_limit = false;                    // a loop could have continued past the budget
};

struct OracleResult {
    std::vector<PathResult> paths;
    int limit_hits = 0;
    // operations the oracle cannot model concretely (unknown SQL strings or
    // indices, aggregates); loud so tests never silently pass vacuously
    std::vector<std::string> unmodeled;

    bool any_exception() const {
        for (const PathResult& p : paths) {
            if (!p.exceptions.empty()) return true;
        }
        return false;
    }
};

struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Runs every entry method (methods without statement/result-set parameters)
// of every class. Same-class helper calls are interpreted.
OracleResult run_program(const Ast& program, const MiniDb& db,
                         const ConversionTable& conversions, int path_budget = 4);

// `.expect` sidecar: `category line` pairs, `#` comments.
std::vector<std::pair<int, int>> parse_expect(std::string_view text);

} // namespace oopsie
