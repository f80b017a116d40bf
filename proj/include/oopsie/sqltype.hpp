#pragma once

// The SQL qualifier lattice attached to statement and result-set variables:
// Unknown (top), Sql(in, out), Unsupported, Bottom — with prefix subtyping
// on the out list and least upper bounds for join points.

#include <stdexcept>
#include <string>
#include <string_view>

#include "oopsie/sqlfront.hpp"

namespace oopsie {

struct SqlQualifier {
    enum class Kind { Unknown, Sql, Unsupported, Bottom };

    Kind kind = Kind::Unknown;
    QuerySignature sig;  // meaningful only when kind == Sql

    static SqlQualifier unknown() { return {Kind::Unknown, {}}; }
    static SqlQualifier unsupported() { return {Kind::Unsupported, {}}; }
    static SqlQualifier bottom() { return {Kind::Bottom, {}}; }
    static SqlQualifier sql(QuerySignature sig) { return {Kind::Sql, std::move(sig)}; }

    bool is_sql() const { return kind == Kind::Sql; }

    friend bool operator==(const SqlQualifier& a, const SqlQualifier& b) {
        if (a.kind != b.kind) return false;
        if (a.kind != Kind::Sql) return true;
        return signatures_equal(a.sig, b.sig);
    }
};

struct AnnotationError : std::runtime_error {
    enum class Kind { Syntax, UnknownType };

    AnnotationError(Kind kind, std::size_t position, std::string message)
        : std::runtime_error(std::move(message)), kind(kind), position(position) {}

    Kind kind;
    std::size_t position;
    std::string token;
};

// Parses `@Sql(in = {...}, out = {...})` with the in list optional; each out
// entry is `"TYPE name"` or `"TYPE"`. Empty brace lists are accepted so every
// signature has a written form.
SqlQualifier parse_sql_annotation(std::string_view text);

// Canonical annotation text; @SqlUnknown/@SqlUnsupported/@SqlBottom for the
// non-Sql variants. parse_sql_annotation(render_qualifier(q)) == q for Sql q.
std::string render_qualifier(const SqlQualifier& q);

// a <= b: Bottom below everything, Unknown above everything, Unsupported
// comparable only with itself and the two extremes. Sql-to-Sql requires
// equal in lists and b.out a prefix of a.out.
bool is_subtype(const SqlQualifier& a, const SqlQualifier& b);

// Least upper bound; Sql values with equal in lists meet at the longest
// common prefix of their out lists.
SqlQualifier lub(const SqlQualifier& a, const SqlQualifier& b);

} // namespace oopsie
