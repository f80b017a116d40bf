#pragma once

// Front end for the analyzed Java subset: AST with source spans, per-method
// variable slots, database API call classification, and control-flow graphs.

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "oopsie/source.hpp"
#include "oopsie/typemap.hpp"

namespace oopsie {

enum class JavaType {
    Int,
    Long,
    Short,
    Float,
    Double,
    Boolean,
    String,
    Connection,
    Statement,
    PreparedStatement,
    ResultSet,
    Date,
    Time,
    Timestamp,
    BigDecimal,
    Void,
    Other,
};

std::string_view java_type_name(JavaType t);
bool is_api_type(JavaType t);          // Statement / PreparedStatement / ResultSet
bool is_tracked_value_type(JavaType t);  // String or int, the constant domains

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
    enum class Kind { StringLit, IntLit, BoolLit, NullLit, VarRef, Unary, Binary, Call };
    enum class UnOp { PreInc, PreDec, PostInc, PostDec, Not, Neg };
    enum class BinOp { Add, Sub, Eq, Ne, Lt, Le, Gt, Ge, AndAnd, OrOr };

    Kind kind = Kind::NullLit;
    SourceSpan span;

    std::string str_value;   // StringLit
    long long int_value = 0; // IntLit
    bool bool_value = false; // BoolLit

    int slot = -1;           // VarRef

    UnOp un_op = UnOp::Not;
    BinOp bin_op = BinOp::Add;
    ExprPtr lhs, rhs;        // Binary operands; Unary operand in lhs

    // Call
    bool has_receiver = false;
    int recv_slot = -1;        // resolved local/parameter, -1 if not a local
    std::string recv_name;     // receiver identifier as written (may be a type name)
    std::string method;
    std::vector<ExprPtr> args;

    JavaType static_type = JavaType::Other;
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Stmt {
    enum class Kind { LocalDecl, Assign, CompoundAdd, ExprStmt, If, While, Return };

    Kind kind = Kind::ExprStmt;
    SourceSpan span;

    int slot = -1;                 // LocalDecl / Assign / CompoundAdd target
    ExprPtr expr;                  // initializer / value / condition / return value
    std::vector<StmtPtr> then_body, else_body;  // If
    std::vector<StmtPtr> loop_body;             // While
    bool has_else = false;
};

struct VarSlot {
    std::string name;
    JavaType type = JavaType::Other;
    std::string type_text;  // declared type as written (renderer keeps it)
    bool is_param = false;
    SourceSpan span;
};

struct AnnotationDecl {
    std::string raw;  // e.g. `@Sql(in = {...}, out = {...})`
    SourceSpan span;
};

struct Param {
    std::string name;
    JavaType type = JavaType::Other;
    std::string type_text;
    std::optional<AnnotationDecl> annotation;
};

struct Method {
    std::string name;
    JavaType return_type = JavaType::Void;
    std::string return_type_text = "void";
    std::optional<AnnotationDecl> return_annotation;
    std::vector<Param> params;
    std::vector<VarSlot> slots;  // parameters first, then locals in declaration order
    std::vector<StmtPtr> body;
    bool analyzable = true;
    SourceSpan span;
};

struct SubsetViolation {
    std::string construct;
    std::string method;  // enclosing method, empty for class-level constructs
    SourceSpan span;
};

struct ClassDecl {
    std::string name;
    std::vector<Method> methods;
    SourceSpan span;
};

struct Ast {
    std::string file;
    std::vector<ClassDecl> classes;
    std::vector<SubsetViolation> violations;

    int statement_count() const;  // simple statements across all methods
    int api_call_count() const;   // calls classified as something other than Other
};

struct JavaParseError : std::runtime_error {
    JavaParseError(SourceSpan span, std::string message)
        : std::runtime_error(std::move(message)), span(std::move(span)) {}
    SourceSpan span;
};

// Parses a compilation unit. Constructs outside the subset are recorded as
// violations and the enclosing method is marked unanalyzable; unrecoverable
// input throws JavaParseError.
Ast parse_java(std::string_view source, std::string file);

// Canonical source for an AST; parse(render(parse(x))) is structurally
// identical to parse(x) on the subset.
std::string render_java(const Ast& ast);

// Classification of the modeled database API, keyed by declared receiver
// type and method simple name. A call may both create a statement from its
// SQL argument and retrieve the result set (Statement.executeQuery).
struct ApiCallInfo {
    bool creates_sql_statement = false;
    int sql_arg_index = -1;
    bool retrieves_result_set = false;
    bool executes_with_sql = false;
    std::optional<JavaAccessor> setter;
    std::optional<JavaAccessor> getter;
    bool cursor_next = false;
    JavaType result_type = JavaType::Other;

    bool is_other() const {
        return !creates_sql_statement && !retrieves_result_set && !executes_with_sql &&
               !setter && !getter && !cursor_next;
    }
};

ApiCallInfo classify_call(JavaType receiver, std::string_view method);

// Control-flow graph: basic blocks of simple statements, an optional guard
// expression terminating a branching block, single entry and single exit.
struct Cfg {
    struct Block {
        std::vector<const Stmt*> stmts;
        const Expr* guard = nullptr;  // succs[0] taken when true, succs[1] when false
        std::vector<int> succs;
        std::vector<int> preds;
    };
    std::vector<Block> blocks;
    int entry = 0;
    int exit = 0;
};

Cfg build_cfg(const Method& method);

} // namespace oopsie
