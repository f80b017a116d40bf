#include "oopsie/sqlfront.hpp"

#include <set>

#include "sql_lexer.hpp"

namespace oopsie {

namespace {

using sqllex::TokKind;
using sqllex::Token;

// Keywords the grammar knows but the dialect does not model. Seeing one of
// these is a dialect gap, not a typo.
const std::set<std::string, std::less<>> kUnsupportedKeywords = {
    "join",  "inner", "left",  "right",  "outer", "cross", "on",
    "group", "order", "by",    "having", "limit", "offset",
    "union", "intersect", "except", "distinct", "with", "as", "exists",
};

const std::set<std::string, std::less<>> kAggregateNames = {
    "count", "sum", "avg", "min", "max",
};

[[noreturn]] void fail_syntax(std::size_t pos, const std::string& what, std::string token = "") {
    SqlError e(SqlError::Kind::Syntax, pos,
               "syntax error at offset " + std::to_string(pos) + ": " + what);
    e.token = std::move(token);
    throw e;
}

[[noreturn]] void fail_unsupported(std::size_t pos, const std::string& token) {
    SqlError e(SqlError::Kind::Unsupported, pos, "unsupported SQL construct '" + token + "'");
    e.token = token;
    throw e;
}

class SqlParser {
public:
    explicit SqlParser(std::string_view text) : toks_(sqllex::scan(text)) {}

    SqlAst parse() {
        SqlAst ast;
        if (is_keyword("select")) {
            parse_select(ast);
        } else if (is_keyword("insert")) {
            parse_insert(ast);
        } else if (is_keyword("update")) {
            parse_update(ast);
        } else if (is_keyword("delete")) {
            parse_delete(ast);
        } else if (cur().kind == TokKind::Ident) {
            std::string folded = fold_ident(cur().text);
            if (kUnsupportedKeywords.count(folded)) fail_unsupported(cur().position, cur().text);
            fail_syntax(cur().position, "expected SELECT, INSERT, UPDATE or DELETE, got '" +
                                            cur().text + "'", cur().text);
        } else {
            fail_syntax(cur().position, "expected a SQL statement");
        }
        if (cur().kind == TokKind::Punct && cur().text == ";") advance();
        if (cur().kind != TokKind::End) {
            if (cur().kind == TokKind::Ident &&
                kUnsupportedKeywords.count(fold_ident(cur().text)))
                fail_unsupported(cur().position, cur().text);
            fail_syntax(cur().position, "unexpected trailing token '" + cur().text + "'", cur().text);
        }
        ast.placeholder_count = next_ordinal_ - 1;
        return ast;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    const Token& peek() const { return toks_[std::min(pos_ + 1, toks_.size() - 1)]; }
    void advance() { ++pos_; }

    bool is_keyword(std::string_view kw) const {
        return cur().kind == TokKind::Ident && fold_ident(cur().text) == kw;
    }

    bool is_punct(std::string_view p) const {
        return cur().kind == TokKind::Punct && cur().text == p;
    }

    void expect_keyword(std::string_view kw) {
        if (!is_keyword(kw)) {
            if (cur().kind == TokKind::Ident &&
                kUnsupportedKeywords.count(fold_ident(cur().text)))
                fail_unsupported(cur().position, cur().text);
            fail_syntax(cur().position,
                        "expected " + std::string(kw) + ", got '" + cur().text + "'", cur().text);
        }
        advance();
    }

    void expect_punct(std::string_view p) {
        if (!is_punct(p))
            fail_syntax(cur().position, "expected '" + std::string(p) + "', got '" + cur().text + "'",
                        cur().text);
        advance();
    }

    std::string expect_plain_ident(const char* what) {
        if (cur().kind != TokKind::Ident)
            fail_syntax(cur().position, std::string("expected ") + what, cur().text);
        std::string folded = fold_ident(cur().text);
        if (kUnsupportedKeywords.count(folded)) fail_unsupported(cur().position, cur().text);
        std::string name = cur().text;
        advance();
        if (is_punct(".")) fail_unsupported(cur().position, "qualified name");
        return name;
    }

    void parse_select(SqlAst& ast) {
        ast.kind = SqlStmtKind::Select;
        expect_keyword("select");
        if (is_punct("*")) {
            ast.select_star = true;
            advance();
        } else {
            while (true) {
                if (cur().kind == TokKind::Ident) {
                    std::string folded = fold_ident(cur().text);
                    if (kAggregateNames.count(folded) && peek().kind == TokKind::Punct &&
                        peek().text == "(")
                        fail_unsupported(cur().position, cur().text);
                    if (kUnsupportedKeywords.count(folded)) fail_unsupported(cur().position, cur().text);
                    std::string name = cur().text;
                    advance();
                    if (is_punct("(")) fail_unsupported(cur().position, name);
                    if (is_punct(".")) fail_unsupported(cur().position, "qualified name");
                    if (cur().kind == TokKind::Ident && fold_ident(cur().text) == "as")
                        fail_unsupported(cur().position, "AS");
                    ast.select_columns.push_back(std::move(name));
                } else if (is_punct("?") || cur().kind == TokKind::Number ||
                           cur().kind == TokKind::String) {
                    fail_unsupported(cur().position, cur().kind == TokKind::Punct ? "?" : "expression");
                } else {
                    fail_syntax(cur().position, "expected column name", cur().text);
                }
                if (is_punct(",")) {
                    advance();
                    continue;
                }
                break;
            }
        }
        expect_keyword("from");
        ast.table = expect_plain_ident("table name");
        parse_optional_where(ast);
    }

    void parse_insert(SqlAst& ast) {
        ast.kind = SqlStmtKind::Insert;
        expect_keyword("insert");
        expect_keyword("into");
        ast.table = expect_plain_ident("table name");
        if (is_punct("(")) {
            advance();
            ast.insert_columns_listed = true;
            while (true) {
                ast.insert_columns.push_back(expect_plain_ident("column name"));
                if (is_punct(",")) {
                    advance();
                    continue;
                }
                break;
            }
            expect_punct(")");
        }
        expect_keyword("values");
        expect_punct("(");
        while (true) {
            ast.insert_values.push_back(parse_operand());
            if (is_punct(",")) {
                advance();
                continue;
            }
            break;
        }
        expect_punct(")");
        if (is_punct(",")) fail_unsupported(cur().position, "multi-row VALUES");
    }

    void parse_update(SqlAst& ast) {
        ast.kind = SqlStmtKind::Update;
        expect_keyword("update");
        ast.table = expect_plain_ident("table name");
        expect_keyword("set");
        while (true) {
            std::string col = expect_plain_ident("column name");
            expect_punct("=");
            ast.set_assignments.emplace_back(std::move(col), parse_operand());
            if (is_punct(",")) {
                advance();
                continue;
            }
            break;
        }
        parse_optional_where(ast);
    }

    void parse_delete(SqlAst& ast) {
        ast.kind = SqlStmtKind::Delete;
        expect_keyword("delete");
        expect_keyword("from");
        ast.table = expect_plain_ident("table name");
        parse_optional_where(ast);
    }

    void parse_optional_where(SqlAst& ast) {
        if (is_keyword("where")) {
            advance();
            ast.where = parse_or();
        }
    }

    std::unique_ptr<SqlPred> parse_or() {
        auto lhs = parse_and();
        while (is_keyword("or")) {
            advance();
            auto node = std::make_unique<SqlPred>();
            node->kind = SqlPred::Kind::Or;
            node->a = std::move(lhs);
            node->b = parse_and();
            lhs = std::move(node);
        }
        return lhs;
    }

    std::unique_ptr<SqlPred> parse_and() {
        auto lhs = parse_not();
        while (is_keyword("and")) {
            advance();
            auto node = std::make_unique<SqlPred>();
            node->kind = SqlPred::Kind::And;
            node->a = std::move(lhs);
            node->b = parse_not();
            lhs = std::move(node);
        }
        return lhs;
    }

    std::unique_ptr<SqlPred> parse_not() {
        if (is_keyword("not")) {
            advance();
            auto node = std::make_unique<SqlPred>();
            node->kind = SqlPred::Kind::Not;
            node->a = parse_not();
            return node;
        }
        return parse_primary();
    }

    std::unique_ptr<SqlPred> parse_primary() {
        if (is_punct("(")) {
            advance();
            auto node = parse_or();
            expect_punct(")");
            return node;
        }
        auto node = std::make_unique<SqlPred>();
        node->kind = SqlPred::Kind::Leaf;
        node->leaf = parse_comparison();
        return node;
    }

    SqlComparison parse_comparison() {
        SqlComparison cmp;
        cmp.lhs = parse_operand();
        if (is_keyword("between")) {
            advance();
            cmp.op = SqlComparison::Op::Between;
            cmp.rhs.push_back(parse_operand());
            expect_keyword("and");
            cmp.rhs.push_back(parse_operand());
            return cmp;
        }
        if (is_keyword("in")) {
            advance();
            cmp.op = SqlComparison::Op::In;
            expect_punct("(");
            if (is_keyword("select")) fail_unsupported(cur().position, "subquery");
            while (true) {
                cmp.rhs.push_back(parse_operand());
                if (is_punct(",")) {
                    advance();
                    continue;
                }
                break;
            }
            expect_punct(")");
            return cmp;
        }
        if (is_keyword("like")) {
            advance();
            cmp.op = SqlComparison::Op::Like;
            cmp.rhs.push_back(parse_operand());
            return cmp;
        }
        if (is_keyword("is")) {
            advance();
            bool negated = false;
            if (is_keyword("not")) {
                advance();
                negated = true;
            }
            expect_keyword("null");
            cmp.op = negated ? SqlComparison::Op::IsNotNull : SqlComparison::Op::IsNull;
            return cmp;
        }
        if (cur().kind == TokKind::Punct) {
            const std::string& p = cur().text;
            if (p == "=") cmp.op = SqlComparison::Op::Eq;
            else if (p == "<>") cmp.op = SqlComparison::Op::Ne;
            else if (p == "<") cmp.op = SqlComparison::Op::Lt;
            else if (p == "<=") cmp.op = SqlComparison::Op::Le;
            else if (p == ">") cmp.op = SqlComparison::Op::Gt;
            else if (p == ">=") cmp.op = SqlComparison::Op::Ge;
            else fail_syntax(cur().position, "expected comparison operator", p);
            advance();
            cmp.rhs.push_back(parse_operand());
            return cmp;
        }
        fail_syntax(cur().position, "expected comparison operator", cur().text);
    }

    // operand := atom { (+|-|*|/) atom } — a chain degrades to Arith
    SqlOperand parse_operand() {
        SqlOperand op = parse_atom();
        bool arith = false;
        std::vector<int> inner;
        auto note = [&inner](const SqlOperand& o) {
            if (o.kind == SqlOperand::Kind::Placeholder) inner.push_back(o.ordinal);
            for (int ord : o.inner_placeholders) inner.push_back(ord);
        };
        while (cur().kind == TokKind::Punct &&
               (cur().text == "+" || cur().text == "-" || cur().text == "*" || cur().text == "/")) {
            if (!arith) {
                note(op);
                arith = true;
            }
            advance();
            note(parse_atom());
        }
        if (arith) {
            SqlOperand out;
            out.kind = SqlOperand::Kind::Arith;
            out.inner_placeholders = std::move(inner);
            return out;
        }
        return op;
    }

    SqlOperand parse_atom() {
        SqlOperand op;
        if (is_punct("?")) {
            op.kind = SqlOperand::Kind::Placeholder;
            op.ordinal = next_ordinal_++;
            advance();
            return op;
        }
        if (cur().kind == TokKind::Number || cur().kind == TokKind::String) {
            op.kind = SqlOperand::Kind::Literal;
            advance();
            return op;
        }
        if (cur().kind == TokKind::Ident) {
            std::string folded = fold_ident(cur().text);
            if (folded == "null" || folded == "true" || folded == "false") {
                op.kind = SqlOperand::Kind::Literal;
                advance();
                return op;
            }
            if (kUnsupportedKeywords.count(folded)) fail_unsupported(cur().position, cur().text);
            if (peek().kind == TokKind::Punct && peek().text == "(")
                fail_unsupported(cur().position, cur().text);
            op.kind = SqlOperand::Kind::Column;
            op.column = cur().text;
            advance();
            if (is_punct(".")) fail_unsupported(cur().position, "qualified name");
            return op;
        }
        fail_syntax(cur().position, "expected column, literal or '?'", cur().text);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int next_ordinal_ = 1;
};

[[noreturn]] void fail_unknown_table(const std::string& name) {
    SqlError e(SqlError::Kind::UnknownTable, 0, "unknown table '" + name + "'");
    e.token = name;
    throw e;
}

[[noreturn]] void fail_unknown_column(const std::string& table, const std::string& column) {
    SqlError e(SqlError::Kind::UnknownColumn, 0,
               "unknown column '" + column + "' in table '" + table + "'");
    e.token = column;
    throw e;
}

[[noreturn]] void fail_untypable(int ordinal) {
    SqlError e(SqlError::Kind::UntypablePlaceholder, 0,
               "placeholder " + std::to_string(ordinal) + " cannot be typed from the schema");
    e.ordinal = ordinal;
    throw e;
}

class SignatureBuilder {
public:
    SignatureBuilder(const SqlAst& ast, const SchemaCatalog& catalog) : ast_(ast) {
        table_ = catalog.lookup_table(ast.table);
        if (!table_) fail_unknown_table(ast.table);
        sig_.in.resize(static_cast<std::size_t>(ast.placeholder_count));
        typed_.resize(static_cast<std::size_t>(ast.placeholder_count), false);
    }

    QuerySignature build() {
        switch (ast_.kind) {
        case SqlStmtKind::Select: build_select(); break;
        case SqlStmtKind::Insert: build_insert(); break;
        case SqlStmtKind::Update: build_update(); break;
        case SqlStmtKind::Delete: break;
        }
        if (ast_.where) visit_pred(*ast_.where);
        for (std::size_t i = 0; i < typed_.size(); ++i) {
            if (!typed_[i]) fail_untypable(static_cast<int>(i) + 1);
        }
        return std::move(sig_);
    }

private:
    const SqlScalarType& resolve_column(const std::string& name) const {
        const Column* col = table_->find_column(name);
        if (!col) fail_unknown_column(table_->name, name);
        return col->type;
    }

    void add_out(const std::string& name, const SqlScalarType& type) {
        for (const OutColumn& existing : sig_.out) {
            if (ident_equal(existing.name, name))
                fail_unsupported(0, "duplicate result column '" + name + "'");
        }
        sig_.out.push_back({name, type});
    }

    void build_select() {
        if (ast_.select_star) {
            for (const Column& col : table_->columns) add_out(col.name, col.type);
        } else {
            for (const std::string& name : ast_.select_columns) add_out(name, resolve_column(name));
        }
    }

    void build_insert() {
        std::vector<SqlScalarType> slot_types;
        if (ast_.insert_columns_listed) {
            for (const std::string& name : ast_.insert_columns)
                slot_types.push_back(resolve_column(name));
        } else {
            for (const Column& col : table_->columns) slot_types.push_back(col.type);
        }
        if (slot_types.size() != ast_.insert_values.size()) {
            SqlError e(SqlError::Kind::ArityMismatch, 0,
                       "INSERT lists " + std::to_string(slot_types.size()) + " columns but " +
                           std::to_string(ast_.insert_values.size()) + " values");
            e.expected_count = static_cast<int>(slot_types.size());
            e.actual_count = static_cast<int>(ast_.insert_values.size());
            throw e;
        }
        for (std::size_t i = 0; i < ast_.insert_values.size(); ++i) {
            const SqlOperand& value = ast_.insert_values[i];
            if (value.kind == SqlOperand::Kind::Placeholder) {
                assign(value.ordinal, slot_types[i]);
            } else if (value.kind == SqlOperand::Kind::Column) {
                // bare identifier in VALUES is not a column reference
                fail_unsupported(0, "expression in VALUES");
            }
        }
    }

    void build_update() {
        for (const auto& [col, value] : ast_.set_assignments) {
            const SqlScalarType& type = resolve_column(col);
            if (value.kind == SqlOperand::Kind::Placeholder) assign(value.ordinal, type);
            if (value.kind == SqlOperand::Kind::Column) resolve_column(value.column);
        }
    }

    void assign(int ordinal, const SqlScalarType& type) {
        sig_.in[static_cast<std::size_t>(ordinal - 1)] = type;
        typed_[static_cast<std::size_t>(ordinal - 1)] = true;
    }

    void visit_pred(const SqlPred& pred) {
        switch (pred.kind) {
        case SqlPred::Kind::And:
        case SqlPred::Kind::Or:
            visit_pred(*pred.a);
            visit_pred(*pred.b);
            break;
        case SqlPred::Kind::Not:
            visit_pred(*pred.a);
            break;
        case SqlPred::Kind::Leaf:
            visit_leaf(pred.leaf);
            break;
        }
    }

    void visit_leaf(const SqlComparison& cmp) {
        using Op = SqlComparison::Op;
        // columns referenced anywhere must exist, independent of typing
        auto check_column = [this](const SqlOperand& op) {
            if (op.kind == SqlOperand::Kind::Column) resolve_column(op.column);
        };
        check_column(cmp.lhs);
        for (const SqlOperand& op : cmp.rhs) check_column(op);

        switch (cmp.op) {
        case Op::Eq:
        case Op::Ne:
        case Op::Lt:
        case Op::Le:
        case Op::Gt:
        case Op::Ge: {
            const SqlOperand& l = cmp.lhs;
            const SqlOperand& r = cmp.rhs[0];
            if (l.kind == SqlOperand::Kind::Column && r.kind == SqlOperand::Kind::Placeholder) {
                assign(r.ordinal, resolve_column(l.column));
            } else if (l.kind == SqlOperand::Kind::Placeholder &&
                       r.kind == SqlOperand::Kind::Column) {
                assign(l.ordinal, resolve_column(r.column));
            }
            break;
        }
        case Op::Between:
        case Op::In: {
            if (cmp.lhs.kind == SqlOperand::Kind::Column) {
                const SqlScalarType& type = resolve_column(cmp.lhs.column);
                for (const SqlOperand& op : cmp.rhs) {
                    if (op.kind == SqlOperand::Kind::Placeholder) assign(op.ordinal, type);
                }
            }
            break;
        }
        case Op::Like:
        case Op::IsNull:
        case Op::IsNotNull:
            // parsed, but contribute no placeholder typings
            break;
        }
    }

    const SqlAst& ast_;
    const Table* table_ = nullptr;
    QuerySignature sig_;
    std::vector<bool> typed_;
};

} // namespace

bool signatures_equal(const QuerySignature& a, const QuerySignature& b) {
    if (a.in.size() != b.in.size() || a.out.size() != b.out.size()) return false;
    for (std::size_t i = 0; i < a.in.size(); ++i) {
        if (!(a.in[i] == b.in[i])) return false;
    }
    for (std::size_t i = 0; i < a.out.size(); ++i) {
        if (!ident_equal(a.out[i].name, b.out[i].name) || !(a.out[i].type == b.out[i].type))
            return false;
    }
    return true;
}

SqlAst parse_sql(std::string_view text) {
    return SqlParser(text).parse();
}

QuerySignature analyze_query(const SqlAst& ast, const SchemaCatalog& catalog) {
    return SignatureBuilder(ast, catalog).build();
}

int placeholder_count(std::string_view text) {
    return sqllex::count_placeholders(text);
}

} // namespace oopsie
