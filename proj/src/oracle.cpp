#include "oopsie/oracle.hpp"

#include <cctype>
#include <sstream>

namespace oopsie {

namespace {

// ---------------------------------------------------------------------------
// Naive SQL walker. Independent of the SQL front end on purpose: plain token
// scans against the catalog, no AST. Types it cannot anchor stay unset.

struct NaiveToken {
    std::string text;   // lowercased for words
    bool is_word = false;
    bool is_string = false;
};

std::vector<NaiveToken> naive_tokens(const std::string& sql) {
    std::vector<NaiveToken> out;
    std::size_t i = 0;
    while (i < sql.size()) {
        char c = sql[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            NaiveToken t;
            t.is_word = true;
            while (i < sql.size() && (std::isalnum(static_cast<unsigned char>(sql[i])) ||
                                      sql[i] == '_')) {
                t.text.push_back(
                    static_cast<char>(std::tolower(static_cast<unsigned char>(sql[i]))));
                ++i;
            }
            out.push_back(std::move(t));
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            NaiveToken t;
            t.text = "0";  // literal; the value is irrelevant
            while (i < sql.size() && (std::isdigit(static_cast<unsigned char>(sql[i])) ||
                                      sql[i] == '.')) {
                ++i;
            }
            out.push_back(std::move(t));
            continue;
        }
        if (c == '\'') {
            NaiveToken t;
            t.is_string = true;
            ++i;
            while (i < sql.size()) {
                if (sql[i] == '\'') {
                    if (i + 1 < sql.size() && sql[i + 1] == '\'') {
                        i += 2;
                        continue;
                    }
                    ++i;
                    break;
                }
                ++i;
            }
            out.push_back(std::move(t));
            continue;
        }
        if ((c == '<' || c == '>') && i + 1 < sql.size() &&
            (sql[i + 1] == '=' || (c == '<' && sql[i + 1] == '>'))) {
            out.push_back({std::string{c, sql[i + 1]}, false, false});
            i += 2;
            continue;
        }
        out.push_back({std::string(1, c), false, false});
        ++i;
    }
    return out;
}

bool is_cmp(const std::string& t) {
    return t == "=" || t == "<" || t == ">" || t == "<=" || t == ">=" || t == "<>";
}

struct NaiveSig {
    bool valid = false;
    std::string error;
    bool modelable = true;
    std::string what_unmodeled;
    std::vector<std::optional<SqlKind>> in;
    std::vector<std::pair<std::string, SqlScalarType>> out;
    std::vector<int> out_source_index;  // 0-based column index in the table
    std::string table_key;              // folded table name
};

NaiveSig naive_walk(const std::string& sql, const SchemaCatalog& catalog) {
    NaiveSig sig;
    std::vector<NaiveToken> toks = naive_tokens(sql);
    if (toks.empty()) {
        sig.error = "empty statement";
        return sig;
    }
    auto word_at = [&](std::size_t i) -> std::string {
        return i < toks.size() && toks[i].is_word ? toks[i].text : std::string();
    };
    auto punct_at = [&](std::size_t i) -> std::string {
        return i < toks.size() && !toks[i].is_word && !toks[i].is_string ? toks[i].text
                                                                         : std::string();
    };
    auto find_word = [&](const std::string& w, std::size_t from) -> std::ptrdiff_t {
        for (std::size_t i = from; i < toks.size(); ++i) {
            if (toks[i].is_word && toks[i].text == w) return static_cast<std::ptrdiff_t>(i);
        }
        return -1;
    };

    const std::string verb = word_at(0);
    const Table* table = nullptr;
    auto resolve_table = [&](const std::string& name) -> bool {
        table = catalog.lookup_table(name);
        if (!table) {
            sig.error = "unknown table '" + name + "'";
            return false;
        }
        sig.table_key = fold_ident(name);
        return true;
    };
    auto column_kind = [&](const std::string& name) -> std::optional<SqlKind> {
        if (!table) return std::nullopt;
        const Column* col = table->find_column(name);
        if (!col) return std::nullopt;
        return col->type.kind;
    };

    // '?' typing from local context, shared by WHERE and SET clauses
    auto type_placeholders_after = [&](std::size_t from) {
        for (std::size_t i = from; i < toks.size(); ++i) {
            if (punct_at(i) != "?") continue;
            std::optional<SqlKind> kind;
            if (i >= 2 && is_cmp(punct_at(i - 1)) && toks[i - 2].is_word) {
                kind = column_kind(toks[i - 2].text);
            } else if (i + 2 < toks.size() && is_cmp(punct_at(i + 1)) && toks[i + 2].is_word) {
                kind = column_kind(toks[i + 2].text);
            } else if (i >= 2 && word_at(i - 1) == "between" && toks[i - 2].is_word) {
                kind = column_kind(toks[i - 2].text);
            } else if (i >= 4 && word_at(i - 1) == "and" && punct_at(i - 2) == "?" &&
                       word_at(i - 3) == "between" && toks[i - 4].is_word) {
                kind = column_kind(toks[i - 4].text);
            } else {
                // IN list: walk left past commas, '?' and literals to '('
                std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) - 1;
                while (j >= 0 &&
                       (punct_at(static_cast<std::size_t>(j)) == "," ||
                        punct_at(static_cast<std::size_t>(j)) == "?" ||
                        toks[static_cast<std::size_t>(j)].is_string ||
                        (toks[static_cast<std::size_t>(j)].is_word == false &&
                         toks[static_cast<std::size_t>(j)].text == "0") ||
                        toks[static_cast<std::size_t>(j)].text == "0")) {
                    --j;
                }
                if (j >= 2 && punct_at(static_cast<std::size_t>(j)) == "(" &&
                    word_at(static_cast<std::size_t>(j - 1)) == "in" &&
                    toks[static_cast<std::size_t>(j - 2)].is_word) {
                    kind = column_kind(toks[static_cast<std::size_t>(j - 2)].text);
                }
            }
            sig.in.push_back(kind);
        }
    };

    if (verb == "select") {
        std::ptrdiff_t from = find_word("from", 1);
        if (from < 0) {
            sig.error = "no FROM clause";
            return sig;
        }
        std::size_t table_pos = static_cast<std::size_t>(from) + 1;
        if (word_at(table_pos).empty()) {
            sig.error = "missing table name";
            return sig;
        }
        if (!resolve_table(toks[table_pos].text)) return sig;

        // select list between token 1 and FROM
        bool star = false;
        std::vector<std::string> items;
        for (std::size_t i = 1; i < static_cast<std::size_t>(from); ++i) {
            if (punct_at(i) == "*") {
                star = true;
            } else if (punct_at(i) == "(") {
                sig.modelable = false;
                sig.what_unmodeled = "function in select list";
                return sig;
            } else if (toks[i].is_word) {
                items.push_back(toks[i].text);
            }
        }
        if (star) {
            for (std::size_t c = 0; c < table->columns.size(); ++c) {
                sig.out.emplace_back(table->columns[c].name, table->columns[c].type);
                sig.out_source_index.push_back(static_cast<int>(c));
            }
        } else {
            for (const std::string& item : items) {
                int idx = table->column_index(item);
                if (idx == 0) {
                    sig.error = "unknown column '" + item + "'";
                    return sig;
                }
                sig.out.emplace_back(table->columns[idx - 1].name,
                                     table->columns[idx - 1].type);
                sig.out_source_index.push_back(idx - 1);
            }
        }
        type_placeholders_after(table_pos + 1);
        sig.valid = true;
        return sig;
    }

    if (verb == "insert") {
        if (word_at(1) != "into" || word_at(2).empty()) {
            sig.error = "malformed INSERT";
            return sig;
        }
        if (!resolve_table(toks[2].text)) return sig;
        std::vector<int> slot_columns;  // table column index per VALUES slot
        std::size_t i = 3;
        if (punct_at(i) == "(") {
            ++i;
            while (i < toks.size() && punct_at(i) != ")") {
                if (toks[i].is_word) {
                    int idx = table->column_index(toks[i].text);
                    if (idx == 0) {
                        sig.error = "unknown column '" + toks[i].text + "'";
                        return sig;
                    }
                    slot_columns.push_back(idx - 1);
                }
                ++i;
            }
            ++i;  // )
        } else {
            for (std::size_t c = 0; c < table->columns.size(); ++c)
                slot_columns.push_back(static_cast<int>(c));
        }
        if (word_at(i) != "values" || punct_at(i + 1) != "(") {
            sig.error = "malformed VALUES";
            return sig;
        }
        i += 2;
        std::size_t slot = 0;
        while (i < toks.size() && punct_at(i) != ")") {
            if (punct_at(i) == ",") {
                ++i;
                continue;
            }
            if (slot >= slot_columns.size()) {
                ++slot;  // too many values; counted below
                ++i;
                continue;
            }
            if (punct_at(i) == "?") {
                sig.in.push_back(table->columns[slot_columns[slot]].type.kind);
            }
            ++slot;
            ++i;
        }
        if (slot != slot_columns.size()) {
            sig.error = "INSERT lists " + std::to_string(slot_columns.size()) +
                        " columns but " + std::to_string(slot) + " values";
            return sig;
        }
        sig.valid = true;
        return sig;
    }

    if (verb == "update") {
        if (word_at(1).empty() || word_at(2) != "set") {
            sig.error = "malformed UPDATE";
            return sig;
        }
        if (!resolve_table(toks[1].text)) return sig;
        type_placeholders_after(3);
        sig.valid = true;
        return sig;
    }

    if (verb == "delete") {
        if (word_at(1) != "from" || word_at(2).empty()) {
            sig.error = "malformed DELETE";
            return sig;
        }
        if (!resolve_table(toks[2].text)) return sig;
        type_placeholders_after(3);
        sig.valid = true;
        return sig;
    }

    sig.error = "unrecognized statement '" + verb + "'";
    return sig;
}

// ---------------------------------------------------------------------------
// Interpreter

struct OValue {
    enum class Kind { Unknown, Int, Str, Bool, Stmt, Rs };
    Kind kind = Kind::Unknown;
    long long i = 0;
    std::string s;
    bool b = false;
    int handle = -1;

    static OValue unknown() { return {}; }
    static OValue of_int(long long v) { return {Kind::Int, v, "", false, -1}; }
    static OValue of_str(std::string v) { return {Kind::Str, 0, std::move(v), false, -1}; }
    static OValue of_bool(bool v) { return {Kind::Bool, 0, "", v, -1}; }
};

struct StmtObj {
    bool has_sig = false;
    NaiveSig sig;
    int last_rs = -1;
};

struct RsObj {
    std::vector<std::pair<std::string, SqlScalarType>> cols;
    std::vector<DbRow> rows;
    int cursor = -1;
};

struct PathException {
    ModeledException exception;
};

struct Unmodeled {
    std::string what;
};

struct ReturnSignal {
    OValue value;
};

class PathInterpreter {
public:
    PathInterpreter(const Ast& program, const ClassDecl& cls, const MiniDb& db,
                    const ConversionTable& conversions, int path_budget,
                    std::vector<char>& tape)
        : program_(program), cls_(cls), db_(db), conversions_(conversions),
          budget_(path_budget), tape_(tape) {}

    PathResult run(const Method& entry) {
        PathResult result;
        try {
            call_method(entry, std::vector<OValue>(entry.params.size()));
        } catch (const PathException& e) {
            result.exceptions.push_back(e.exception);
        }
        result.hit_limit = hit_limit_;
        return result;
    }

    std::size_t decisions_used() const { return tape_pos_; }

private:
    bool decide() {
        if (tape_pos_ < tape_.size()) return tape_[tape_pos_++] != 0;
        tape_.push_back(1);
        ++tape_pos_;
        return true;
    }

    [[noreturn]] void raise(int category, const SourceSpan& span, std::string detail) {
        throw PathException{ModeledException{category, span, std::move(detail)}};
    }

    OValue call_method(const Method& method, std::vector<OValue> args) {
        if (++depth_ > 32) throw Unmodeled{"recursion deeper than 32 frames"};
        std::vector<OValue> locals(method.slots.size());
        for (std::size_t i = 0; i < args.size() && i < locals.size(); ++i)
            locals[i] = std::move(args[i]);
        frames_.push_back(std::move(locals));
        OValue out;
        try {
            exec_list(method.body, method);
        } catch (const ReturnSignal& r) {
            out = r.value;
        }
        frames_.pop_back();
        --depth_;
        return out;
    }

    void exec_list(const std::vector<StmtPtr>& stmts, const Method& method) {
        for (const StmtPtr& stmt : stmts) exec_stmt(*stmt, method);
    }

    void exec_stmt(const Stmt& stmt, const Method& method) {
        switch (stmt.kind) {
        case Stmt::Kind::LocalDecl:
        case Stmt::Kind::Assign: {
            OValue v = stmt.expr ? eval(*stmt.expr, method) : OValue::unknown();
            frames_.back()[stmt.slot] = std::move(v);
            break;
        }
        case Stmt::Kind::CompoundAdd: {
            OValue rhs = eval(*stmt.expr, method);
            OValue& target = frames_.back()[stmt.slot];
            target = add(target, rhs, method.slots[stmt.slot].type == JavaType::String);
            break;
        }
        case Stmt::Kind::ExprStmt:
            eval(*stmt.expr, method);
            break;
        case Stmt::Kind::Return: {
            OValue v = stmt.expr ? eval(*stmt.expr, method) : OValue::unknown();
            throw ReturnSignal{std::move(v)};
        }
        case Stmt::Kind::If:
            eval(*stmt.expr, method);  // guard side effects
            if (decide()) {
                exec_list(stmt.then_body, method);
            } else {
                exec_list(stmt.else_body, method);
            }
            break;
        case Stmt::Kind::While: {
            int iterations = 0;
            while (true) {
                eval(*stmt.expr, method);
                if (iterations >= budget_) {
                    hit_limit_ = true;
                    break;
                }
                if (!decide()) break;
                exec_list(stmt.loop_body, method);
                ++iterations;
            }
            break;
        }
        }
    }

    static OValue add(const OValue& a, const OValue& b, bool string_result) {
        if (string_result) {
            auto render = [](const OValue& v) -> std::optional<std::string> {
                if (v.kind == OValue::Kind::Str) return v.s;
                if (v.kind == OValue::Kind::Int) return std::to_string(v.i);
                return std::nullopt;
            };
            auto x = render(a);
            auto y = render(b);
            if (x && y) return OValue::of_str(*x + *y);
            return OValue::unknown();
        }
        if (a.kind == OValue::Kind::Int && b.kind == OValue::Kind::Int)
            return OValue::of_int(a.i + b.i);
        return OValue::unknown();
    }

    OValue eval(const Expr& expr, const Method& method) {
        switch (expr.kind) {
        case Expr::Kind::StringLit: return OValue::of_str(expr.str_value);
        case Expr::Kind::IntLit: return OValue::of_int(expr.int_value);
        case Expr::Kind::BoolLit: return OValue::of_bool(expr.bool_value);
        case Expr::Kind::NullLit: return OValue::unknown();
        case Expr::Kind::VarRef: return frames_.back()[expr.slot];
        case Expr::Kind::Unary: {
            const Expr& operand = *expr.lhs;
            switch (expr.un_op) {
            case Expr::UnOp::PreInc:
            case Expr::UnOp::PreDec:
            case Expr::UnOp::PostInc:
            case Expr::UnOp::PostDec: {
                long long delta = (expr.un_op == Expr::UnOp::PreInc ||
                                   expr.un_op == Expr::UnOp::PostInc)
                                      ? 1
                                      : -1;
                OValue& target = frames_.back()[operand.slot];
                OValue before = target;
                if (target.kind == OValue::Kind::Int) target.i += delta;
                bool pre = expr.un_op == Expr::UnOp::PreInc || expr.un_op == Expr::UnOp::PreDec;
                return pre ? target : before;
            }
            case Expr::UnOp::Not: {
                OValue v = eval(operand, method);
                if (v.kind == OValue::Kind::Bool) return OValue::of_bool(!v.b);
                return OValue::unknown();
            }
            case Expr::UnOp::Neg: {
                OValue v = eval(operand, method);
                if (v.kind == OValue::Kind::Int) return OValue::of_int(-v.i);
                return OValue::unknown();
            }
            }
            return OValue::unknown();
        }
        case Expr::Kind::Binary: {
            OValue a = eval(*expr.lhs, method);
            OValue b = eval(*expr.rhs, method);
            switch (expr.bin_op) {
            case Expr::BinOp::Add:
                return add(a, b, expr.static_type == JavaType::String);
            case Expr::BinOp::Sub:
                if (a.kind == OValue::Kind::Int && b.kind == OValue::Kind::Int)
                    return OValue::of_int(a.i - b.i);
                return OValue::unknown();
            default:
                return OValue::unknown();  // comparisons feed nondeterministic guards
            }
        }
        case Expr::Kind::Call:
            return eval_call(expr, method);
        }
        return OValue::unknown();
    }

    OValue eval_call(const Expr& call, const Method& method) {
        std::vector<OValue> args;
        args.reserve(call.args.size());
        for (const ExprPtr& a : call.args) args.push_back(eval(*a, method));

        if (!call.has_receiver) {
            for (const Method& m : cls_.methods) {
                if (m.name == call.method && m.params.size() == args.size()) {
                    if (!m.analyzable) throw Unmodeled{"call to unanalyzable method"};
                    return call_method(m, std::move(args));
                }
            }
            throw Unmodeled{"call to unknown method '" + call.method + "'"};
        }

        JavaType recv_type =
            call.recv_slot >= 0 ? method.slots[call.recv_slot].type : JavaType::Other;
        ApiCallInfo info = classify_call(recv_type, call.method);

        auto sql_text = [&](int idx) -> std::string {
            if (idx < 0 || static_cast<std::size_t>(idx) >= args.size() ||
                args[static_cast<std::size_t>(idx)].kind != OValue::Kind::Str)
                throw Unmodeled{"SQL string is not concrete at " + call.method};
            return args[static_cast<std::size_t>(idx)].s;
        };

        if (info.creates_sql_statement && !info.retrieves_result_set) {
            // Connection.prepareStatement: validation happens here
            NaiveSig sig = walk_or_raise(sql_text(info.sql_arg_index), call.span);
            stmts_.push_back({true, std::move(sig), -1});
            OValue v;
            v.kind = OValue::Kind::Stmt;
            v.handle = static_cast<int>(stmts_.size()) - 1;
            return v;
        }

        if (recv_type == JavaType::Connection && call.method == "createStatement") {
            stmts_.push_back({false, {}, -1});
            OValue v;
            v.kind = OValue::Kind::Stmt;
            v.handle = static_cast<int>(stmts_.size()) - 1;
            return v;
        }

        if (info.creates_sql_statement && info.retrieves_result_set) {
            // Statement.executeQuery(sql)
            NaiveSig sig = walk_or_raise(sql_text(info.sql_arg_index), call.span);
            int rs = make_result_set(sig);
            if (StmtObj* stmt = stmt_of(call, method)) {
                stmt->has_sig = true;
                stmt->sig = sig;
                stmt->last_rs = rs;
            }
            OValue v;
            v.kind = OValue::Kind::Rs;
            v.handle = rs;
            return v;
        }

        if (info.executes_with_sql) {
            NaiveSig sig = walk_or_raise(sql_text(info.sql_arg_index), call.span);
            int rs = make_result_set(sig);
            if (StmtObj* stmt = stmt_of(call, method)) {
                stmt->has_sig = true;
                stmt->sig = sig;
                stmt->last_rs = rs;
            }
            return OValue::unknown();
        }

        if (info.retrieves_result_set) {
            // PreparedStatement.executeQuery() or Statement.getResultSet()
            StmtObj* stmt = stmt_of(call, method);
            if (!stmt || !stmt->has_sig)
                throw Unmodeled{"result set retrieved before any SQL was executed"};
            int rs;
            if (call.method == "getResultSet") {
                rs = stmt->last_rs;
                if (rs < 0) throw Unmodeled{"getResultSet before execute"};
            } else {
                rs = make_result_set(stmt->sig);
                stmt->last_rs = rs;
            }
            OValue v;
            v.kind = OValue::Kind::Rs;
            v.handle = rs;
            return v;
        }

        if (info.setter) {
            StmtObj* stmt = stmt_of(call, method);
            if (!stmt || !stmt->has_sig) throw Unmodeled{"setter before prepare"};
            if (args.empty() || args[0].kind != OValue::Kind::Int)
                throw Unmodeled{"setter index is not concrete"};
            long long index = args[0].i;
            auto param_count = static_cast<long long>(stmt->sig.in.size());
            if (index < 1 || index > param_count) {
                raise(2, call.span,
                      "parameter index " + std::to_string(index) + " of " +
                          std::to_string(param_count));
            }
            const auto& kind = stmt->sig.in[static_cast<std::size_t>(index - 1)];
            if (!kind) throw Unmodeled{"parameter type not derivable"};
            if (conversions_.classify(Direction::Set, make_sql_type(*kind), *info.setter) !=
                Conversion::Recommended) {
                raise(4, call.span,
                      "set" + std::string(accessor_method_suffix(*info.setter)) + " on " +
                          std::string(to_string(*kind)));
            }
            return OValue::unknown();
        }

        if (info.getter) {
            RsObj* rs = rs_of(call, method);
            if (!rs) throw Unmodeled{"getter on unknown result set"};
            if (args.empty()) throw Unmodeled{"getter without arguments"};
            int col_index;  // 0-based
            if (args[0].kind == OValue::Kind::Str) {
                col_index = -1;
                for (std::size_t c = 0; c < rs->cols.size(); ++c) {
                    if (ident_equal(rs->cols[c].first, args[0].s)) {
                        col_index = static_cast<int>(c);
                        break;
                    }
                }
                if (col_index < 0)
                    raise(3, call.span, "unknown column '" + args[0].s + "'");
            } else if (args[0].kind == OValue::Kind::Int) {
                if (args[0].i < 1 || args[0].i > static_cast<long long>(rs->cols.size()))
                    raise(3, call.span, "column index " + std::to_string(args[0].i) + " of " +
                                            std::to_string(rs->cols.size()));
                col_index = static_cast<int>(args[0].i) - 1;
            } else {
                throw Unmodeled{"getter argument is not concrete"};
            }
            const SqlScalarType& type = rs->cols[static_cast<std::size_t>(col_index)].second;
            if (conversions_.classify(Direction::Get, type, *info.getter) !=
                Conversion::Recommended) {
                raise(4, call.span,
                      "get" + std::string(accessor_method_suffix(*info.getter)) + " on " +
                          std::string(to_string(type.kind)));
            }
            return cell_value(*rs, col_index, *info.getter);
        }

        if (info.cursor_next) {
            if (RsObj* rs = rs_of(call, method)) ++rs->cursor;
            return OValue::unknown();  // guards fork on decide()
        }

        return OValue::unknown();
    }

    NaiveSig walk_or_raise(const std::string& sql, const SourceSpan& span) {
        NaiveSig sig = naive_walk(sql, *db_.catalog);
        if (!sig.modelable) throw Unmodeled{sig.what_unmodeled + " in: " + sql};
        if (!sig.valid) raise(1, span, sig.error);
        return sig;
    }

    int make_result_set(const NaiveSig& sig) {
        RsObj rs;
        rs.cols = sig.out;
        auto it = db_.rows.find(sig.table_key);
        if (it != db_.rows.end() && !sig.out_source_index.empty()) {
            for (const DbRow& row : it->second) {
                DbRow projected;
                for (int src : sig.out_source_index) {
                    projected.cells.push_back(row.cells[static_cast<std::size_t>(src)]);
                }
                rs.rows.push_back(std::move(projected));
            }
        }
        results_.push_back(std::move(rs));
        return static_cast<int>(results_.size()) - 1;
    }

    StmtObj* stmt_of(const Expr& call, const Method& method) {
        (void)method;
        if (call.recv_slot < 0) return nullptr;
        const OValue& v = frames_.back()[call.recv_slot];
        if (v.kind != OValue::Kind::Stmt) return nullptr;
        return &stmts_[static_cast<std::size_t>(v.handle)];
    }

    RsObj* rs_of(const Expr& call, const Method& method) {
        (void)method;
        if (call.recv_slot < 0) return nullptr;
        const OValue& v = frames_.back()[call.recv_slot];
        if (v.kind != OValue::Kind::Rs) return nullptr;
        return &results_[static_cast<std::size_t>(v.handle)];
    }

    OValue cell_value(const RsObj& rs, int col, JavaAccessor accessor) {
        if (rs.cursor < 0 || rs.cursor >= static_cast<int>(rs.rows.size()))
            return OValue::unknown();
        const SqlValue& cell = rs.rows[static_cast<std::size_t>(rs.cursor)]
                                   .cells[static_cast<std::size_t>(col)];
        switch (accessor) {
        case JavaAccessor::Int:
        case JavaAccessor::Long:
        case JavaAccessor::Short:
            if (const long long* v = std::get_if<long long>(&cell)) return OValue::of_int(*v);
            return OValue::unknown();
        case JavaAccessor::String:
            if (const std::string* v = std::get_if<std::string>(&cell))
                return OValue::of_str(*v);
            return OValue::unknown();
        case JavaAccessor::Boolean:
            if (const bool* v = std::get_if<bool>(&cell)) return OValue::of_bool(*v);
            return OValue::unknown();
        default:
            return OValue::unknown();
        }
    }

    const Ast& program_;
    const ClassDecl& cls_;
    const MiniDb& db_;
    const ConversionTable& conversions_;
    int budget_;
    std::vector<char>& tape_;
    std::size_t tape_pos_ = 0;
    bool hit_limit_ = false;
    int depth_ = 0;

    std::vector<std::vector<OValue>> frames_;
    std::vector<StmtObj> stmts_;
    std::vector<RsObj> results_;
};

bool is_entry_method(const Method& m) {
    if (!m.analyzable) return false;
    for (const Param& p : m.params) {
        if (is_api_type(p.type)) return false;
    }
    return true;
}

} // namespace

MiniDb load_rows(const SchemaCatalog& catalog, std::string_view rows_text) {
    MiniDb db;
    db.catalog = &catalog;
    std::istringstream in{std::string(rows_text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::size_t colon = line.find(':', start);
        if (colon == std::string::npos)
            throw OracleError("rows line " + std::to_string(line_no) +
                              ": expected 'table: values'");
        std::string table_name = line.substr(start, colon - start);
        while (!table_name.empty() && std::isspace(static_cast<unsigned char>(table_name.back())))
            table_name.pop_back();
        const Table* table = catalog.lookup_table(table_name);
        if (!table)
            throw OracleError("rows line " + std::to_string(line_no) + ": unknown table '" +
                              table_name + "'");

        DbRow row;
        std::size_t i = colon + 1;
        auto skip_ws = [&] {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        };
        while (true) {
            skip_ws();
            if (i >= line.size()) break;
            char c = line[i];
            if (c == '\'') {
                std::string value;
                ++i;
                while (i < line.size()) {
                    if (line[i] == '\'') {
                        if (i + 1 < line.size() && line[i + 1] == '\'') {
                            value.push_back('\'');
                            i += 2;
                            continue;
                        }
                        ++i;
                        break;
                    }
                    value.push_back(line[i]);
                    ++i;
                }
                row.cells.emplace_back(std::move(value));
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
                std::size_t value_start = i;
                if (c == '-') ++i;
                bool is_double = false;
                while (i < line.size() &&
                       (std::isdigit(static_cast<unsigned char>(line[i])) || line[i] == '.')) {
                    if (line[i] == '.') is_double = true;
                    ++i;
                }
                std::string text = line.substr(value_start, i - value_start);
                if (is_double)
                    row.cells.emplace_back(std::stod(text));
                else
                    row.cells.emplace_back(static_cast<long long>(std::stoll(text)));
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                std::size_t value_start = i;
                while (i < line.size() && std::isalpha(static_cast<unsigned char>(line[i]))) ++i;
                std::string word = line.substr(value_start, i - value_start);
                std::string folded = fold_ident(word);
                if (folded == "null")
                    row.cells.emplace_back(std::monostate{});
                else if (folded == "true")
                    row.cells.emplace_back(true);
                else if (folded == "false")
                    row.cells.emplace_back(false);
                else
                    throw OracleError("rows line " + std::to_string(line_no) +
                                      ": bad value '" + word + "'");
            } else {
                throw OracleError("rows line " + std::to_string(line_no) +
                                  ": unexpected character '" + std::string(1, c) + "'");
            }
            skip_ws();
            if (i < line.size() && line[i] == ',') {
                ++i;
                continue;
            }
            break;
        }
        if (row.cells.size() != table->columns.size())
            throw OracleError("rows line " + std::to_string(line_no) + ": table '" +
                              table->name + "' has " + std::to_string(table->columns.size()) +
                              " columns, got " + std::to_string(row.cells.size()) + " values");
        for (std::size_t c = 0; c < row.cells.size(); ++c) {
            const SqlValue& v = row.cells[c];
            if (std::holds_alternative<std::monostate>(v)) continue;
            bool ok = false;
            switch (table->columns[c].type.kind) {
            case SqlKind::Integer:
            case SqlKind::Bigint:
            case SqlKind::Smallint:
                ok = std::holds_alternative<long long>(v);
                break;
            case SqlKind::Boolean:
                ok = std::holds_alternative<bool>(v);
                break;
            case SqlKind::Char:
            case SqlKind::Varchar:
            case SqlKind::Date:
            case SqlKind::Time:
            case SqlKind::Timestamp:
                ok = std::holds_alternative<std::string>(v);
                break;
            case SqlKind::Decimal:
            case SqlKind::Numeric:
            case SqlKind::Double:
            case SqlKind::Real:
                ok = std::holds_alternative<double>(v) || std::holds_alternative<long long>(v);
                break;
            }
            if (!ok)
                throw OracleError("rows line " + std::to_string(line_no) + ": value " +
                                  std::to_string(c + 1) + " does not fit column '" +
                                  table->columns[c].name + "'");
        }
        db.rows[fold_ident(table_name)].push_back(std::move(row));
    }
    return db;
}

OracleResult run_program(const Ast& program, const MiniDb& db,
                         const ConversionTable& conversions, int path_budget) {
    OracleResult result;
    constexpr std::size_t kMaxPaths = 1 << 17;

    for (const ClassDecl& cls : program.classes) {
        for (const Method& entry : cls.methods) {
            if (!is_entry_method(entry)) continue;

            std::vector<char> tape;
            while (true) {
                if (result.paths.size() >= kMaxPaths)
                    throw OracleError("path budget exhausted exploring " + entry.name);
                PathInterpreter interp(program, cls, db, conversions, path_budget, tape);
                std::size_t used = 0;
                try {
                    PathResult path = interp.run(entry);
                    used = interp.decisions_used();
                    if (path.hit_limit) ++result.limit_hits;
                    result.paths.push_back(std::move(path));
                } catch (const Unmodeled& u) {
                    used = interp.decisions_used();
                    result.unmodeled.push_back(entry.name + ": " + u.what);
                }
                // depth-first backtracking over the decision tape
                tape.resize(used);
                std::ptrdiff_t flip = static_cast<std::ptrdiff_t>(tape.size()) - 1;
                while (flip >= 0 && tape[static_cast<std::size_t>(flip)] == 0) --flip;
                if (flip < 0) break;
                tape.resize(static_cast<std::size_t>(flip) + 1);
                tape[static_cast<std::size_t>(flip)] = 0;
            }
        }
    }
    return result;
}

std::vector<std::pair<int, int>> parse_expect(std::string_view text) {
    std::vector<std::pair<int, int>> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream fields(line);
        int category = 0, line_no = 0;
        if (fields >> category >> line_no) out.emplace_back(category, line_no);
    }
    return out;
}

} // namespace oopsie
