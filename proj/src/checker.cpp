#include "oopsie/checker.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <map>
#include <thread>

namespace oopsie {

namespace {

int severity_rank(Severity s) {
    switch (s) {
    case Severity::Error: return 2;
    case Severity::Warning: return 1;
    case Severity::Info: return 0;
    }
    return 0;
}

Severity per_mode(Mode mode) {
    return mode == Mode::Sound ? Severity::Error : Severity::Warning;
}

Diagnostic make_diag(DiagCode code, Severity severity, SourceSpan span, std::string message) {
    Diagnostic d;
    d.code = code;
    d.severity = severity;
    d.span = std::move(span);
    d.message = std::move(message);
    return d;
}

std::string accessor_call_name(Direction dir, JavaAccessor a) {
    std::string out = dir == Direction::Get ? "get" : "set";
    out += accessor_method_suffix(a);
    return out;
}

std::string recommended_list(const ConversionTable& table, Direction dir, SqlKind kind) {
    std::string out;
    for (JavaAccessor a : table.recommended(dir, kind)) {
        if (!out.empty()) out += ", ";
        out += accessor_call_name(dir, a);
    }
    return out.empty() ? "(none)" : out;
}

void push_unique(std::vector<Diagnostic>& out, Diagnostic d) {
    for (const Diagnostic& existing : out) {
        if (existing.code == d.code && existing.message == d.message) return;
    }
    out.push_back(std::move(d));
}

// Conversion verdict for one resolved slot; shared by setter and getter paths.
void check_conversion(std::vector<Diagnostic>& out, const ConversionTable& table, Direction dir,
                      const SqlScalarType& sql, JavaAccessor used, const std::string& slot_text,
                      bool supported_as_warning, const SourceSpan& span) {
    Conversion verdict = table.classify(dir, sql, used);
    if (verdict == Conversion::Recommended) return;
    DiagCode code =
        dir == Direction::Set ? DiagCode::SetterTypeMismatch : DiagCode::GetterTypeMismatch;
    std::string used_name = accessor_call_name(dir, used);
    std::string message;
    if (verdict == Conversion::SupportedOnly) {
        message = used_name + " is not recommended for " + slot_text + " of SQL type " +
                  std::string(to_string(sql.kind)) + " (driver-dependent conversion)";
    } else {
        message = used_name + " is not a JDBC conversion for " + slot_text + " of SQL type " +
                  std::string(to_string(sql.kind));
    }
    Severity severity = verdict == Conversion::SupportedOnly && supported_as_warning
                            ? Severity::Warning
                            : Severity::Error;
    Diagnostic d = make_diag(code, severity, span, std::move(message));
    d.expected = recommended_list(table, dir, sql.kind);
    d.actual = used_name;
    push_unique(out, std::move(d));
}

} // namespace

std::string code_id(DiagCode code) {
    int n = static_cast<int>(code);
    char buf[16];
    std::snprintf(buf, sizeof buf, "OOPS%03d", n);
    return buf;
}

std::string_view severity_name(Severity s) {
    switch (s) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Info: return "info";
    }
    return "?";
}

bool diagnostic_less(const Diagnostic& a, const Diagnostic& b) {
    if (a.span.file != b.span.file) return a.span.file < b.span.file;
    if (a.span.line != b.span.line) return a.span.line < b.span.line;
    if (a.span.column != b.span.column) return a.span.column < b.span.column;
    if (a.code != b.code) return static_cast<int>(a.code) < static_cast<int>(b.code);
    if (a.severity != b.severity)
        return severity_rank(a.severity) > severity_rank(b.severity);
    return a.message < b.message;
}

void sort_diagnostics(std::vector<Diagnostic>& diagnostics) {
    std::stable_sort(diagnostics.begin(), diagnostics.end(), diagnostic_less);
}

QualifierState join_qualifiers(const QualifierState& a, const QualifierState& b) {
    QualifierState out;
    std::size_t n = std::max(a.slots.size(), b.slots.size());
    out.slots.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        SqlQualifier x = i < a.slots.size() ? a.slots[i] : SqlQualifier::unknown();
        SqlQualifier y = i < b.slots.size() ? b.slots[i] : SqlQualifier::unknown();
        out.slots.push_back(lub(x, y));
    }
    return out;
}

bool CheckResult::has_severity_at_least(Severity threshold) const {
    for (const Diagnostic& d : diagnostics) {
        if (severity_rank(d.severity) >= severity_rank(threshold)) return true;
    }
    return false;
}

IntroduceResult introduce_statement_qualifier(const ConstValue& sql_value,
                                              const SchemaCatalog& catalog, Mode mode,
                                              const SourceSpan& span) {
    IntroduceResult result;
    if (!sql_value.is_known() || !sql_value.string_domain) {
        result.qualifier = SqlQualifier::unsupported();
        result.diagnostics.push_back(
            make_diag(DiagCode::UnextractableSql, per_mode(mode), span,
                      "SQL statement string cannot be determined at analysis time"));
        return result;
    }

    std::vector<SqlQualifier> analyzed;
    bool failed = false;
    for (const std::string& text : sql_value.strings) {
        try {
            SqlAst ast = parse_sql(text);
            analyzed.push_back(SqlQualifier::sql(analyze_query(ast, catalog)));
        } catch (const SqlError& e) {
            failed = true;
            if (e.is_dialect_gap()) {
                push_unique(result.diagnostics,
                            make_diag(DiagCode::UnsupportedSql, per_mode(mode), span,
                                      std::string("unsupported SQL: ") + e.what()));
            } else {
                push_unique(result.diagnostics,
                            make_diag(DiagCode::MalformedSql, Severity::Error, span,
                                      std::string("malformed SQL: ") + e.what()));
            }
        }
    }
    if (failed || analyzed.empty()) {
        result.qualifier = SqlQualifier::unsupported();
        return result;
    }
    result.qualifier = analyzed.front();
    for (std::size_t i = 1; i < analyzed.size(); ++i)
        result.qualifier = lub(result.qualifier, analyzed[i]);
    return result;
}

AccessCheck verify_setter(const SqlQualifier& receiver, JavaAccessor accessor,
                          const ConstValue& index_value, const ConversionTable& conversions,
                          Mode mode, bool supported_as_warning, const SourceSpan& span) {
    AccessCheck check;
    switch (receiver.kind) {
    case SqlQualifier::Kind::Bottom:
        return check;  // unreachable code
    case SqlQualifier::Kind::Unsupported:
        check.counted_unchecked = true;
        if (mode == Mode::Sound) {
            check.diagnostics.push_back(
                make_diag(DiagCode::UncheckedAccess, Severity::Error, span,
                          "setter on a statement whose SQL could not be analyzed"));
        }
        return check;
    case SqlQualifier::Kind::Unknown:
        check.counted_out_of_scope = true;
        if (mode == Mode::Sound) {
            check.diagnostics.push_back(make_diag(
                DiagCode::NonlocalAccess, Severity::Error, span,
                "non-local access: receiver has no SQL type information in this method"));
        } else {
            check.diagnostics.push_back(make_diag(
                DiagCode::OutOfScope, Severity::Info, span,
                "setter not checked: receiver has no local SQL type information"));
        }
        return check;
    case SqlQualifier::Kind::Sql:
        break;
    }

    check.counted_checked = true;
    const auto param_count = static_cast<long long>(receiver.sig.in.size());
    if (!index_value.is_known() || index_value.string_domain) {
        check.diagnostics.push_back(
            make_diag(DiagCode::UnextractableIndex, per_mode(mode), span,
                      "parameter index cannot be determined at analysis time"));
        return check;
    }
    for (long long index : index_value.ints) {
        if (index < 1 || index > param_count) {
            push_unique(check.diagnostics,
                        make_diag(DiagCode::ParamIndexOob, Severity::Error, span,
                                  "parameter index " + std::to_string(index) +
                                      " out of bounds (statement has " +
                                      std::to_string(param_count) + " parameters)"));
            continue;
        }
        const SqlScalarType& sql = receiver.sig.in[static_cast<std::size_t>(index - 1)];
        check_conversion(check.diagnostics, conversions, Direction::Set, sql, accessor,
                         "parameter " + std::to_string(index), supported_as_warning, span);
    }
    return check;
}

AccessCheck verify_getter(const SqlQualifier& receiver, JavaAccessor accessor,
                          bool name_is_string, const ConstValue& arg_value,
                          const ConversionTable& conversions, Mode mode,
                          bool supported_as_warning, const SourceSpan& span) {
    AccessCheck check;
    switch (receiver.kind) {
    case SqlQualifier::Kind::Bottom:
        return check;
    case SqlQualifier::Kind::Unsupported:
        check.counted_unchecked = true;
        if (mode == Mode::Sound) {
            check.diagnostics.push_back(
                make_diag(DiagCode::UncheckedAccess, Severity::Error, span,
                          "getter on a result set whose SQL could not be analyzed"));
        }
        return check;
    case SqlQualifier::Kind::Unknown:
        check.counted_out_of_scope = true;
        if (mode == Mode::Sound) {
            check.diagnostics.push_back(make_diag(
                DiagCode::NonlocalAccess, Severity::Error, span,
                "non-local access: receiver has no SQL type information in this method"));
        } else {
            check.diagnostics.push_back(make_diag(
                DiagCode::OutOfScope, Severity::Info, span,
                "getter not checked: receiver has no local SQL type information"));
        }
        return check;
    case SqlQualifier::Kind::Sql:
        break;
    }

    check.counted_checked = true;
    const auto& out = receiver.sig.out;
    if (name_is_string) {
        if (!arg_value.is_known() || !arg_value.string_domain) {
            check.diagnostics.push_back(
                make_diag(DiagCode::UnextractableIndex, per_mode(mode), span,
                          "column name cannot be determined at analysis time"));
            return check;
        }
        for (const std::string& name : arg_value.strings) {
            const OutColumn* found = nullptr;
            for (const OutColumn& col : out) {
                if (ident_equal(col.name, name)) {
                    found = &col;
                    break;
                }
            }
            if (!found) {
                push_unique(check.diagnostics,
                            make_diag(DiagCode::ColumnNameUnknown, Severity::Error, span,
                                      "unknown column '" + name + "' in result set"));
                continue;
            }
            check_conversion(check.diagnostics, conversions, Direction::Get, found->type,
                             accessor, "column '" + name + "'", supported_as_warning, span);
        }
        return check;
    }

    if (!arg_value.is_known() || arg_value.string_domain) {
        check.diagnostics.push_back(
            make_diag(DiagCode::UnextractableIndex, per_mode(mode), span,
                      "column index cannot be determined at analysis time"));
        return check;
    }
    const auto column_count = static_cast<long long>(out.size());
    for (long long index : arg_value.ints) {
        if (index < 1 || index > column_count) {
            push_unique(check.diagnostics,
                        make_diag(DiagCode::ColumnIndexOob, Severity::Error, span,
                                  "column index " + std::to_string(index) +
                                      " out of bounds (result set has " +
                                      std::to_string(column_count) + " columns)"));
            continue;
        }
        const OutColumn& col = out[static_cast<std::size_t>(index - 1)];
        check_conversion(check.diagnostics, conversions, Direction::Get, col.type, accessor,
                         "column " + std::to_string(index) + " ('" + col.name + "')",
                         supported_as_warning, span);
    }
    return check;
}

namespace {

// Parsed manual annotations of one class, keyed by method name.
struct MethodAnnotations {
    std::vector<std::optional<SqlQualifier>> params;
    std::optional<SqlQualifier> return_qualifier;
};

struct ClassAnnotations {
    std::map<std::string, MethodAnnotations> methods;
    std::map<std::string, const Method*> methods_by_name;
};

ClassAnnotations collect_annotations(const ClassDecl& cls) {
    ClassAnnotations out;
    for (const Method& m : cls.methods) {
        if (!out.methods_by_name.count(m.name)) out.methods_by_name[m.name] = &m;
        MethodAnnotations annos;
        bool any = false;
        annos.params.resize(m.params.size());
        for (std::size_t i = 0; i < m.params.size(); ++i) {
            if (m.params[i].annotation) {
                annos.params[i] = parse_sql_annotation(m.params[i].annotation->raw);
                any = true;
            }
        }
        if (m.return_annotation) {
            annos.return_qualifier = parse_sql_annotation(m.return_annotation->raw);
            any = true;
        }
        if (any) out.methods[m.name] = std::move(annos);
    }
    return out;
}

struct ExprResult {
    ConstValue value = ConstValue::top();
    SqlQualifier qual = SqlQualifier::unknown();
};

class MethodChecker {
public:
    MethodChecker(const Method& method, const ClassAnnotations& annos,
                  const SchemaCatalog& catalog, const ConversionTable& conversions,
                  const CheckOptions& options)
        : method_(method), annos_(annos), catalog_(catalog), conversions_(conversions),
          options_(options) {
        auto it = annos_.methods.find(method.name);
        if (it != annos_.methods.end() && it->second.return_qualifier)
            declared_return_ = it->second.return_qualifier;
    }

    void run(std::vector<Diagnostic>& diagnostics, CheckStats& stats) {
        Cfg cfg = build_cfg(method_);
        const std::size_t n = cfg.blocks.size();

        std::vector<ValueState> value_entry(n);
        std::vector<QualifierState> qual_entry(n);
        std::vector<bool> seen(n, false);

        value_entry[cfg.entry] = entry_value_state(method_);
        qual_entry[cfg.entry] = entry_qualifier_state();
        seen[cfg.entry] = true;

        std::deque<int> work{cfg.entry};
        std::vector<bool> queued(n, false);
        queued[cfg.entry] = true;

        // chain length per slot is bounded by the longest out list plus the
        // lattice extremes, so this generous cap only guards against bugs
        const long long visit_cap =
            64 + static_cast<long long>(n) * (static_cast<long long>(method_.slots.size()) + 2) *
                     (kConstCap + 8);
        long long visits = 0;

        while (!work.empty()) {
            int b = work.front();
            work.pop_front();
            queued[b] = false;
            if (++visits > visit_cap)
                throw std::logic_error("qualifier fixpoint failed to stabilize");

            ValueState vs = value_entry[b];
            QualifierState qs = qual_entry[b];
            exec_block(cfg.blocks[b], vs, qs, nullptr, nullptr);

            for (int succ : cfg.blocks[b].succs) {
                ValueState merged_v = seen[succ] ? join_value(value_entry[succ], vs) : vs;
                QualifierState merged_q =
                    seen[succ] ? join_qualifiers(qual_entry[succ], qs) : qs;
                if (!seen[succ] || !(merged_v == value_entry[succ]) ||
                    !(merged_q == qual_entry[succ])) {
                    value_entry[succ] = std::move(merged_v);
                    qual_entry[succ] = std::move(merged_q);
                    seen[succ] = true;
                    if (!queued[succ]) {
                        queued[succ] = true;
                        work.push_back(succ);
                    }
                }
            }
        }

        // emission pass: one visit per block with the stable entry states
        for (std::size_t b = 0; b < n; ++b) {
            ValueState vs = value_entry[b];
            QualifierState qs = qual_entry[b];
            exec_block(cfg.blocks[b], vs, qs, &diagnostics, &stats);
        }
    }

private:
    QualifierState entry_qualifier_state() const {
        QualifierState state;
        state.slots.reserve(method_.slots.size());
        auto annos = annos_.methods.find(method_.name);
        std::size_t param_index = 0;
        for (const VarSlot& slot : method_.slots) {
            if (slot.is_param) {
                SqlQualifier q = SqlQualifier::unknown();
                if (annos != annos_.methods.end() &&
                    param_index < annos->second.params.size() &&
                    annos->second.params[param_index]) {
                    q = *annos->second.params[param_index];
                }
                state.slots.push_back(std::move(q));
                ++param_index;
            } else {
                state.slots.push_back(SqlQualifier::bottom());
            }
        }
        return state;
    }

    void exec_block(const Cfg::Block& block, ValueState& vs, QualifierState& qs,
                    std::vector<Diagnostic>* sink, CheckStats* stats) {
        for (const Stmt* stmt : block.stmts) exec_stmt(*stmt, vs, qs, sink, stats);
        if (block.guard) exec_expr(*block.guard, vs, qs, sink, stats);
    }

    void exec_stmt(const Stmt& stmt, ValueState& vs, QualifierState& qs,
                   std::vector<Diagnostic>* sink, CheckStats* stats) {
        switch (stmt.kind) {
        case Stmt::Kind::LocalDecl: {
            if (!stmt.expr) {
                if (tracked_value(stmt.slot)) vs.slots[stmt.slot] = ConstValue::bottom();
                if (is_api_type(method_.slots[stmt.slot].type))
                    qs.slots[stmt.slot] = SqlQualifier::bottom();
                break;
            }
            ExprResult r = exec_expr(*stmt.expr, vs, qs, sink, stats);
            bind(stmt.slot, *stmt.expr, r, vs, qs);
            break;
        }
        case Stmt::Kind::Assign: {
            ExprResult r = exec_expr(*stmt.expr, vs, qs, sink, stats);
            bind(stmt.slot, *stmt.expr, r, vs, qs);
            break;
        }
        case Stmt::Kind::CompoundAdd: {
            ExprResult rhs = exec_expr(*stmt.expr, vs, qs, sink, stats);
            if (tracked_value(stmt.slot)) {
                bool string_result = method_.slots[stmt.slot].type == JavaType::String;
                vs.slots[stmt.slot] = const_add(vs.slots[stmt.slot], rhs.value, string_result);
            }
            break;
        }
        case Stmt::Kind::ExprStmt:
            exec_expr(*stmt.expr, vs, qs, sink, stats);
            break;
        case Stmt::Kind::Return: {
            if (!stmt.expr) break;
            ExprResult r = exec_expr(*stmt.expr, vs, qs, sink, stats);
            if (sink && declared_return_ && !is_subtype(r.qual, *declared_return_)) {
                bool quiet = options_.mode == Mode::Degraded &&
                             r.qual.kind == SqlQualifier::Kind::Unsupported;
                if (!quiet) {
                    Diagnostic d = make_diag(
                        DiagCode::AnnotationReturnMismatch, Severity::Error, stmt.span,
                        "returned value does not satisfy the declared @Sql return type");
                    d.expected = render_qualifier(*declared_return_);
                    d.actual = render_qualifier(r.qual);
                    sink->push_back(std::move(d));
                }
            }
            break;
        }
        case Stmt::Kind::If:
        case Stmt::Kind::While:
            break;  // never inside CFG blocks
        }
    }

    void bind(int slot, const Expr& init, const ExprResult& r, ValueState& vs,
              QualifierState& qs) {
        if (tracked_value(slot)) {
            vs.slots[slot] =
                init.kind == Expr::Kind::NullLit ? ConstValue::top() : r.value;
        }
        if (is_api_type(method_.slots[slot].type)) {
            qs.slots[slot] =
                init.kind == Expr::Kind::NullLit ? SqlQualifier::unknown() : r.qual;
        }
    }

    bool tracked_value(int slot) const {
        return slot >= 0 && is_tracked_value_type(method_.slots[slot].type);
    }

    ExprResult exec_expr(const Expr& expr, ValueState& vs, QualifierState& qs,
                         std::vector<Diagnostic>* sink, CheckStats* stats) {
        ExprResult result;
        switch (expr.kind) {
        case Expr::Kind::StringLit:
            result.value = ConstValue::of_string(expr.str_value);
            return result;
        case Expr::Kind::IntLit:
            result.value = ConstValue::of_int(expr.int_value);
            return result;
        case Expr::Kind::BoolLit:
        case Expr::Kind::NullLit:
            return result;
        case Expr::Kind::VarRef:
            if (tracked_value(expr.slot)) result.value = vs.slots[expr.slot];
            if (is_api_type(method_.slots[expr.slot].type)) result.qual = qs.slots[expr.slot];
            return result;
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
                if (operand.kind != Expr::Kind::VarRef || !tracked_value(operand.slot))
                    return result;
                ConstValue before = vs.slots[operand.slot];
                ConstValue after = const_shift(before, delta);
                vs.slots[operand.slot] = after;
                bool pre = expr.un_op == Expr::UnOp::PreInc || expr.un_op == Expr::UnOp::PreDec;
                result.value = pre ? after : before;
                return result;
            }
            case Expr::UnOp::Not:
                exec_expr(operand, vs, qs, sink, stats);
                return result;
            case Expr::UnOp::Neg: {
                ExprResult inner = exec_expr(operand, vs, qs, sink, stats);
                if (inner.value.is_known() && !inner.value.string_domain) {
                    std::set<long long> out;
                    for (long long x : inner.value.ints) out.insert(-x);
                    result.value = ConstValue::known_ints(std::move(out));
                } else if (inner.value.is_bottom()) {
                    result.value = inner.value;
                }
                return result;
            }
            }
            return result;
        }
        case Expr::Kind::Binary: {
            ExprResult a = exec_expr(*expr.lhs, vs, qs, sink, stats);
            ExprResult b = exec_expr(*expr.rhs, vs, qs, sink, stats);
            if (expr.bin_op == Expr::BinOp::Add)
                result.value = const_add(a.value, b.value, expr.static_type == JavaType::String);
            else if (expr.bin_op == Expr::BinOp::Sub)
                result.value = const_sub(a.value, b.value);
            return result;
        }
        case Expr::Kind::Call:
            return exec_call(expr, vs, qs, sink, stats);
        }
        return result;
    }

    ExprResult exec_call(const Expr& call, ValueState& vs, QualifierState& qs,
                         std::vector<Diagnostic>* sink, CheckStats* stats) {
        ExprResult result;
        std::vector<ExprResult> args;
        args.reserve(call.args.size());
        for (const ExprPtr& arg : call.args)
            args.push_back(exec_expr(*arg, vs, qs, sink, stats));

        if (!call.has_receiver) {
            check_local_call(call, args, sink);
            auto callee = annos_.methods.find(call.method);
            if (callee != annos_.methods.end() && callee->second.return_qualifier)
                result.qual = *callee->second.return_qualifier;
            return result;
        }

        JavaType recv_type =
            call.recv_slot >= 0 ? method_.slots[call.recv_slot].type : JavaType::Other;
        ApiCallInfo info = classify_call(recv_type, call.method);

        auto receiver_qualifier = [&]() -> SqlQualifier {
            if (call.recv_slot >= 0 && is_api_type(recv_type)) return qs.slots[call.recv_slot];
            return SqlQualifier::unknown();
        };

        if (info.creates_sql_statement || info.executes_with_sql) {
            ConstValue sql_value = ConstValue::top();
            if (info.sql_arg_index >= 0 &&
                static_cast<std::size_t>(info.sql_arg_index) < args.size())
                sql_value = args[static_cast<std::size_t>(info.sql_arg_index)].value;
            IntroduceResult intro =
                introduce_statement_qualifier(sql_value, catalog_, options_.mode, call.span);
            if (sink) {
                for (Diagnostic& d : intro.diagnostics) sink->push_back(std::move(d));
            }
            if (info.executes_with_sql) {
                // the receiver executed this SQL; refine it
                if (call.recv_slot >= 0 && is_api_type(recv_type))
                    qs.slots[call.recv_slot] = intro.qualifier;
                return result;
            }
            if (info.retrieves_result_set) {
                // Statement.executeQuery(sql): refine the receiver and hand
                // the out-only signature to the result set
                if (call.recv_slot >= 0 && is_api_type(recv_type))
                    qs.slots[call.recv_slot] = intro.qualifier;
                result.qual = out_only(intro.qualifier);
                return result;
            }
            result.qual = intro.qualifier;  // prepareStatement
            return result;
        }

        if (info.retrieves_result_set) {
            SqlQualifier rq = receiver_qualifier();
            switch (rq.kind) {
            case SqlQualifier::Kind::Sql:
                result.qual = out_only(rq);
                return result;
            case SqlQualifier::Kind::Unsupported:
                if (sink && options_.mode == Mode::Sound) {
                    sink->push_back(make_diag(
                        DiagCode::UncheckedAccess, Severity::Error, call.span,
                        "result set retrieved from a statement whose SQL could not be analyzed"));
                }
                result.qual = SqlQualifier::unsupported();
                return result;
            case SqlQualifier::Kind::Unknown:
                if (sink) {
                    if (options_.mode == Mode::Sound) {
                        sink->push_back(make_diag(DiagCode::NonlocalAccess, Severity::Error,
                                                  call.span,
                                                  "non-local access: receiver has no SQL type "
                                                  "information in this method"));
                    } else {
                        sink->push_back(make_diag(
                            DiagCode::OutOfScope, Severity::Info, call.span,
                            "result set not tracked: receiver has no local SQL type information"));
                    }
                }
                result.qual = SqlQualifier::unknown();
                return result;
            case SqlQualifier::Kind::Bottom:
                result.qual = SqlQualifier::bottom();
                return result;
            }
            return result;
        }

        if (info.setter) {
            ConstValue index = args.empty() ? ConstValue::top() : args[0].value;
            AccessCheck check =
                verify_setter(receiver_qualifier(), *info.setter, index, conversions_,
                              options_.mode, options_.supported_as_warning, call.span);
            record_access(check, true, sink, stats);
            return result;
        }

        if (info.getter) {
            bool name_is_string =
                !call.args.empty() && call.args[0]->static_type == JavaType::String;
            ConstValue arg = args.empty() ? ConstValue::top() : args[0].value;
            AccessCheck check =
                verify_getter(receiver_qualifier(), *info.getter, name_is_string, arg,
                              conversions_, options_.mode, options_.supported_as_warning,
                              call.span);
            record_access(check, false, sink, stats);
            return result;
        }

        return result;  // CursorNext and unclassified calls
    }

    void check_local_call(const Expr& call, const std::vector<ExprResult>& args,
                          std::vector<Diagnostic>* sink) {
        if (!sink) return;
        auto annos = annos_.methods.find(call.method);
        if (annos == annos_.methods.end()) return;
        auto target = annos_.methods_by_name.find(call.method);
        if (target == annos_.methods_by_name.end()) return;
        if (target->second->params.size() != args.size()) return;
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i >= annos->second.params.size() || !annos->second.params[i]) continue;
            const SqlQualifier& declared = *annos->second.params[i];
            const SqlQualifier& actual = args[i].qual;
            if (is_subtype(actual, declared)) continue;
            if (options_.mode == Mode::Degraded &&
                actual.kind == SqlQualifier::Kind::Unsupported)
                continue;  // already warned at the statement itself
            Diagnostic d = make_diag(DiagCode::AnnotationArgMismatch, Severity::Error,
                                     call.span,
                                     "argument " + std::to_string(i + 1) + " of '" +
                                         call.method +
                                         "' does not satisfy the declared @Sql annotation");
            d.expected = render_qualifier(declared);
            d.actual = render_qualifier(actual);
            sink->push_back(std::move(d));
        }
    }

    static SqlQualifier out_only(const SqlQualifier& q) {
        if (q.kind != SqlQualifier::Kind::Sql) return q;
        QuerySignature sig;
        sig.out = q.sig.out;
        return SqlQualifier::sql(std::move(sig));
    }

    void record_access(AccessCheck& check, bool is_setter, std::vector<Diagnostic>* sink,
                       CheckStats* stats) {
        if (sink) {
            for (Diagnostic& d : check.diagnostics) sink->push_back(std::move(d));
        }
        if (stats) {
            if (check.counted_checked) {
                if (is_setter)
                    ++stats->checked_setters;
                else
                    ++stats->checked_getters;
            }
            if (check.counted_out_of_scope) ++stats->out_of_scope;
            if (check.counted_unchecked) ++stats->unchecked_accesses;
        }
    }

    const Method& method_;
    const ClassAnnotations& annos_;
    const SchemaCatalog& catalog_;
    const ConversionTable& conversions_;
    const CheckOptions& options_;
    std::optional<SqlQualifier> declared_return_;
};

struct FileOutcome {
    std::vector<Diagnostic> diagnostics;
    CheckStats stats;
    std::vector<std::string> tool_errors;
};

FileOutcome check_file(const SourceFile& source, const SchemaCatalog& catalog,
                       const ConversionTable& conversions, const CheckOptions& options) {
    FileOutcome outcome;
    Ast ast;
    try {
        ast = parse_java(source.text, source.path);
    } catch (const JavaParseError& e) {
        outcome.tool_errors.push_back(source.path + ":" + std::to_string(e.span.line) + ":" +
                                      std::to_string(e.span.column) + ": " + e.what());
        return outcome;
    }

    for (const SubsetViolation& v : ast.violations) {
        std::string message;
        if (v.method.empty()) {
            message = "skipped: " + v.construct + " is outside the analyzed subset";
        } else {
            message = "method '" + v.method + "' skipped: " + v.construct +
                      " is outside the analyzed subset";
        }
        outcome.diagnostics.push_back(make_diag(DiagCode::SubsetViolationCode,
                                                Severity::Warning, v.span, std::move(message)));
    }

    for (const ClassDecl& cls : ast.classes) {
        ClassAnnotations annos;
        try {
            annos = collect_annotations(cls);
        } catch (const AnnotationError& e) {
            outcome.tool_errors.push_back(source.path + ": class " + cls.name +
                                          ": invalid @Sql annotation: " + e.what());
            continue;
        }
        for (const Method& m : cls.methods) {
            if (!m.analyzable) continue;
            MethodChecker checker(m, annos, catalog, conversions, options);
            checker.run(outcome.diagnostics, outcome.stats);
        }
    }
    return outcome;
}

} // namespace

CheckResult check_program(const std::vector<SourceFile>& sources, const SchemaCatalog& catalog,
                          const ConversionTable& conversions, const CheckOptions& options) {
    CheckResult result;
    std::vector<FileOutcome> outcomes(sources.size());

    unsigned workers = options.jobs > 0 ? static_cast<unsigned>(options.jobs)
                                        : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, std::max<std::size_t>(sources.size(), 1));

    if (workers <= 1 || sources.size() <= 1) {
        for (std::size_t i = 0; i < sources.size(); ++i)
            outcomes[i] = check_file(sources[i], catalog, conversions, options);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= sources.size()) return;
                    outcomes[i] = check_file(sources[i], catalog, conversions, options);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }

    for (FileOutcome& outcome : outcomes) {
        for (Diagnostic& d : outcome.diagnostics) result.diagnostics.push_back(std::move(d));
        result.stats += outcome.stats;
        for (std::string& e : outcome.tool_errors) result.tool_errors.push_back(std::move(e));
    }
    sort_diagnostics(result.diagnostics);
    return result;
}

} // namespace oopsie
