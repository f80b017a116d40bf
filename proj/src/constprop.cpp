#include "oopsie/constprop.hpp"

#include <algorithm>
#include <deque>

namespace oopsie {

namespace {

bool tracked(const Method& m, int slot) {
    return slot >= 0 && is_tracked_value_type(m.slots[slot].type);
}

bool slot_is_string(const Method& m, int slot) {
    return m.slots[slot].type == JavaType::String;
}

} // namespace

ConstValue ConstValue::known_strings(std::set<std::string> vs) {
    if (vs.empty()) return bottom();
    if (vs.size() > static_cast<std::size_t>(kConstCap)) return top();
    ConstValue v;
    v.kind = Kind::Known;
    v.string_domain = true;
    v.strings = std::move(vs);
    return v;
}

ConstValue ConstValue::known_ints(std::set<long long> vs) {
    if (vs.empty()) return bottom();
    if (vs.size() > static_cast<std::size_t>(kConstCap)) return top();
    ConstValue v;
    v.kind = Kind::Known;
    v.string_domain = false;
    v.ints = std::move(vs);
    return v;
}

ConstValue const_add(const ConstValue& a, const ConstValue& b, bool string_result) {
    if (a.is_bottom() || b.is_bottom()) return ConstValue::bottom();
    if (a.is_top() || b.is_top()) return ConstValue::top();
    if (string_result) {
        // concatenation; int operands render in decimal
        auto render = [](const ConstValue& v) {
            if (v.string_domain) return v.strings;
            std::set<std::string> out;
            for (long long i : v.ints) out.insert(std::to_string(i));
            return out;
        };
        std::set<std::string> out;
        for (const std::string& x : render(a)) {
            for (const std::string& y : render(b)) {
                out.insert(x + y);
                if (out.size() > static_cast<std::size_t>(kConstCap)) return ConstValue::top();
            }
        }
        return ConstValue::known_strings(std::move(out));
    }
    if (a.string_domain || b.string_domain) return ConstValue::top();
    std::set<long long> out;
    for (long long x : a.ints) {
        for (long long y : b.ints) {
            out.insert(static_cast<long long>(static_cast<unsigned long long>(x) +
                                              static_cast<unsigned long long>(y)));
            if (out.size() > static_cast<std::size_t>(kConstCap)) return ConstValue::top();
        }
    }
    return ConstValue::known_ints(std::move(out));
}

ConstValue const_sub(const ConstValue& a, const ConstValue& b) {
    if (a.is_bottom() || b.is_bottom()) return ConstValue::bottom();
    if (a.is_top() || b.is_top() || a.string_domain || b.string_domain)
        return ConstValue::top();
    std::set<long long> out;
    for (long long x : a.ints) {
        for (long long y : b.ints) {
            out.insert(static_cast<long long>(static_cast<unsigned long long>(x) -
                                              static_cast<unsigned long long>(y)));
            if (out.size() > static_cast<std::size_t>(kConstCap)) return ConstValue::top();
        }
    }
    return ConstValue::known_ints(std::move(out));
}

ConstValue const_shift(const ConstValue& v, long long delta) {
    if (!v.is_known()) return v;
    if (v.string_domain) return ConstValue::top();
    std::set<long long> out;
    for (long long x : v.ints)
        out.insert(static_cast<long long>(static_cast<unsigned long long>(x) +
                                          static_cast<unsigned long long>(delta)));
    return ConstValue::known_ints(std::move(out));
}

ConstValue join_const(const ConstValue& a, const ConstValue& b) {
    if (a.is_bottom()) return b;
    if (b.is_bottom()) return a;
    if (a.is_top() || b.is_top()) return ConstValue::top();
    if (a.string_domain != b.string_domain) return ConstValue::top();
    if (a.string_domain) {
        std::set<std::string> out = a.strings;
        out.insert(b.strings.begin(), b.strings.end());
        return ConstValue::known_strings(std::move(out));
    }
    std::set<long long> out = a.ints;
    out.insert(b.ints.begin(), b.ints.end());
    return ConstValue::known_ints(std::move(out));
}

bool const_le(const ConstValue& a, const ConstValue& b) {
    if (a.is_bottom() || b.is_top()) return true;
    if (a.is_top() || b.is_bottom()) return false;
    if (a.string_domain != b.string_domain) return false;
    if (a.string_domain)
        return std::includes(b.strings.begin(), b.strings.end(), a.strings.begin(),
                             a.strings.end());
    return std::includes(b.ints.begin(), b.ints.end(), a.ints.begin(), a.ints.end());
}

ValueState entry_value_state(const Method& method) {
    ValueState state;
    state.slots.reserve(method.slots.size());
    for (const VarSlot& slot : method.slots) {
        state.slots.push_back(slot.is_param ? ConstValue::top() : ConstValue::bottom());
    }
    return state;
}

ValueState join_value(const ValueState& a, const ValueState& b) {
    ValueState out;
    std::size_t n = std::max(a.slots.size(), b.slots.size());
    out.slots.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        ConstValue x = i < a.slots.size() ? a.slots[i] : ConstValue::top();
        ConstValue y = i < b.slots.size() ? b.slots[i] : ConstValue::top();
        out.slots.push_back(join_const(x, y));
    }
    return out;
}

ConstValue eval_expr(const Expr& expr, const Method& method, ValueState& state) {
    switch (expr.kind) {
    case Expr::Kind::StringLit:
        return ConstValue::of_string(expr.str_value);
    case Expr::Kind::IntLit:
        return ConstValue::of_int(expr.int_value);
    case Expr::Kind::BoolLit:
    case Expr::Kind::NullLit:
        return ConstValue::top();
    case Expr::Kind::VarRef:
        if (tracked(method, expr.slot)) return state.slots[expr.slot];
        return ConstValue::top();
    case Expr::Kind::Unary: {
        const Expr& operand = *expr.lhs;
        switch (expr.un_op) {
        case Expr::UnOp::PreInc:
        case Expr::UnOp::PreDec:
        case Expr::UnOp::PostInc:
        case Expr::UnOp::PostDec: {
            long long delta =
                (expr.un_op == Expr::UnOp::PreInc || expr.un_op == Expr::UnOp::PostInc) ? 1 : -1;
            if (operand.kind != Expr::Kind::VarRef || !tracked(method, operand.slot))
                return ConstValue::top();
            ConstValue before = state.slots[operand.slot];
            ConstValue after = const_shift(before, delta);
            state.slots[operand.slot] = after;
            bool pre = expr.un_op == Expr::UnOp::PreInc || expr.un_op == Expr::UnOp::PreDec;
            return pre ? after : before;
        }
        case Expr::UnOp::Not:
            eval_expr(operand, method, state);
            return ConstValue::top();
        case Expr::UnOp::Neg: {
            ConstValue v = eval_expr(operand, method, state);
            if (!v.is_known() || v.string_domain) return v.is_bottom() ? v : ConstValue::top();
            std::set<long long> out;
            for (long long x : v.ints) out.insert(-x);
            return ConstValue::known_ints(std::move(out));
        }
        }
        return ConstValue::top();
    }
    case Expr::Kind::Binary: {
        ConstValue a = eval_expr(*expr.lhs, method, state);
        ConstValue b = eval_expr(*expr.rhs, method, state);
        switch (expr.bin_op) {
        case Expr::BinOp::Add:
            return const_add(a, b, expr.static_type == JavaType::String);
        case Expr::BinOp::Sub:
            return const_sub(a, b);
        default:
            return ConstValue::top();  // comparisons and booleans are untracked
        }
    }
    case Expr::Kind::Call:
        // argument evaluation may carry side effects (setInt(ctr++, ...))
        for (const ExprPtr& arg : expr.args) eval_expr(*arg, method, state);
        return ConstValue::top();
    }
    return ConstValue::top();
}

ValueState transfer_value(const Stmt& stmt, const Method& method, ValueState state) {
    switch (stmt.kind) {
    case Stmt::Kind::LocalDecl: {
        ConstValue v = stmt.expr ? eval_expr(*stmt.expr, method, state) : ConstValue::bottom();
        if (tracked(method, stmt.slot)) {
            if (!stmt.expr) {
                state.slots[stmt.slot] = ConstValue::bottom();
            } else if (stmt.expr->kind == Expr::Kind::NullLit) {
                state.slots[stmt.slot] = ConstValue::top();
            } else {
                state.slots[stmt.slot] = v;
            }
        }
        break;
    }
    case Stmt::Kind::Assign: {
        ConstValue v = eval_expr(*stmt.expr, method, state);
        if (tracked(method, stmt.slot))
            state.slots[stmt.slot] =
                stmt.expr->kind == Expr::Kind::NullLit ? ConstValue::top() : v;
        break;
    }
    case Stmt::Kind::CompoundAdd: {
        // x += e desugars to x = x + e
        ConstValue rhs = eval_expr(*stmt.expr, method, state);
        if (tracked(method, stmt.slot)) {
            state.slots[stmt.slot] =
                const_add(state.slots[stmt.slot], rhs, slot_is_string(method, stmt.slot));
        }
        break;
    }
    case Stmt::Kind::ExprStmt:
    case Stmt::Kind::Return:
        if (stmt.expr) eval_expr(*stmt.expr, method, state);
        break;
    case Stmt::Kind::If:
    case Stmt::Kind::While:
        break;  // structured statements never appear inside CFG blocks
    }
    return state;
}

void ValueAnalysis::for_each_point(
    const Cfg& cfg, const Method& method,
    const std::function<void(int, int, const Stmt&, const ValueState&)>& fn) const {
    for (std::size_t b = 0; b < cfg.blocks.size(); ++b) {
        ValueState state = block_entry[b];
        const auto& stmts = cfg.blocks[b].stmts;
        for (std::size_t i = 0; i < stmts.size(); ++i) {
            fn(static_cast<int>(b), static_cast<int>(i), *stmts[i], state);
            state = transfer_value(*stmts[i], method, std::move(state));
        }
    }
}

ValueAnalysis solve_values(const Cfg& cfg, const Method& method) {
    ValueAnalysis analysis;
    const std::size_t n = cfg.blocks.size();
    analysis.block_entry.assign(n, ValueState{});
    std::vector<bool> seen(n, false);

    analysis.block_entry[cfg.entry] = entry_value_state(method);
    seen[cfg.entry] = true;

    std::deque<int> work{cfg.entry};
    std::vector<bool> queued(n, false);
    queued[cfg.entry] = true;

    while (!work.empty()) {
        int b = work.front();
        work.pop_front();
        queued[b] = false;
        ++analysis.solver_visits;

        ValueState state = analysis.block_entry[b];
        for (const Stmt* stmt : cfg.blocks[b].stmts)
            state = transfer_value(*stmt, method, std::move(state));
        if (cfg.blocks[b].guard) eval_expr(*cfg.blocks[b].guard, method, state);

        for (int succ : cfg.blocks[b].succs) {
            ValueState merged =
                seen[succ] ? join_value(analysis.block_entry[succ], state) : state;
            if (!seen[succ] || !(merged == analysis.block_entry[succ])) {
                analysis.block_entry[succ] = std::move(merged);
                seen[succ] = true;
                if (!queued[succ]) {
                    queued[succ] = true;
                    work.push_back(succ);
                }
            }
        }
    }
    return analysis;
}

} // namespace oopsie
