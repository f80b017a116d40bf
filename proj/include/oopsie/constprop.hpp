#pragma once

// Forward dataflow over String and int locals: bounded-set constant lattice
// (Bottom below Known sets of up to kConstCap values below Top), transfer
// per statement, pointwise join, worklist fixpoint over the CFG.

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "oopsie/javafront.hpp"

namespace oopsie {

inline constexpr int kConstCap = 10;

struct ConstValue {
    enum class Kind { Bottom, Known, Top };

    Kind kind = Kind::Top;
    bool string_domain = false;          // meaningful when kind == Known
    std::set<std::string> strings;       // Known, string domain
    std::set<long long> ints;            // Known, int domain

    static ConstValue bottom() { return {Kind::Bottom, false, {}, {}}; }
    static ConstValue top() { return {Kind::Top, false, {}, {}}; }
    static ConstValue of_string(std::string v) {
        return {Kind::Known, true, {std::move(v)}, {}};
    }
    static ConstValue of_int(long long v) { return {Kind::Known, false, {}, {v}}; }
    static ConstValue known_strings(std::set<std::string> vs);
    static ConstValue known_ints(std::set<long long> vs);

    bool is_known() const { return kind == Kind::Known; }
    bool is_top() const { return kind == Kind::Top; }
    bool is_bottom() const { return kind == Kind::Bottom; }
    bool single_string() const { return is_known() && string_domain && strings.size() == 1; }
    bool single_int() const { return is_known() && !string_domain && ints.size() == 1; }

    friend bool operator==(const ConstValue& a, const ConstValue& b) {
        if (a.kind != b.kind) return false;
        if (a.kind != Kind::Known) return true;
        if (a.string_domain != b.string_domain) return false;
        return a.string_domain ? a.strings == b.strings : a.ints == b.ints;
    }
};

ConstValue join_const(const ConstValue& a, const ConstValue& b);
bool const_le(const ConstValue& a, const ConstValue& b);  // lattice order

// Primitive value arithmetic shared by every evaluator: `+` (concatenation
// when the result is a String, wrapping add otherwise), `-`, and the ++/--
// shift. Cross products of Known sets cap at kConstCap and collapse to Top.
ConstValue const_add(const ConstValue& a, const ConstValue& b, bool string_result);
ConstValue const_sub(const ConstValue& a, const ConstValue& b);
ConstValue const_shift(const ConstValue& v, long long delta);

struct ValueState {
    std::vector<ConstValue> slots;

    friend bool operator==(const ValueState& a, const ValueState& b) {
        return a.slots == b.slots;
    }
};

// Entry state of a method: parameters Top, locals Bottom until declared.
ValueState entry_value_state(const Method& method);

ValueState join_value(const ValueState& a, const ValueState& b);

// Evaluates an expression against the state, applying side effects (x++,
// nested call arguments) in evaluation order.
ConstValue eval_expr(const Expr& expr, const Method& method, ValueState& state);

// State after a simple (non-branching) statement.
ValueState transfer_value(const Stmt& stmt, const Method& method, ValueState state);

struct ValueAnalysis {
    std::vector<ValueState> block_entry;  // indexed by CFG block
    int solver_visits = 0;                // total block visits of the fixpoint

    // Pre-state of every simple statement, in block order.
    void for_each_point(const Cfg& cfg, const Method& method,
                        const std::function<void(int block, int index, const Stmt&,
                                                 const ValueState&)>& fn) const;
};

ValueAnalysis solve_values(const Cfg& cfg, const Method& method);

} // namespace oopsie
