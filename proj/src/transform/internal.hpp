#pragma once

// Shared machinery for the rewrite rules: evaluation-order checks, effect
// summaries, static types and fresh names.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vmorph/ast.hpp"
#include "vmorph/transform.hpp"

namespace vmorph::detail {

using namespace ast;

// True for expressions whose evaluation has no effect, cannot throw, and
// cannot observe effects of calls: locals, literals, `this`, class names, and
// non-dividing operators over those.
bool is_trivial(const Expr& e, const TransformContext& ctx);

// Whether `target`, a node inside `root`, can be evaluated before the rest of
// `root` without changing behaviour: every evaluation that precedes it is
// trivial and reads nothing in `moved_writes`, and it is not under a
// short-circuit or ternary branch.
bool evaluated_first(const Expr& root, const Expr* target, const std::set<std::string>& moved_writes,
                     const TransformContext& ctx);

// Names assigned anywhere inside `e` (targets of `=`; fields by field name).
std::set<std::string> assigned_names(const Expr& e);

// The expression of a statement that a declaration may be hoisted out of:
// expression statements, initializers, return/throw values, if conditions.
const Expr* hoist_root(const Stmt& s);
Expr* hoist_root(Stmt& s);

std::optional<std::string> static_type(const Expr& e, const TransformContext& ctx);

// A fresh local name for the value of `e`, reserved in ctx.taken_names.
std::string fresh_name(const Expr& e, TransformContext& ctx);

// Number of reads of `name` inside the statements (any depth).
int count_uses(const std::vector<Stmt>& stmts, const std::string& name);
int count_uses(const Stmt& s, const std::string& name);

// True if `s` contains a `continue` / `break` that would bind to a loop or
// switch enclosing `s` (nested loops, and switches for break, are skipped).
bool has_free_continue(const Stmt& s);
bool has_free_break(const Stmt& s);
bool has_free_continue(const std::vector<Stmt>& stmts);
bool has_free_break(const std::vector<Stmt>& stmts);

// Last statement of the list leaves it (return, throw, break, continue).
bool ends_abruptly(const std::vector<Stmt>& stmts);

Expr negate(const Expr& cond);

// One hoisting step on a statement: the declaration to insert before it and
// the rewritten statement. `chain` selects split (innermost chain receiver)
// over extract (call argument that is itself a call or `new`).
struct Hoisted {
    Stmt decl;
    Stmt stmt;
    Span site;
    std::string note;
};
Result<Hoisted> hoist_once(const Stmt& s, bool chain, TransformContext& ctx);

// Folds the declaration at stmts[i] into stmts[i + 1]; `chain` selects merge
// (use as call receiver) over inline (use as call argument).
Result<std::vector<Stmt>> fold_at(const std::vector<Stmt>& stmts, std::size_t i, bool chain,
                                  const TransformContext& ctx);

// Swaps independent adjacent pairs left to right; see reorder_statements.
void reorder_list(std::vector<Stmt>& stmts, const TransformContext& ctx, TransformReport* report);

Stmt expr_stmt(Expr e, const Span& span);
Block make_block(std::vector<Stmt> stmts, const Span& span);

// Calls `f` on each statement list directly owned by `s`: nested block,
// branches, loop body, switch case bodies.
template <class F>
void for_each_child_list(Stmt& s, F&& f) {
    std::visit(
        [&f](auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Block>) {
                f(n.stmts);
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                f(n.then_block.stmts);
                if (n.else_block) f(n.else_block->stmts);
            } else if constexpr (std::is_same_v<T, WhileStmt> || std::is_same_v<T, ForStmt>) {
                f(n.body.stmts);
            } else if constexpr (std::is_same_v<T, SwitchStmt>) {
                for (auto& c : n.cases) f(c.body);
            }
        },
        s.node);
}

}  // namespace vmorph::detail
