#pragma once

// Pre-order traversal helpers. Each comes in a const and a mutable flavour;
// callbacks receive every node of the requested kind, nested ones included.

#include <type_traits>

#include "vmorph/ast.hpp"

namespace vmorph::ast {

template <class E, class F>
void walk_expr(E& e, F&& f) {
    f(e);
    std::visit(
        [&f](auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, UnaryExpr>) {
                walk_expr(*n.operand, f);
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                walk_expr(*n.lhs, f);
                walk_expr(*n.rhs, f);
            } else if constexpr (std::is_same_v<T, TernaryExpr>) {
                walk_expr(*n.cond, f);
                walk_expr(*n.if_true, f);
                walk_expr(*n.if_false, f);
            } else if constexpr (std::is_same_v<T, CallExpr>) {
                if (n.receiver) walk_expr(**n.receiver, f);
                for (auto& a : n.args) walk_expr(a, f);
            } else if constexpr (std::is_same_v<T, FieldAccessExpr>) {
                walk_expr(*n.object, f);
            } else if constexpr (std::is_same_v<T, AssignExpr>) {
                walk_expr(*n.target, f);
                walk_expr(*n.value, f);
            } else if constexpr (std::is_same_v<T, NewExpr>) {
                for (auto& a : n.args) walk_expr(a, f);
            }
        },
        e.node);
}

// Calls `f` on every statement in `s` (including `s`) in pre-order.
template <class S, class F>
void walk_stmt(S& s, F&& f);

template <class B, class F>
void walk_block(B& b, F&& f) {
    for (auto& s : b.stmts) walk_stmt(s, f);
}

template <class S, class F>
void walk_stmt(S& s, F&& f) {
    f(s);
    std::visit(
        [&f](auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Block>) {
                walk_block(n, f);
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                walk_block(n.then_block, f);
                if (n.else_block) walk_block(*n.else_block, f);
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
                walk_block(n.body, f);
            } else if constexpr (std::is_same_v<T, ForStmt>) {
                for (auto& i : n.init) walk_stmt(i, f);
                walk_block(n.body, f);
            } else if constexpr (std::is_same_v<T, SwitchStmt>) {
                for (auto& c : n.cases) {
                    for (auto& b : c.body) walk_stmt(b, f);
                }
            }
        },
        s.node);
}

// Calls `f` on the expressions owned directly by `s` (not by nested
// statements), in source order.
template <class S, class F>
void for_each_direct_expr(S& s, F&& f) {
    std::visit(
        [&f](auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, IfStmt> || std::is_same_v<T, WhileStmt>) {
                f(n.cond);
            } else if constexpr (std::is_same_v<T, ForStmt>) {
                if (n.cond) f(*n.cond);
                for (auto& u : n.update) f(u);
            } else if constexpr (std::is_same_v<T, SwitchStmt>) {
                f(n.scrutinee);
            } else if constexpr (std::is_same_v<T, LocalVarDecl>) {
                if (n.init) f(*n.init);
            } else if constexpr (std::is_same_v<T, ExprStmt>) {
                f(n.expr);
            } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                if (n.value) f(*n.value);
            } else if constexpr (std::is_same_v<T, ThrowStmt>) {
                f(n.value);
            }
        },
        s.node);
}

// Every expression node anywhere inside `s`.
template <class S, class F>
void walk_exprs_in_stmt(S& s, F&& f) {
    walk_stmt(s, [&f](auto& st) { for_each_direct_expr(st, [&f](auto& e) { walk_expr(e, f); }); });
}

template <class B, class F>
void walk_exprs_in_block(B& b, F&& f) {
    for (auto& s : b.stmts) walk_exprs_in_stmt(s, f);
}

}  // namespace vmorph::ast
