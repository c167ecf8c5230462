#include "vmorph/structural.hpp"

namespace vmorph {

namespace {

using namespace ast;

bool eq(const Comments& a, const Comments& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].text != b[i].text) return false;
    }
    return true;
}

bool eq(const TypeRef& a, const TypeRef& b) { return a.name == b.name; }

bool eq(const std::optional<TypeRef>& a, const std::optional<TypeRef>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || eq(*a, *b);
}

bool eq(const LiteralExpr& a, const LiteralExpr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case LiteralKind::Int: return a.int_value == b.int_value;
        case LiteralKind::Bool: return a.bool_value == b.bool_value;
        case LiteralKind::String: return a.text == b.text;
        case LiteralKind::Null: return true;
    }
    return false;
}

template <class T, class F>
bool eq_list(const std::vector<T>& a, const std::vector<T>& b, F&& f) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!f(a[i], b[i])) return false;
    }
    return true;
}

bool eq_exprs(const std::vector<Expr>& a, const std::vector<Expr>& b) {
    return eq_list(a, b, [](const Expr& x, const Expr& y) { return structurally_equal(x, y); });
}

bool eq_stmts(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
    return eq_list(a, b, [](const Stmt& x, const Stmt& y) { return structurally_equal(x, y); });
}

bool eq_opt(const std::optional<Expr>& a, const std::optional<Expr>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || structurally_equal(*a, *b);
}

bool eq_node(const NameExpr& a, const NameExpr& b) { return a.name == b.name; }
bool eq_node(const LiteralExpr& a, const LiteralExpr& b) { return eq(a, b); }
bool eq_node(const UnaryExpr& a, const UnaryExpr& b) {
    return a.op == b.op && structurally_equal(*a.operand, *b.operand);
}
bool eq_node(const BinaryExpr& a, const BinaryExpr& b) {
    return a.op == b.op && structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
}
bool eq_node(const TernaryExpr& a, const TernaryExpr& b) {
    return structurally_equal(*a.cond, *b.cond) && structurally_equal(*a.if_true, *b.if_true) &&
           structurally_equal(*a.if_false, *b.if_false);
}
bool eq_node(const CallExpr& a, const CallExpr& b) {
    if (a.method != b.method || a.receiver.has_value() != b.receiver.has_value()) return false;
    if (a.receiver && !structurally_equal(**a.receiver, **b.receiver)) return false;
    return eq_exprs(a.args, b.args);
}
bool eq_node(const FieldAccessExpr& a, const FieldAccessExpr& b) {
    return a.field == b.field && structurally_equal(*a.object, *b.object);
}
bool eq_node(const AssignExpr& a, const AssignExpr& b) {
    return structurally_equal(*a.target, *b.target) && structurally_equal(*a.value, *b.value);
}
bool eq_node(const NewExpr& a, const NewExpr& b) { return eq(a.type, b.type) && eq_exprs(a.args, b.args); }

bool eq_node(const Block& a, const Block& b) { return structurally_equal(a, b); }
bool eq_node(const IfStmt& a, const IfStmt& b) {
    if (!structurally_equal(a.cond, b.cond) || !structurally_equal(a.then_block, b.then_block)) return false;
    if (a.else_block.has_value() != b.else_block.has_value()) return false;
    return !a.else_block || structurally_equal(*a.else_block, *b.else_block);
}
bool eq_node(const WhileStmt& a, const WhileStmt& b) {
    return structurally_equal(a.cond, b.cond) && structurally_equal(a.body, b.body);
}
bool eq_node(const ForStmt& a, const ForStmt& b) {
    return eq_stmts(a.init, b.init) && eq_opt(a.cond, b.cond) && eq_exprs(a.update, b.update) &&
           structurally_equal(a.body, b.body);
}
bool eq_node(const SwitchStmt& a, const SwitchStmt& b) {
    if (!structurally_equal(a.scrutinee, b.scrutinee)) return false;
    return eq_list(a.cases, b.cases, [](const SwitchCase& x, const SwitchCase& y) {
        return eq_list(x.labels, y.labels,
                       [](const CaseLabel& p, const CaseLabel& q) {
                           return p.is_default == q.is_default && (p.is_default || eq(p.value, q.value));
                       }) &&
               eq_stmts(x.body, y.body);
    });
}
bool eq_node(const LocalVarDecl& a, const LocalVarDecl& b) {
    return eq(a.type, b.type) && a.is_final == b.is_final && a.name == b.name && eq_opt(a.init, b.init);
}
bool eq_node(const ExprStmt& a, const ExprStmt& b) { return structurally_equal(a.expr, b.expr); }
bool eq_node(const ReturnStmt& a, const ReturnStmt& b) { return eq_opt(a.value, b.value); }
bool eq_node(const BreakStmt&, const BreakStmt&) { return true; }
bool eq_node(const ContinueStmt&, const ContinueStmt&) { return true; }
bool eq_node(const ThrowStmt& a, const ThrowStmt& b) { return structurally_equal(a.value, b.value); }

template <class Variant>
bool eq_variant(const Variant& a, const Variant& b) {
    if (a.index() != b.index()) return false;
    return std::visit(
        [&b](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            return eq_node(x, std::get<T>(b));
        },
        a);
}

bool eq_member(const Member& a, const Member& b) {
    if (a.index() != b.index()) return false;
    if (const auto* fa = std::get_if<FieldDecl>(&a)) {
        const auto& fb = std::get<FieldDecl>(b);
        return eq(fa->comments, fb.comments) && fa->modifiers == fb.modifiers && eq(fa->type, fb.type) &&
               fa->name == fb.name && eq_opt(fa->init, fb.init);
    }
    return structurally_equal(std::get<MethodDecl>(a), std::get<MethodDecl>(b));
}

}  // namespace

bool structurally_equal(const Expr& a, const Expr& b) { return eq_variant(a.node, b.node); }

bool structurally_equal(const Stmt& a, const Stmt& b) {
    return eq(a.comments, b.comments) && eq_variant(a.node, b.node);
}

bool structurally_equal(const Block& a, const Block& b) {
    return eq_stmts(a.stmts, b.stmts) && eq(a.trailing_comments, b.trailing_comments);
}

bool structurally_equal(const MethodDecl& a, const MethodDecl& b) {
    return eq(a.comments, b.comments) && a.modifiers == b.modifiers && eq(a.return_type, b.return_type) &&
           a.name == b.name &&
           eq_list(a.params, b.params,
                   [](const Param& p, const Param& q) {
                       return p.is_final == q.is_final && eq(p.type, q.type) && p.name == q.name;
                   }) &&
           eq_list(a.throws, b.throws, [](const TypeRef& p, const TypeRef& q) { return eq(p, q); }) &&
           structurally_equal(a.body, b.body);
}

bool structurally_equal(const ClassDecl& a, const ClassDecl& b) {
    return eq(a.comments, b.comments) && a.modifiers == b.modifiers && a.name == b.name &&
           eq(a.extends, b.extends) &&
           eq_list(a.implements, b.implements, [](const TypeRef& p, const TypeRef& q) { return eq(p, q); }) &&
           eq_list(a.members, b.members, eq_member) && eq(a.trailing_comments, b.trailing_comments);
}

bool structurally_equal(const SourceFile& a, const SourceFile& b) {
    return eq(a.package_comments, b.package_comments) && a.package == b.package &&
           eq_list(a.imports, b.imports,
                   [](const Import& p, const Import& q) {
                       return eq(p.comments, q.comments) && p.name == q.name && p.wildcard == q.wildcard &&
                              p.is_static == q.is_static;
                   }) &&
           eq_list(a.types, b.types, [](const ClassDecl& p, const ClassDecl& q) { return structurally_equal(p, q); }) &&
           eq(a.trailing_comments, b.trailing_comments);
}

}  // namespace vmorph
