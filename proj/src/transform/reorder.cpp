#include <cctype>

#include "internal.hpp"
#include "vmorph/printer.hpp"
#include "vmorph/walk.hpp"

namespace vmorph {

using namespace ast;
using namespace detail;

namespace {

bool is_class_name(const std::string& n) { return !n.empty() && std::isupper(static_cast<unsigned char>(n[0])); }

// Static calls that are defined for every argument value.
bool is_total_static(const CallExpr& c) {
    if (!c.receiver) return false;
    const auto* q = (*c.receiver)->get_if<NameExpr>();
    if (!q) return false;
    if (q->name == "Math") return c.method == "min" || c.method == "max" || c.method == "abs";
    if (q->name == "String") return c.method == "valueOf";
    if (q->name == "Integer") return c.method == "compare";
    if (q->name == "Objects") {
        return c.method == "equals" || c.method == "hash" || c.method == "isNull" || c.method == "nonNull";
    }
    return false;
}

struct Effects {
    std::set<std::string> reads;
    std::set<std::string> writes;
    bool impure = false;
    bool may_throw = false;
    bool nonlocal = false;
    bool writes_field = false;
};

Effects effects_of(const Stmt& s, const TransformContext& ctx) {
    Effects fx;
    const Expr* root = nullptr;
    if (const auto* d = s.get_if<LocalVarDecl>()) {
        fx.writes.insert(d->name);
        if (d->init) root = &*d->init;
    } else {
        root = &s.as<ExprStmt>().expr;
    }
    if (!root) return fx;
    walk_expr(*root, [&](const Expr& e) {
        if (const auto* n = e.get_if<NameExpr>()) {
            if (n->name == "this") return;
            fx.reads.insert(n->name);
            if (!ctx.locals.count(n->name) && !is_class_name(n->name)) fx.nonlocal = true;
        } else if (const auto* f = e.get_if<FieldAccessExpr>()) {
            fx.reads.insert(f->field);
            fx.nonlocal = true;
            fx.may_throw = true;
        } else if (const auto* c = e.get_if<CallExpr>()) {
            std::string type;
            if (c->receiver) {
                const auto* q = (*c->receiver)->get_if<NameExpr>();
                if (q && !ctx.locals.count(q->name) && is_class_name(q->name)) {
                    type = q->name;
                } else {
                    type = static_type(**c->receiver, ctx).value_or("");
                }
            }
            if (type.empty() || !ctx.purity.contains(type, c->method)) fx.impure = true;
            if (!is_total_static(*c)) fx.may_throw = true;
        } else if (e.is<NewExpr>()) {
            fx.impure = true;
            fx.may_throw = true;
        } else if (const auto* b = e.get_if<BinaryExpr>()) {
            if (b->op == BinaryOp::Div || b->op == BinaryOp::Mod) fx.may_throw = true;
        } else if (const auto* a = e.get_if<AssignExpr>()) {
            if (const auto* n = a->target->get_if<NameExpr>()) {
                fx.writes.insert(n->name);
                if (!ctx.locals.count(n->name)) fx.writes_field = true;
            } else if (const auto* f = a->target->get_if<FieldAccessExpr>()) {
                fx.writes.insert(f->field);
                fx.writes_field = true;
            }
        }
    });
    // Assignment targets also land in `reads`, which only makes the check
    // stricter.
    return fx;
}

bool intersects(const std::set<std::string>& a, const std::set<std::string>& b) {
    for (const auto& x : a) {
        if (b.count(x)) return true;
    }
    return false;
}

bool independent(const Stmt& s1, const Stmt& s2, const TransformContext& ctx) {
    const bool simple1 = s1.is<ExprStmt>() || s1.is<LocalVarDecl>();
    const bool simple2 = s2.is<ExprStmt>() || s2.is<LocalVarDecl>();
    if (!simple1 || !simple2) return false;
    const Effects a = effects_of(s1, ctx);
    const Effects b = effects_of(s2, ctx);
    if (intersects(a.writes, b.reads) || intersects(a.writes, b.writes) || intersects(b.writes, a.reads)) return false;
    if (a.impure && b.impure) return false;
    if ((a.impure && b.nonlocal) || (b.impure && a.nonlocal)) return false;
    if (a.may_throw && b.may_throw) return false;
    if (a.may_throw && (b.impure || b.writes_field)) return false;
    if (b.may_throw && (a.impure || a.writes_field)) return false;
    return true;
}

Span list_span(const std::vector<Stmt>& stmts) { return join(stmts.front().span, stmts.back().span); }

}  // namespace

namespace detail {

void reorder_list(std::vector<Stmt>& stmts, const TransformContext& ctx, TransformReport* report) {
    bool swapped = false;
    std::size_t i = 0;
    while (i + 1 < stmts.size()) {
        if (independent(stmts[i], stmts[i + 1], ctx)) {
            if (report) {
                report->applied.push_back({TransformRule::CodeOrder, join(stmts[i].span, stmts[i + 1].span),
                                           "swapped " + std::to_string(stmts[i].span.start.line) + " and " +
                                               std::to_string(stmts[i + 1].span.start.line)});
            }
            std::swap(stmts[i], stmts[i + 1]);
            swapped = true;
            i += 2;
        } else {
            i += 1;
        }
    }
    if (!swapped && stmts.size() >= 2 && report) {
        report->skipped.push_back({TransformRule::CodeOrder, list_span(stmts), "no-independent-pair"});
    }
}

}  // namespace detail

Block reorder_statements(const Block& block, TransformContext& ctx, TransformReport* report) {
    Block out = block;
    reorder_list(out.stmts, ctx, report);
    return out;
}

}  // namespace vmorph
