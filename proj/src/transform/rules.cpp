#include <map>
#include <set>

#include "internal.hpp"
#include "vmorph/walk.hpp"

namespace vmorph {

using namespace ast;
using namespace detail;

Result<Stmt> flip_if(const Stmt& s) {
    const auto* in = s.get_if<IfStmt>();
    if (!in) return NotApplicable{"not-an-if"};
    if (!in->else_block) return NotApplicable{"no-else"};
    IfStmt out{negate(in->cond), *in->else_block, in->then_block};
    return make_stmt(std::move(out), s.span, s.comments);
}

namespace {

bool is_true_literal(const Expr& e) {
    const auto* l = e.get_if<LiteralExpr>();
    return l && l->kind == LiteralKind::Bool && l->bool_value;
}

Result<Stmt> for_to_while(const Stmt& s, const ForStmt& f) {
    if (f.init.size() > 1) return NotApplicable{"multi-declaration-init"};
    if (has_free_continue(f.body.stmts)) return NotApplicable{"continue-in-body"};
    // Updates appended after a body that cannot complete normally would be
    // unreachable, which Java rejects.
    if (!f.update.empty() && ends_abruptly(f.body.stmts)) return NotApplicable{"terminating-body"};

    Block body = f.body;
    for (const auto& u : f.update) body.stmts.push_back(expr_stmt(u, u.span));
    Expr cond = f.cond ? *f.cond : Expr{LiteralExpr::boolean(true), s.span};
    Stmt loop = make_stmt(WhileStmt{std::move(cond), std::move(body)}, s.span);
    if (f.init.empty()) {
        loop.comments = s.comments;
        return loop;
    }
    return make_stmt(make_block({f.init.front(), std::move(loop)}, s.span), s.span, s.comments);
}

Result<Stmt> block_to_for(const Stmt& s, const Block& b) {
    if (b.stmts.size() != 2 || !b.trailing_comments.empty()) return NotApplicable{"not-a-loop"};
    const Stmt& init = b.stmts[0];
    const auto* loop = b.stmts[1].get_if<WhileStmt>();
    if (!loop || !(init.is<LocalVarDecl>() || init.is<ExprStmt>())) return NotApplicable{"not-a-loop"};
    if (!init.comments.empty() || !b.stmts[1].comments.empty()) return NotApplicable{"commented-loop"};
    if (has_free_continue(loop->body.stmts)) return NotApplicable{"continue-in-body"};

    ForStmt f;
    f.init.push_back(init);
    if (!is_true_literal(loop->cond)) f.cond = loop->cond;
    f.body = loop->body;
    if (!f.body.stmts.empty() && f.body.stmts.back().is<ExprStmt>() && f.body.stmts.back().comments.empty()) {
        f.update.push_back(f.body.stmts.back().as<ExprStmt>().expr);
        f.body.stmts.pop_back();
    }
    return make_stmt(std::move(f), s.span, s.comments);
}

}  // namespace

Result<Stmt> convert_loop(const Stmt& s, LoopDirection direction) {
    if (const auto* f = s.get_if<ForStmt>()) {
        if (direction == LoopDirection::ToFor) return NotApplicable{"already-for"};
        return for_to_while(s, *f);
    }
    if (const auto* w = s.get_if<WhileStmt>()) {
        if (direction == LoopDirection::ToWhile) return NotApplicable{"already-while"};
        ForStmt f;
        f.cond = w->cond;
        f.body = w->body;
        return make_stmt(std::move(f), s.span, s.comments);
    }
    if (const auto* b = s.get_if<Block>(); b && direction == LoopDirection::ToFor) return block_to_for(s, *b);
    return NotApplicable{"not-a-loop"};
}

// ---------------------------------------------------------------------------
// Conditionals

namespace {

bool contains_ternary(const Stmt& s) {
    bool found = false;
    for_each_direct_expr(s, [&found](const Expr& root) {
        walk_expr(root, [&found](const Expr& e) { found = found || e.is<TernaryExpr>(); });
    });
    return found;
}

Stmt assign_stmt(const Expr& target, const Expr& value, const Span& span) {
    return expr_stmt(Expr{AssignExpr{target, value}, span}, span);
}

Result<std::vector<Stmt>> ternary_to_if(const Stmt& s) {
    if (const auto* es = s.get_if<ExprStmt>()) {
        const auto* a = es->expr.get_if<AssignExpr>();
        const auto* t = a ? a->value->get_if<TernaryExpr>() : nullptr;
        if (!t) return NotApplicable{"nested-ternary-position"};
        if (const auto* fa = a->target->get_if<FieldAccessExpr>()) {
            const auto* obj = fa->object->get_if<NameExpr>();
            if (!obj || assigned_names(*a->value).count(obj->name)) return NotApplicable{"nested-ternary-position"};
        }
        IfStmt out{*t->cond, make_block({assign_stmt(*a->target, *t->if_true, t->if_true->span)}, t->if_true->span),
                   make_block({assign_stmt(*a->target, *t->if_false, t->if_false->span)}, t->if_false->span)};
        return std::vector<Stmt>{make_stmt(std::move(out), s.span, s.comments)};
    }
    if (const auto* d = s.get_if<LocalVarDecl>()) {
        const auto* t = d->init ? d->init->get_if<TernaryExpr>() : nullptr;
        if (!t) return NotApplicable{"nested-ternary-position"};
        if (!d->type) return NotApplicable{"inferred-type"};
        LocalVarDecl decl = *d;
        decl.init.reset();
        const Expr target = make_name(d->name, d->name_span);
        IfStmt out{*t->cond, make_block({assign_stmt(target, *t->if_true, t->if_true->span)}, t->if_true->span),
                   make_block({assign_stmt(target, *t->if_false, t->if_false->span)}, t->if_false->span)};
        return std::vector<Stmt>{make_stmt(std::move(decl), s.span, s.comments),
                                 make_stmt(std::move(out), d->init->span)};
    }
    return NotApplicable{"nested-ternary-position"};
}

std::set<std::string> top_level_decls(const std::vector<Stmt>& body) {
    std::set<std::string> out;
    for (const auto& s : body) {
        if (const auto* d = s.get_if<LocalVarDecl>()) out.insert(d->name);
    }
    return out;
}

// A name declared at the top of one arm and mentioned in another arm would
// change meaning (or scope) when the arms are regrouped.
bool shares_scope(const std::vector<const std::vector<Stmt>*>& arms) {
    for (std::size_t i = 0; i < arms.size(); ++i) {
        for (const auto& name : top_level_decls(*arms[i])) {
            for (std::size_t j = 0; j < arms.size(); ++j) {
                if (j != i && count_uses(*arms[j], name) > 0) return true;
                if (j != i && top_level_decls(*arms[j]).count(name)) return true;
            }
        }
    }
    return false;
}

Expr label_expr(const CaseLabel& l) {
    if (l.value.kind == LiteralKind::Int && l.value.int_value < 0) {
        Expr lit{LiteralExpr::integer(-l.value.int_value), l.span};
        return Expr{UnaryExpr{UnaryOp::Neg, std::move(lit)}, l.span};
    }
    return Expr{l.value, l.span};
}

Expr guard_for(const Expr& scrutinee, const CaseLabel& l) {
    if (l.value.kind == LiteralKind::String) {
        return make_call(scrutinee, "equals", {label_expr(l)}, l.span);
    }
    return Expr{BinaryExpr{BinaryOp::Eq, scrutinee, label_expr(l)}, l.span};
}

Result<std::vector<Stmt>> switch_to_if(const Stmt& s, const SwitchStmt& sw) {
    if (!sw.scrutinee.is<NameExpr>()) return NotApplicable{"non-name-scrutinee"};
    const SwitchCase* default_case = nullptr;
    std::vector<const SwitchCase*> guarded;
    for (const auto& c : sw.cases) {
        bool is_default = false;
        for (const auto& l : c.labels) is_default = is_default || l.is_default;
        if (is_default) {
            default_case = &c;
        } else {
            guarded.push_back(&c);
        }
    }
    if (guarded.empty()) return NotApplicable{"default-only"};
    for (std::size_t i = 0; i + 1 < sw.cases.size(); ++i) {
        if (!ends_abruptly(sw.cases[i].body)) return NotApplicable{"fallthrough"};
    }
    std::vector<const std::vector<Stmt>*> arms;
    for (const auto& c : sw.cases) {
        const auto& body = c.body;
        for (std::size_t i = 0; i < body.size(); ++i) {
            const bool final_break = i + 1 == body.size() && body[i].is<BreakStmt>();
            if (!final_break && has_free_break(body[i])) return NotApplicable{"nested-break"};
        }
        arms.push_back(&body);
    }
    if (shares_scope(arms)) return NotApplicable{"shared-case-scope"};

    auto arm_block = [](const SwitchCase& c) {
        Block b = make_block(c.body, c.span);
        if (!b.stmts.empty() && b.stmts.back().is<BreakStmt>()) {
            b.trailing_comments = b.stmts.back().comments;
            b.stmts.pop_back();
        }
        return b;
    };

    std::optional<Block> tail;
    if (default_case) tail = arm_block(*default_case);
    for (auto it = guarded.rbegin(); it != guarded.rend(); ++it) {
        const SwitchCase& c = **it;
        Expr cond = guard_for(sw.scrutinee, c.labels.front());
        for (std::size_t i = 1; i < c.labels.size(); ++i) {
            const Span span = join(cond.span, c.labels[i].span);
            cond = Expr{BinaryExpr{BinaryOp::Or, std::move(cond), guard_for(sw.scrutinee, c.labels[i])}, span};
        }
        IfStmt node{std::move(cond), arm_block(c), std::move(tail)};
        const bool outermost = it + 1 == guarded.rend();
        Stmt st = outermost ? make_stmt(std::move(node), s.span, s.comments) : make_stmt(std::move(node), c.span);
        if (outermost) return std::vector<Stmt>{std::move(st)};
        tail = make_block({std::move(st)}, c.span);
    }
    return NotApplicable{"default-only"};
}

struct Guard {
    std::string scrutinee;
    std::vector<CaseLabel> labels;
};

std::optional<CaseLabel> literal_label(const Expr& e, bool want_string) {
    CaseLabel l;
    l.span = e.span;
    if (const auto* lit = e.get_if<LiteralExpr>()) {
        if (want_string ? lit->kind != LiteralKind::String : lit->kind != LiteralKind::Int) return std::nullopt;
        l.value = *lit;
        return l;
    }
    const auto* u = e.get_if<UnaryExpr>();
    if (want_string || !u || u->op != UnaryOp::Neg) return std::nullopt;
    const auto* lit = u->operand->get_if<LiteralExpr>();
    if (!lit || lit->kind != LiteralKind::Int) return std::nullopt;
    l.value = LiteralExpr::integer(-lit->int_value);
    return l;
}

bool parse_guard(const Expr& e, Guard& g, bool& is_string) {
    if (const auto* b = e.get_if<BinaryExpr>()) {
        if (b->op == BinaryOp::Or) return parse_guard(*b->lhs, g, is_string) && parse_guard(*b->rhs, g, is_string);
        if (b->op != BinaryOp::Eq) return false;
        const auto* n = b->lhs->get_if<NameExpr>();
        if (!n || n->name == "this") return false;
        auto l = literal_label(*b->rhs, false);
        if (!l) return false;
        if (!g.scrutinee.empty() && (g.scrutinee != n->name || is_string)) return false;
        g.scrutinee = n->name;
        g.labels.push_back(*l);
        return true;
    }
    if (const auto* c = e.get_if<CallExpr>()) {
        if (c->method != "equals" || c->args.size() != 1 || !c->receiver) return false;
        const auto* n = (*c->receiver)->get_if<NameExpr>();
        if (!n || n->name == "this") return false;
        auto l = literal_label(c->args[0], true);
        if (!l) return false;
        if (!g.scrutinee.empty() && (g.scrutinee != n->name || !is_string)) return false;
        g.scrutinee = n->name;
        is_string = true;
        g.labels.push_back(*l);
        return true;
    }
    return false;
}

Result<std::vector<Stmt>> chain_to_switch(const Stmt& s, const IfStmt& head, const TransformContext* ctx) {
    std::vector<const IfStmt*> links{&head};
    std::vector<Span> link_spans{s.span};
    const Block* final_else = nullptr;
    for (const IfStmt* cur = &head; cur->else_block;) {
        const Block& eb = *cur->else_block;
        if (eb.stmts.size() == 1 && eb.trailing_comments.empty() && eb.stmts[0].is<IfStmt>() &&
            eb.stmts[0].comments.empty()) {
            cur = &eb.stmts[0].as<IfStmt>();
            links.push_back(cur);
            link_spans.push_back(eb.stmts[0].span);
        } else {
            final_else = &eb;
            break;
        }
    }
    if (links.size() < 2) return NotApplicable{"not-a-chain"};

    Guard all;
    bool is_string = false;
    std::vector<std::vector<CaseLabel>> labels;
    for (const IfStmt* link : links) {
        const std::size_t before = all.labels.size();
        if (!parse_guard(link->cond, all, is_string)) return NotApplicable{"non-literal-guards"};
        labels.emplace_back(all.labels.begin() + static_cast<std::ptrdiff_t>(before), all.labels.end());
    }
    if (ctx) {
        auto it = ctx->local_types.find(all.scrutinee);
        if (it != ctx->local_types.end() && it->second != (is_string ? "String" : "int")) {
            return NotApplicable{"non-literal-guards"};
        }
    }
    std::set<std::string> seen_str;
    std::set<std::int64_t> seen_int;
    for (const auto& l : all.labels) {
        const bool fresh = is_string ? seen_str.insert(l.value.text).second : seen_int.insert(l.value.int_value).second;
        if (!fresh) return NotApplicable{"duplicate-label"};
    }

    std::vector<const std::vector<Stmt>*> arms;
    for (const IfStmt* link : links) arms.push_back(&link->then_block.stmts);
    if (final_else) arms.push_back(&final_else->stmts);
    for (const auto* arm : arms) {
        if (has_free_break(*arm)) return NotApplicable{"break-in-branch"};
    }
    if (shares_scope(arms)) return NotApplicable{"shared-case-scope"};
    for (const IfStmt* link : links) {
        if (!link->then_block.trailing_comments.empty()) return NotApplicable{"commented-branch"};
    }
    if (final_else && !final_else->trailing_comments.empty()) return NotApplicable{"commented-branch"};

    auto case_body = [](const std::vector<Stmt>& stmts, const Span& span) {
        std::vector<Stmt> body = stmts;
        if (!ends_abruptly(body)) body.push_back(make_stmt(BreakStmt{}, span));
        return body;
    };
    SwitchStmt sw;
    sw.scrutinee = make_name(all.scrutinee, head.cond.span);
    for (std::size_t i = 0; i < links.size(); ++i) {
        SwitchCase c;
        c.labels = labels[i];
        c.span = link_spans[i];
        c.body = case_body(links[i]->then_block.stmts, links[i]->then_block.span);
        sw.cases.push_back(std::move(c));
    }
    if (final_else) {
        SwitchCase c;
        CaseLabel d;
        d.is_default = true;
        d.span = final_else->span;
        c.labels.push_back(d);
        c.span = final_else->span;
        c.body = case_body(final_else->stmts, final_else->span);
        sw.cases.push_back(std::move(c));
    }
    return std::vector<Stmt>{make_stmt(std::move(sw), s.span, s.comments)};
}

}  // namespace

Result<std::vector<Stmt>> convert_conditional(const Stmt& s, const TransformContext* ctx) {
    if (const auto* sw = s.get_if<SwitchStmt>()) return switch_to_if(s, *sw);
    if (const auto* in = s.get_if<IfStmt>()) {
        auto r = chain_to_switch(s, *in, ctx);
        if (r.ok() || r.reason() != "not-a-chain") return r;
    }
    if (s.is<ExprStmt>() || s.is<LocalVarDecl>()) {
        if (!contains_ternary(s)) return NotApplicable{"not-a-conditional"};
        return ternary_to_if(s);
    }
    if (contains_ternary(s)) return NotApplicable{"nested-ternary-position"};
    return NotApplicable{"not-a-conditional"};
}

namespace {

// `v = e;` with a plain name target.
const AssignExpr* single_assignment(const Block& b, std::string& name) {
    if (b.stmts.size() != 1 || !b.trailing_comments.empty()) return nullptr;
    const auto* es = b.stmts[0].get_if<ExprStmt>();
    const auto* a = es ? es->expr.get_if<AssignExpr>() : nullptr;
    const auto* n = a ? a->target->get_if<NameExpr>() : nullptr;
    if (!n) return nullptr;
    name = n->name;
    return a;
}

}  // namespace

Result<Block> conditional_to_ternary(const Block& block) {
    for (std::size_t i = 0; i < block.stmts.size(); ++i) {
        const auto* in = block.stmts[i].get_if<IfStmt>();
        if (!in || !in->else_block) continue;
        std::string then_name;
        std::string else_name;
        const AssignExpr* a = single_assignment(in->then_block, then_name);
        const AssignExpr* b = single_assignment(*in->else_block, else_name);
        if (!a || !b || then_name != else_name) continue;

        Comments comments = block.stmts[i].comments;
        for (const auto* c : {&in->then_block.stmts[0].comments, &in->else_block->stmts[0].comments}) {
            comments.insert(comments.end(), c->begin(), c->end());
        }
        const Span span = block.stmts[i].span;
        Expr ternary{TernaryExpr{in->cond, *a->value, *b->value}, span};
        Block out = block;
        const auto* prev = i > 0 ? out.stmts[i - 1].get_if<LocalVarDecl>() : nullptr;
        if (prev && prev->name == then_name && !prev->init && prev->type) {
            Stmt& decl = out.stmts[i - 1];
            decl.as<LocalVarDecl>().init = std::move(ternary);
            decl.comments.insert(decl.comments.end(), comments.begin(), comments.end());
            out.stmts.erase(out.stmts.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            out.stmts[i] = make_stmt(ExprStmt{Expr{AssignExpr{*a->target, std::move(ternary)}, span}}, span,
                                     std::move(comments));
        }
        return out;
    }
    return NotApplicable{"no-conditional-assignment"};
}

}  // namespace vmorph
