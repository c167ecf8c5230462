#include <algorithm>

#include "internal.hpp"

namespace vmorph {

using namespace ast;
using namespace detail;

namespace {

// Reasons starting with "not-" mean the statement is not a site of the rule
// at all; they are not reported.
bool is_site(const std::string& reason) { return reason.rfind("not-", 0) != 0; }

class Driver {
public:
    Driver(TransformRule rule, TransformContext& ctx, TransformReport& report)
        : rule_(rule), ctx_(ctx), report_(report) {}

    void run(std::vector<Stmt>& stmts) {
        switch (rule_) {
            case TransformRule::IfFlip:
            case TransformRule::LoopConvert:
            case TransformRule::CondConvert: single_sites(stmts); break;
            case TransformRule::FunctionChain: hoist(stmts, true); break;
            case TransformRule::ArgumentPass: hoist(stmts, false); break;
            case TransformRule::CodeOrder: reorder(stmts); break;
        }
    }

private:
    void descend(Stmt& s) {
        for_each_child_list(s, [this](std::vector<Stmt>& list) { run(list); });
    }

    void skip(const Span& span, const std::string& reason) {
        if (is_site(reason)) report_.skipped.push_back({rule_, span, reason});
    }

    void applied(const Span& span, std::string note) { report_.applied.push_back({rule_, span, std::move(note)}); }

    void single_sites(std::vector<Stmt>& stmts) {
        std::vector<Stmt> out;
        out.reserve(stmts.size());
        for (auto& s : stmts) {
            switch (rule_) {
                case TransformRule::IfFlip: flip(s, out); break;
                case TransformRule::LoopConvert: loop(s, out); break;
                default: conditional(s, out); break;
            }
        }
        stmts = std::move(out);
    }

    void flip(Stmt& s, std::vector<Stmt>& out) {
        auto r = flip_if(s);
        if (!r.ok()) {
            skip(s.span, r.reason());
            descend(s);
            out.push_back(std::move(s));
            return;
        }
        applied(s.span, "negated condition, swapped branches");
        Stmt& result = r.value();
        descend(result);
        out.push_back(std::move(result));
    }

    void loop(Stmt& s, std::vector<Stmt>& out) {
        auto r = convert_loop(s, LoopDirection::Auto);
        if (!r.ok()) {
            skip(s.span, r.reason());
            descend(s);
            out.push_back(std::move(s));
            return;
        }
        Stmt& result = r.value();
        if (s.is<ForStmt>()) {
            applied(s.span, "for->while");
            // The loop body is the only original statement list in the result.
            Stmt* w = &result;
            if (auto* b = result.get_if<Block>()) w = &b->stmts.back();
            run(w->as<WhileStmt>().body.stmts);
        } else {
            applied(s.span, "while->for");
            run(result.as<ForStmt>().body.stmts);
        }
        out.push_back(std::move(result));
    }

    void conditional(Stmt& s, std::vector<Stmt>& out) {
        auto r = convert_conditional(s, &ctx_);
        if (!r.ok()) {
            skip(s.span, r.reason());
            if (auto* in = s.get_if<IfStmt>(); in && in->else_block) {
                descend_chain(*in);
            } else {
                descend(s);
            }
            out.push_back(std::move(s));
            return;
        }
        auto& produced = r.value();
        if (s.is<SwitchStmt>()) {
            applied(s.span, "switch->if");
            std::size_t guarded = 0;
            for (const auto& c : s.as<SwitchStmt>().cases) {
                guarded += std::none_of(c.labels.begin(), c.labels.end(), [](const CaseLabel& l) { return l.is_default; });
            }
            IfStmt* cur = &produced.front().as<IfStmt>();
            for (std::size_t i = 0; i < guarded; ++i) {
                run(cur->then_block.stmts);
                if (!cur->else_block) break;
                if (i + 1 < guarded) {
                    cur = &cur->else_block->stmts.front().as<IfStmt>();
                } else {
                    run(cur->else_block->stmts);
                }
            }
        } else if (s.is<IfStmt>()) {
            applied(s.span, "if-chain->switch");
            for (auto& c : produced.front().as<SwitchStmt>().cases) run(c.body);
        } else {
            applied(s.span, "ternary->if");
        }
        for (auto& p : produced) out.push_back(std::move(p));
    }

    // A refused if-chain is one site: its inner links are not chain heads.
    void descend_chain(IfStmt& in) {
        run(in.then_block.stmts);
        if (!in.else_block) return;
        Block& eb = *in.else_block;
        if (eb.stmts.size() == 1 && eb.stmts[0].is<IfStmt>()) {
            descend_chain(eb.stmts[0].as<IfStmt>());
        } else {
            run(eb.stmts);
        }
    }

    void hoist(std::vector<Stmt>& stmts, bool chain) {
        std::vector<Stmt> out;
        out.reserve(stmts.size());
        for (auto& s : stmts) {
            Stmt cur = std::move(s);
            for (;;) {
                auto r = hoist_once(cur, chain, ctx_);
                if (!r.ok()) {
                    skip(cur.span, r.reason() == "evaluation-order" ? r.reason() : "not-applicable");
                    break;
                }
                applied(r.value().site, r.value().note);
                out.push_back(std::move(r.value().decl));
                cur = std::move(r.value().stmt);
            }
            descend(cur);
            out.push_back(std::move(cur));
        }
        stmts = std::move(out);
    }

    void reorder(std::vector<Stmt>& stmts) {
        reorder_list(stmts, ctx_, &report_);
        for (auto& s : stmts) descend(s);
    }

    TransformRule rule_;
    TransformContext& ctx_;
    TransformReport& report_;
};

}  // namespace

std::pair<MethodDecl, TransformReport> apply_rules(const MethodDecl& method, const std::vector<TransformRule>& rules,
                                                   TransformContext& ctx) {
    MethodDecl out = method;
    TransformReport report;
    for (TransformRule rule : kAllRules) {
        if (std::find(rules.begin(), rules.end(), rule) == rules.end()) continue;
        Driver(rule, ctx, report).run(out.body.stmts);
    }
    return {std::move(out), std::move(report)};
}

std::pair<MethodDecl, TransformReport> apply_all(const MethodDecl& method, TransformContext& ctx) {
    return apply_rules(method, {std::begin(kAllRules), std::end(kAllRules)}, ctx);
}

}  // namespace vmorph
