#include <cctype>
#include <fstream>
#include <sstream>

#include "internal.hpp"
#include "json.hpp"
#include "vmorph/bundled_data.hpp"
#include "vmorph/lexer.hpp"
#include "vmorph/naming.hpp"
#include "vmorph/rename.hpp"
#include "vmorph/walk.hpp"

namespace vmorph {

using json = nlohmann::json;
using namespace ast;

const char* to_string(TransformRule r) {
    switch (r) {
        case TransformRule::IfFlip: return "IfFlip";
        case TransformRule::LoopConvert: return "LoopConvert";
        case TransformRule::CondConvert: return "CondConvert";
        case TransformRule::FunctionChain: return "FunctionChain";
        case TransformRule::ArgumentPass: return "ArgumentPass";
        case TransformRule::CodeOrder: return "CodeOrder";
    }
    return "IfFlip";
}

TransformRule transform_rule_from_string(std::string_view s) {
    for (TransformRule r : kAllRules) {
        if (s == to_string(r)) return r;
    }
    throw Error("unknown transform rule '" + std::string(s) + "'");
}

std::size_t TransformReport::applied_count(TransformRule r) const {
    std::size_t n = 0;
    for (const auto& a : applied) n += a.rule == r;
    return n;
}

std::size_t TransformReport::skipped_count(TransformRule r) const {
    std::size_t n = 0;
    for (const auto& s : skipped) n += s.rule == r;
    return n;
}

void TransformReport::append(const TransformReport& other) {
    applied.insert(applied.end(), other.applied.begin(), other.applied.end());
    skipped.insert(skipped.end(), other.skipped.begin(), other.skipped.end());
}

namespace {

json span_json(const Span& s) {
    return json{{"file", s.file},
                {"start_line", s.start.line},
                {"start_col", s.start.col},
                {"end_line", s.end.line},
                {"end_col", s.end.col}};
}

}  // namespace

std::string TransformReport::to_json() const {
    json j;
    j["applied"] = json::array();
    j["skipped"] = json::array();
    for (const auto& a : applied) {
        j["applied"].push_back(json{{"rule", to_string(a.rule)}, {"span", span_json(a.span)}, {"note", a.note}});
    }
    for (const auto& s : skipped) {
        j["skipped"].push_back(json{{"rule", to_string(s.rule)}, {"span", span_json(s.span)}, {"reason", s.reason}});
    }
    return j.dump(2) + "\n";
}

PurityWhitelist PurityWhitelist::parse(std::string_view text) {
    PurityWhitelist w;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        w.qualified_.insert(line.substr(b, e - b + 1));
    }
    return w;
}

PurityWhitelist PurityWhitelist::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read purity whitelist '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

PurityWhitelist PurityWhitelist::bundled() { return parse(bundled::kPurityWhitelist); }

bool PurityWhitelist::contains(std::string_view type, std::string_view method) const {
    std::string q(type);
    q += '.';
    q += method;
    return qualified_.count(q) > 0;
}

namespace {

void collect_expr_names(const Expr& root, std::set<std::string>& out) {
    walk_expr(root, [&out](const Expr& e) {
        if (const auto* n = e.get_if<NameExpr>()) out.insert(n->name);
        if (const auto* c = e.get_if<CallExpr>()) out.insert(c->method);
        if (const auto* f = e.get_if<FieldAccessExpr>()) out.insert(f->field);
        if (const auto* n = e.get_if<NewExpr>()) out.insert(n->type.name);
    });
}

void collect_method_names(const MethodDecl& m, std::set<std::string>& out) {
    out.insert(m.name);
    if (m.return_type) out.insert(m.return_type->name);
    for (const auto& p : m.params) {
        out.insert(p.name);
        out.insert(p.type.name);
    }
    walk_block(m.body, [&out](const Stmt& s) {
        if (const auto* d = s.get_if<LocalVarDecl>()) {
            out.insert(d->name);
            if (d->type) out.insert(d->type->name);
        }
        for_each_direct_expr(s, [&out](const Expr& e) { collect_expr_names(e, out); });
    });
}

}  // namespace

TransformContext make_context(const MethodDecl& method, const SourceFile* file, const SynonymLexicon* lexicon,
                              PurityWhitelist purity) {
    TransformContext ctx;
    ctx.lexicon = lexicon;
    ctx.purity = std::move(purity);
    collect_method_names(method, ctx.taken_names);
    if (file) {
        std::map<std::string, std::set<std::string>> returns;
        for (const auto& imp : file->imports) {
            std::stringstream ss(imp.name);
            std::string part;
            while (std::getline(ss, part, '.')) ctx.taken_names.insert(part);
        }
        for (const auto& cls : file->types) {
            ctx.taken_names.insert(cls.name);
            for (const auto& m : cls.members) {
                if (const auto* f = std::get_if<FieldDecl>(&m)) {
                    ctx.taken_names.insert(f->name);
                    ctx.taken_names.insert(f->type.name);
                    if (f->init) collect_expr_names(*f->init, ctx.taken_names);
                } else {
                    const auto& md = std::get<MethodDecl>(m);
                    collect_method_names(md, ctx.taken_names);
                    if (!md.is_constructor()) {
                        ctx.project_methods.insert(md.name);
                        returns[md.name].insert(md.return_type->name);
                    }
                }
            }
        }
        for (const auto& [name, types] : returns) {
            if (types.size() == 1) ctx.method_returns[name] = *types.begin();
        }
    } else {
        ctx.project_methods.insert(method.name);
        if (method.return_type) ctx.method_returns[method.name] = method.return_type->name;
    }

    std::map<std::string, std::set<std::string>> types;
    for (const auto& p : method.params) {
        ctx.locals.insert(p.name);
        types[p.name].insert(p.type.name);
    }
    walk_block(method.body, [&](const Stmt& s) {
        if (const auto* d = s.get_if<LocalVarDecl>()) {
            ctx.locals.insert(d->name);
            types[d->name].insert(d->type ? d->type->name : std::string("var"));
        }
    });
    for (const auto& [name, ts] : types) {
        if (ts.size() == 1 && *ts.begin() != "var") ctx.local_types[name] = *ts.begin();
    }
    return ctx;
}

namespace detail {

namespace {

bool looks_like_class(const std::string& n) {
    return !n.empty() && std::isupper(static_cast<unsigned char>(n[0]));
}

bool is_local_name(const std::string& n, const TransformContext& ctx) { return ctx.locals.count(n) > 0; }

// Names that read no mutable state: locals, `this`, and class names used as
// qualifiers.
bool trivial_name(const std::string& n, const TransformContext& ctx) {
    return n == "this" || is_local_name(n, ctx) || looks_like_class(n);
}

enum class Visit { Trivial, Found, Blocked };

class FirstEvaluation {
public:
    FirstEvaluation(const Expr* target, const std::set<std::string>& moved_writes, const TransformContext& ctx)
        : target_(target), moved_writes_(moved_writes), ctx_(ctx) {}

    Visit visit(const Expr& e, bool conditional) {
        if (&e == target_) {
            if (conditional) return Visit::Blocked;
            for (const auto& r : reads_) {
                if (moved_writes_.count(r)) return Visit::Blocked;
            }
            return Visit::Found;
        }
        return std::visit(
            [&](const auto& n) -> Visit {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, NameExpr>) {
                    if (!trivial_name(n.name, ctx_)) return Visit::Blocked;
                    reads_.insert(n.name);
                    return Visit::Trivial;
                } else if constexpr (std::is_same_v<T, LiteralExpr>) {
                    return Visit::Trivial;
                } else if constexpr (std::is_same_v<T, UnaryExpr>) {
                    return visit(*n.operand, conditional);
                } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                    if (auto r = visit(*n.lhs, conditional); r != Visit::Trivial) return r;
                    const bool short_circuit = n.op == BinaryOp::And || n.op == BinaryOp::Or;
                    if (auto r = visit(*n.rhs, conditional || short_circuit); r != Visit::Trivial) return r;
                    if (n.op == BinaryOp::Div || n.op == BinaryOp::Mod) return Visit::Blocked;
                    return Visit::Trivial;
                } else if constexpr (std::is_same_v<T, TernaryExpr>) {
                    if (auto r = visit(*n.cond, conditional); r != Visit::Trivial) return r;
                    if (auto r = visit(*n.if_true, true); r != Visit::Trivial) return r;
                    return visit(*n.if_false, true);
                } else if constexpr (std::is_same_v<T, CallExpr>) {
                    if (n.receiver) {
                        if (auto r = visit(**n.receiver, conditional); r != Visit::Trivial) return r;
                    }
                    for (const auto& a : n.args) {
                        if (auto r = visit(a, conditional); r != Visit::Trivial) return r;
                    }
                    return Visit::Blocked;
                } else if constexpr (std::is_same_v<T, FieldAccessExpr>) {
                    if (auto r = visit(*n.object, conditional); r != Visit::Trivial) return r;
                    return Visit::Blocked;
                } else if constexpr (std::is_same_v<T, AssignExpr>) {
                    if (const auto* fa = n.target->template get_if<FieldAccessExpr>()) {
                        if (auto r = visit(*fa->object, conditional); r != Visit::Trivial) return r;
                    }
                    if (auto r = visit(*n.value, conditional); r != Visit::Trivial) return r;
                    return Visit::Blocked;
                } else {
                    for (const auto& a : n.args) {
                        if (auto r = visit(a, conditional); r != Visit::Trivial) return r;
                    }
                    return Visit::Blocked;
                }
            },
            e.node);
    }

private:
    const Expr* target_;
    const std::set<std::string>& moved_writes_;
    const TransformContext& ctx_;
    std::set<std::string> reads_;
};

const std::set<std::string>& string_returning() {
    static const std::set<std::string> s = {"trim",  "toUpperCase", "toLowerCase", "substring", "concat",
                                            "strip", "replace",     "repeat",      "intern",    "toString"};
    return s;
}
const std::set<std::string>& int_returning() {
    static const std::set<std::string> s = {"length", "indexOf", "lastIndexOf", "compareTo", "compareToIgnoreCase",
                                            "hashCode"};
    return s;
}
const std::set<std::string>& bool_returning() {
    static const std::set<std::string> s = {"equals", "equalsIgnoreCase", "startsWith", "endsWith",
                                            "isEmpty", "contains",         "isBlank",    "matches"};
    return s;
}

bool completes_normally(const Stmt& s);

bool list_completes_normally(const std::vector<Stmt>& stmts) {
    return stmts.empty() || completes_normally(stmts.back());
}

bool is_true_literal(const Expr& e) {
    const auto* l = e.get_if<LiteralExpr>();
    return l && l->kind == LiteralKind::Bool && l->bool_value;
}

bool completes_normally(const Stmt& s) {
    return std::visit(
        [&](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ReturnStmt> || std::is_same_v<T, ThrowStmt> ||
                          std::is_same_v<T, BreakStmt> || std::is_same_v<T, ContinueStmt>) {
                return false;
            } else if constexpr (std::is_same_v<T, Block>) {
                return list_completes_normally(n.stmts);
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                if (!n.else_block) return true;
                return list_completes_normally(n.then_block.stmts) || list_completes_normally(n.else_block->stmts);
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
                return !is_true_literal(n.cond) || has_free_break(n.body.stmts);
            } else if constexpr (std::is_same_v<T, ForStmt>) {
                return (n.cond && !is_true_literal(*n.cond)) || has_free_break(n.body.stmts);
            } else {
                return true;
            }
        },
        s.node);
}

}  // namespace

bool is_trivial(const Expr& e, const TransformContext& ctx) {
    return std::visit(
        [&](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, NameExpr>) {
                return trivial_name(n.name, ctx);
            } else if constexpr (std::is_same_v<T, LiteralExpr>) {
                return true;
            } else if constexpr (std::is_same_v<T, UnaryExpr>) {
                return is_trivial(*n.operand, ctx);
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                return n.op != BinaryOp::Div && n.op != BinaryOp::Mod && is_trivial(*n.lhs, ctx) &&
                       is_trivial(*n.rhs, ctx);
            } else if constexpr (std::is_same_v<T, TernaryExpr>) {
                return is_trivial(*n.cond, ctx) && is_trivial(*n.if_true, ctx) && is_trivial(*n.if_false, ctx);
            } else {
                return false;
            }
        },
        e.node);
}

bool evaluated_first(const Expr& root, const Expr* target, const std::set<std::string>& moved_writes,
                     const TransformContext& ctx) {
    FirstEvaluation fe(target, moved_writes, ctx);
    return fe.visit(root, false) == Visit::Found;
}

std::set<std::string> assigned_names(const Expr& root) {
    std::set<std::string> out;
    walk_expr(root, [&out](const Expr& e) {
        if (const auto* a = e.get_if<AssignExpr>()) {
            if (const auto* n = a->target->get_if<NameExpr>()) out.insert(n->name);
            if (const auto* f = a->target->get_if<FieldAccessExpr>()) out.insert(f->field);
        }
    });
    return out;
}

const Expr* hoist_root(const Stmt& s) { return hoist_root(const_cast<Stmt&>(s)); }

Expr* hoist_root(Stmt& s) {
    if (auto* e = s.get_if<ExprStmt>()) return &e->expr;
    if (auto* d = s.get_if<LocalVarDecl>()) return d->init ? &*d->init : nullptr;
    if (auto* r = s.get_if<ReturnStmt>()) return r->value ? &*r->value : nullptr;
    if (auto* t = s.get_if<ThrowStmt>()) return &t->value;
    if (auto* i = s.get_if<IfStmt>()) return &i->cond;
    return nullptr;
}

std::optional<std::string> static_type(const Expr& e, const TransformContext& ctx) {
    if (const auto* l = e.get_if<LiteralExpr>()) {
        switch (l->kind) {
            case LiteralKind::Int: return "int";
            case LiteralKind::Bool: return "boolean";
            case LiteralKind::String: return "String";
            case LiteralKind::Null: return std::nullopt;
        }
    }
    if (const auto* n = e.get_if<NameExpr>()) {
        auto it = ctx.local_types.find(n->name);
        if (it != ctx.local_types.end()) return it->second;
        return std::nullopt;
    }
    if (const auto* n = e.get_if<NewExpr>()) return n->type.name;
    if (const auto* u = e.get_if<UnaryExpr>()) return u->op == UnaryOp::Not ? "boolean" : "int";
    if (const auto* b = e.get_if<BinaryExpr>()) {
        switch (b->op) {
            case BinaryOp::Add: {
                const auto l = static_type(*b->lhs, ctx);
                const auto r = static_type(*b->rhs, ctx);
                if (l == "String" || r == "String") return "String";
                if (l == "int" && r == "int") return "int";
                return std::nullopt;
            }
            case BinaryOp::Sub:
            case BinaryOp::Mul:
            case BinaryOp::Div:
            case BinaryOp::Mod: return "int";
            default: return "boolean";
        }
    }
    if (const auto* c = e.get_if<CallExpr>()) {
        if (c->method == "getClass") return "Class";
        const Expr* recv = c->receiver ? &**c->receiver : nullptr;
        const auto* recv_name = recv ? recv->get_if<NameExpr>() : nullptr;
        const bool class_qualified = recv_name && !ctx.locals.count(recv_name->name) && looks_like_class(recv_name->name);
        if (class_qualified) {
            const std::string& q = recv_name->name;
            if (q == "Math" && (c->method == "min" || c->method == "max" || c->method == "abs")) return "int";
            if (q == "String" && c->method == "valueOf") return "String";
            if (q == "Integer" && (c->method == "parseInt" || c->method == "compare")) return "int";
        }
        if (!recv || (recv_name && recv_name->name == "this") ||
            (class_qualified && !ctx.project_methods.empty() && ctx.method_returns.count(c->method))) {
            auto it = ctx.method_returns.find(c->method);
            if (it != ctx.method_returns.end() && it->second != "void") return it->second;
            return std::nullopt;
        }
        if (c->method == "toString") return "String";
        if (c->method == "hashCode") return "int";
        if (c->method == "equals") return "boolean";
        if (static_type(*recv, ctx) == "String") {
            if (string_returning().count(c->method)) return "String";
            if (int_returning().count(c->method)) return "int";
            if (bool_returning().count(c->method)) return "boolean";
        }
    }
    return std::nullopt;
}

namespace {

bool name_free(const std::string& n, const TransformContext& ctx) {
    return is_legal_identifier(n) && !is_reserved_word(n) && !ctx.taken_names.count(n);
}

std::string reserve(std::string base, TransformContext& ctx) {
    std::string n = base;
    for (int i = 2; !name_free(n, ctx); ++i) n = base + std::to_string(i);
    ctx.taken_names.insert(n);
    return n;
}

}  // namespace

std::string fresh_name(const Expr& e, TransformContext& ctx) {
    if (const auto* c = e.get_if<CallExpr>()) {
        const auto method_words = tokenize_identifier(c->method);
        std::vector<std::string> receiver_words;
        if (c->receiver) {
            if (const auto* n = (*c->receiver)->get_if<NameExpr>(); n && n->name != "this") {
                receiver_words = tokenize_identifier(n->name);
            }
        }
        if (method_words.size() > 1 && method_words[0] == "get" && !receiver_words.empty()) {
            std::vector<std::string> words = receiver_words;
            words.insert(words.end(), method_words.begin() + 1, method_words.end());
            const Convention conv = receiver_words.size() == 1 ? Convention::Snake : Convention::Camel;
            return reserve(assemble_identifier(words, conv), ctx);
        }
        if (ctx.lexicon && !method_words.empty()) {
            if (auto participle = ctx.lexicon->participle(method_words[0])) {
                std::vector<std::string> words{*participle};
                words.insert(words.end(), method_words.begin() + 1, method_words.end());
                words.insert(words.end(), receiver_words.begin(), receiver_words.end());
                return reserve(assemble_identifier(words, Convention::Camel), ctx);
            }
        }
    } else if (const auto* n = e.get_if<NewExpr>()) {
        const auto words = tokenize_identifier(n->type.name);
        if (!words.empty()) return reserve(assemble_identifier(words, Convention::Camel), ctx);
    }
    for (int i = 1;; ++i) {
        const std::string n = "tmp" + std::to_string(i);
        if (name_free(n, ctx)) {
            ctx.taken_names.insert(n);
            return n;
        }
    }
}

int count_uses(const Stmt& s, const std::string& name) {
    int n = 0;
    walk_exprs_in_stmt(s, [&](const Expr& e) {
        if (const auto* ne = e.get_if<NameExpr>(); ne && ne->name == name) ++n;
    });
    return n;
}

int count_uses(const std::vector<Stmt>& stmts, const std::string& name) {
    int n = 0;
    for (const auto& s : stmts) n += count_uses(s, name);
    return n;
}

namespace {

bool free_jump(const Stmt& s, bool is_break) {
    return std::visit(
        [&](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, BreakStmt>) {
                return is_break;
            } else if constexpr (std::is_same_v<T, ContinueStmt>) {
                return !is_break;
            } else if constexpr (std::is_same_v<T, WhileStmt> || std::is_same_v<T, ForStmt>) {
                return false;
            } else if constexpr (std::is_same_v<T, SwitchStmt>) {
                if (is_break) return false;
                for (const auto& c : n.cases) {
                    for (const auto& b : c.body) {
                        if (free_jump(b, is_break)) return true;
                    }
                }
                return false;
            } else if constexpr (std::is_same_v<T, Block>) {
                for (const auto& b : n.stmts) {
                    if (free_jump(b, is_break)) return true;
                }
                return false;
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                for (const auto& b : n.then_block.stmts) {
                    if (free_jump(b, is_break)) return true;
                }
                if (n.else_block) {
                    for (const auto& b : n.else_block->stmts) {
                        if (free_jump(b, is_break)) return true;
                    }
                }
                return false;
            } else {
                return false;
            }
        },
        s.node);
}

}  // namespace

bool has_free_continue(const Stmt& s) { return free_jump(s, false); }
bool has_free_break(const Stmt& s) { return free_jump(s, true); }

bool has_free_continue(const std::vector<Stmt>& stmts) {
    for (const auto& s : stmts) {
        if (has_free_continue(s)) return true;
    }
    return false;
}

bool has_free_break(const std::vector<Stmt>& stmts) {
    for (const auto& s : stmts) {
        if (has_free_break(s)) return true;
    }
    return false;
}

bool ends_abruptly(const std::vector<Stmt>& stmts) { return !list_completes_normally(stmts); }

Expr negate(const Expr& cond) {
    if (const auto* u = cond.get_if<UnaryExpr>(); u && u->op == UnaryOp::Not) return *u->operand;
    return Expr{UnaryExpr{UnaryOp::Not, cond}, cond.span};
}

Stmt expr_stmt(Expr e, const Span& span) { return make_stmt(ExprStmt{std::move(e)}, span); }

Block make_block(std::vector<Stmt> stmts, const Span& span) {
    Block b;
    b.stmts = std::move(stmts);
    b.span = span;
    return b;
}

}  // namespace detail

}  // namespace vmorph
