#include "internal.hpp"
#include "vmorph/printer.hpp"
#include "vmorph/walk.hpp"

namespace vmorph {

using namespace ast;
using namespace detail;

namespace {

// Finds, in evaluation order, the first expression to hoist. For chains that
// is the receiver of the first call whose receiver is a call; for arguments
// it is the first call or `new` passed directly to a call or `new`.
class HoistFinder {
public:
    explicit HoistFinder(bool chain) : chain_(chain) {}

    Expr* find(Expr& e, bool is_argument = false) {
        Expr* found = std::visit(
            [&](auto& n) -> Expr* {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, UnaryExpr>) {
                    return find(*n.operand);
                } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                    if (Expr* r = find(*n.lhs)) return r;
                    return find(*n.rhs);
                } else if constexpr (std::is_same_v<T, TernaryExpr>) {
                    if (Expr* r = find(*n.cond)) return r;
                    if (Expr* r = find(*n.if_true)) return r;
                    return find(*n.if_false);
                } else if constexpr (std::is_same_v<T, CallExpr>) {
                    if (n.receiver) {
                        if (Expr* r = find(**n.receiver)) return r;
                    }
                    for (auto& a : n.args) {
                        if (Expr* r = find(a, true)) return r;
                    }
                    if (chain_ && n.receiver && (*n.receiver)->template is<CallExpr>()) return &**n.receiver;
                    return nullptr;
                } else if constexpr (std::is_same_v<T, FieldAccessExpr>) {
                    return find(*n.object);
                } else if constexpr (std::is_same_v<T, AssignExpr>) {
                    if (auto* fa = n.target->template get_if<FieldAccessExpr>()) {
                        if (Expr* r = find(*fa->object)) return r;
                    }
                    return find(*n.value);
                } else if constexpr (std::is_same_v<T, NewExpr>) {
                    for (auto& a : n.args) {
                        if (Expr* r = find(a, true)) return r;
                    }
                    return nullptr;
                } else {
                    return nullptr;
                }
            },
            e.node);
        if (found) return found;
        if (!chain_ && is_argument && (e.is<CallExpr>() || e.is<NewExpr>())) return &e;
        return nullptr;
    }

private:
    bool chain_;
};

// Finds the single use of `name` as a call receiver (chain) or as a direct
// argument of a call or `new`.
const Expr* find_use(const Expr& root, const std::string& name, bool chain) {
    const Expr* out = nullptr;
    auto is_var = [&name](const Expr& e) {
        const auto* n = e.get_if<NameExpr>();
        return n && n->name == name;
    };
    walk_expr(root, [&](const Expr& e) {
        if (out) return;
        if (const auto* c = e.get_if<CallExpr>()) {
            if (chain && c->receiver && is_var(**c->receiver)) out = &**c->receiver;
            if (!chain) {
                for (const auto& a : c->args) {
                    if (is_var(a)) out = &a;
                }
            }
        } else if (const auto* n = e.get_if<NewExpr>(); n && !chain) {
            for (const auto& a : n->args) {
                if (is_var(a)) out = &a;
            }
        }
    });
    return out;
}

}  // namespace

namespace detail {

Result<Hoisted> hoist_once(const Stmt& s, bool chain, TransformContext& ctx) {
    const char* none = chain ? "no-chain" : "no-call-argument";
    Stmt out = s;
    Expr* root = hoist_root(out);
    if (!root) return NotApplicable{none};
    Expr* target = HoistFinder(chain).find(*root);
    if (!target) return NotApplicable{none};
    if (!evaluated_first(*root, target, assigned_names(*target), ctx)) return NotApplicable{"evaluation-order"};

    const std::optional<std::string> type = static_type(*target, ctx);
    const std::string name = fresh_name(*target, ctx);
    ctx.locals.insert(name);
    if (type) ctx.local_types[name] = *type;

    LocalVarDecl decl;
    if (type) decl.type = TypeRef{*type, target->span};
    decl.name = name;
    decl.name_span = target->span;
    decl.init = *target;
    const Span site = target->span;
    std::string note = std::string(chain ? "split: " : "extract: ") + print_expr(*target) + " into " + name;
    *target = make_name(name, site);

    Hoisted h{make_stmt(std::move(decl), site, s.comments), std::move(out), site, std::move(note)};
    h.stmt.comments.clear();
    return h;
}

Result<std::vector<Stmt>> fold_at(const std::vector<Stmt>& stmts, std::size_t i, bool chain,
                                  const TransformContext& ctx) {
    const auto* decl = stmts[i].get_if<LocalVarDecl>();
    if (!decl || !decl->init) return NotApplicable{chain ? "no-chain" : "no-call-argument"};
    if (chain && !decl->init->is<CallExpr>()) return NotApplicable{"no-chain"};

    int uses = 0;
    for (std::size_t k = i + 1; k < stmts.size(); ++k) uses += count_uses(stmts[k], decl->name);
    if (uses > 1) return NotApplicable{"multiple-uses"};
    if (uses == 0 || i + 1 >= stmts.size()) return NotApplicable{chain ? "no-chain" : "no-call-argument"};

    Stmt next = stmts[i + 1];
    Expr* root = hoist_root(next);
    const Expr* use = root ? find_use(*root, decl->name, chain) : nullptr;
    if (!use) return NotApplicable{chain ? "no-chain" : "no-call-argument"};
    if (!evaluated_first(*root, use, assigned_names(*decl->init), ctx)) {
        return NotApplicable{chain ? "evaluation-order" : "interference"};
    }
    *const_cast<Expr*>(use) = *decl->init;

    Comments comments = stmts[i].comments;
    comments.insert(comments.end(), next.comments.begin(), next.comments.end());
    next.comments = std::move(comments);

    std::vector<Stmt> out(stmts.begin(), stmts.begin() + static_cast<std::ptrdiff_t>(i));
    out.push_back(std::move(next));
    out.insert(out.end(), stmts.begin() + static_cast<std::ptrdiff_t>(i + 2), stmts.end());
    return out;
}

}  // namespace detail

namespace {

Result<Block> hoist_in_block(const Block& block, bool chain, TransformContext& ctx) {
    std::optional<std::string> first_reason;
    for (std::size_t i = 0; i < block.stmts.size(); ++i) {
        auto r = hoist_once(block.stmts[i], chain, ctx);
        if (!r.ok()) {
            if (!first_reason && r.reason() == "evaluation-order") first_reason = r.reason();
            continue;
        }
        Block out = block;
        out.stmts[i] = std::move(r.value().stmt);
        out.stmts.insert(out.stmts.begin() + static_cast<std::ptrdiff_t>(i), std::move(r.value().decl));
        return out;
    }
    return NotApplicable{first_reason.value_or(chain ? "no-chain" : "no-call-argument")};
}

Result<Block> fold_in_block(const Block& block, bool chain, const TransformContext& ctx) {
    std::optional<std::string> first_reason;
    for (std::size_t i = 0; i < block.stmts.size(); ++i) {
        const auto* d = block.stmts[i].get_if<LocalVarDecl>();
        if (!d || !d->init) continue;
        auto r = fold_at(block.stmts, i, chain, ctx);
        if (r.ok()) {
            Block out = block;
            out.stmts = std::move(r.value());
            return out;
        }
        if (!first_reason) first_reason = r.reason();
    }
    return NotApplicable{first_reason.value_or(chain ? "no-chain" : "no-call-argument")};
}

}  // namespace

Result<Block> chain_functions(const Block& block, ChainDirection direction, TransformContext& ctx) {
    if (direction == ChainDirection::Split) return hoist_in_block(block, true, ctx);
    return fold_in_block(block, true, ctx);
}

Result<Block> argument_pass(const Block& block, ArgumentDirection direction, TransformContext& ctx) {
    if (direction == ArgumentDirection::Extract) return hoist_in_block(block, false, ctx);
    return fold_in_block(block, false, ctx);
}

}  // namespace vmorph
