#include <cctype>
#include <cstdint>
#include <limits>
#include <set>

#include "vmorph/oracle.hpp"
#include "vmorph/walk.hpp"

namespace vmorph {

using namespace ast;

namespace {

constexpr int kMaxCallDepth = 200;

struct OutOfFuelSignal {};

struct ThrowSignal {
    std::string kind;
};

std::int32_t wrap(std::int64_t v) { return static_cast<std::int32_t>(static_cast<std::uint32_t>(v)); }

bool is_class_name(const std::string& n) { return !n.empty() && std::isupper(static_cast<unsigned char>(n[0])); }

std::string unescape(const std::string& raw) {
    std::string out;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] != '\\' || i + 1 == raw.size()) {
            out += raw[i];
            continue;
        }
        const char c = raw[++i];
        switch (c) {
            case 'n': out += '\n'; break;
            case 't': out += '\t'; break;
            case 'r': out += '\r'; break;
            case 'b': out += '\b'; break;
            case 'f': out += '\f'; break;
            case '0': out += '\0'; break;
            case 'u': {
                unsigned cp = 0;
                std::size_t j = i + 1;
                while (j < raw.size() && raw[j] == 'u') ++j;
                for (int k = 0; k < 4 && j < raw.size(); ++k, ++j) {
                    cp = cp * 16 + static_cast<unsigned>(std::isdigit(static_cast<unsigned char>(raw[j]))
                                                             ? raw[j] - '0'
                                                             : (std::tolower(static_cast<unsigned char>(raw[j])) - 'a' + 10));
                }
                i = j - 1;
                if (cp < 0x80) {
                    out += static_cast<char>(cp);
                } else if (cp < 0x800) {
                    out += static_cast<char>(0xC0 | (cp >> 6));
                    out += static_cast<char>(0x80 | (cp & 0x3F));
                } else {
                    out += static_cast<char>(0xE0 | (cp >> 12));
                    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
                    out += static_cast<char>(0x80 | (cp & 0x3F));
                }
                break;
            }
            default: out += c; break;
        }
    }
    return out;
}

// Text of a value as string concatenation renders it.
std::string concat_text(const Value& v) {
    if (v.is_null()) return "null";
    if (const auto* i = std::get_if<std::int32_t>(&v.v)) return std::to_string(*i);
    if (const auto* b = std::get_if<bool>(&v.v)) return *b ? "true" : "false";
    return std::get<std::string>(v.v);
}

bool is_supported_type(const std::string& t) { return t == "int" || t == "boolean" || t == "String"; }

bool is_static_builtin(const std::string& cls, const std::string& m, std::size_t arity) {
    if (cls == "Math") return (m == "min" || m == "max") ? arity == 2 : (m == "abs" && arity == 1);
    if (cls == "Integer") {
        if (m == "compare") return arity == 2;
        return (m == "parseInt" || m == "toString") && arity == 1;
    }
    if (cls == "String") return m == "valueOf" && arity == 1;
    if (cls == "Objects") return m == "equals" ? arity == 2 : ((m == "isNull" || m == "nonNull") && arity == 1);
    return false;
}

bool is_string_builtin(const std::string& m, std::size_t arity) {
    static const std::set<std::string> nullary = {"length", "isEmpty", "trim", "toUpperCase", "toLowerCase",
                                                  "toString", "hashCode"};
    static const std::set<std::string> unary = {"startsWith", "endsWith", "contains", "indexOf",
                                                "lastIndexOf", "concat", "equals", "equalsIgnoreCase",
                                                "compareTo", "substring"};
    if (arity == 0) return nullary.count(m) > 0;
    if (arity == 1) return unary.count(m) > 0;
    return arity == 2 && m == "substring";
}

std::set<std::string> own_class_names(const SourceFile* file) {
    std::set<std::string> out;
    if (file) {
        for (const auto& c : file->types) out.insert(c.name);
    }
    return out;
}

const MethodDecl* find_callee(const SourceFile* file, const MethodDecl& self, const std::string& name,
                              std::size_t arity, const Span& at) {
    std::vector<const MethodDecl*> found;
    if (file) {
        for (const auto* m : file->methods()) {
            if (m->name == name && m->params.size() == arity && !m->is_constructor()) found.push_back(m);
        }
    } else if (self.name == name && self.params.size() == arity) {
        found.push_back(&self);
    }
    if (found.empty()) throw UnsupportedForEvaluation(at, "call to unknown method '" + name + "'");
    if (found.size() > 1) throw UnsupportedForEvaluation(at, "overloaded method '" + name + "'");
    return found.front();
}

// ---------------------------------------------------------------------------
// Static subset check

class SupportChecker {
public:
    explicit SupportChecker(const SourceFile* file) : file_(file), classes_(own_class_names(file)) {}

    void check(const MethodDecl& m) {
        if (!checked_.insert(&m).second) return;
        method_ = &m;
        if (m.is_constructor()) throw UnsupportedForEvaluation(m.span, "constructor");
        const std::string& rt = m.return_type->name;
        if (rt != "void" && !is_supported_type(rt)) throw UnsupportedForEvaluation(m.return_type->span, "type " + rt);
        locals_.clear();
        for (const auto& p : m.params) {
            if (!is_supported_type(p.type.name)) throw UnsupportedForEvaluation(p.type.span, "type " + p.type.name);
            locals_.insert(p.name);
        }
        walk_block(m.body, [this](const Stmt& s) {
            if (const auto* d = s.get_if<LocalVarDecl>()) {
                if (d->type && !is_supported_type(d->type->name)) {
                    throw UnsupportedForEvaluation(d->type->span, "type " + d->type->name);
                }
                locals_.insert(d->name);
            }
        });
        std::vector<const MethodDecl*> callees;
        walk_block(m.body, [&](const Stmt& s) {
            if (const auto* t = s.get_if<ThrowStmt>()) {
                const auto* n = t->value.get_if<NewExpr>();
                if (!n) throw UnsupportedForEvaluation(t->value.span, "throw of a non-new expression");
                for (const auto& a : n->args) expr(a, callees);
                return;
            }
            for_each_direct_expr(s, [&](const Expr& e) { expr(e, callees); });
        });
        for (const auto* c : callees) check(*c);
    }

private:
    void expr(const Expr& e, std::vector<const MethodDecl*>& callees) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, NameExpr>) {
                    if (!locals_.count(n.name)) throw UnsupportedForEvaluation(e.span, "non-local name '" + n.name + "'");
                } else if constexpr (std::is_same_v<T, UnaryExpr>) {
                    expr(*n.operand, callees);
                } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                    expr(*n.lhs, callees);
                    expr(*n.rhs, callees);
                } else if constexpr (std::is_same_v<T, TernaryExpr>) {
                    expr(*n.cond, callees);
                    expr(*n.if_true, callees);
                    expr(*n.if_false, callees);
                } else if constexpr (std::is_same_v<T, AssignExpr>) {
                    if (!n.target->template is<NameExpr>()) throw UnsupportedForEvaluation(e.span, "field assignment");
                    expr(*n.target, callees);
                    expr(*n.value, callees);
                } else if constexpr (std::is_same_v<T, CallExpr>) {
                    for (const auto& a : n.args) expr(a, callees);
                    call(e, n, callees);
                } else if constexpr (std::is_same_v<T, FieldAccessExpr>) {
                    throw UnsupportedForEvaluation(e.span, "field access");
                } else if constexpr (std::is_same_v<T, NewExpr>) {
                    throw UnsupportedForEvaluation(e.span, "object creation");
                }
            },
            e.node);
    }

    void call(const Expr& e, const CallExpr& c, std::vector<const MethodDecl*>& callees) {
        const std::size_t arity = c.args.size();
        if (!c.receiver) {
            callees.push_back(find_callee(file_, *method_, c.method, arity, e.span));
            return;
        }
        const Expr& recv = **c.receiver;
        if (const auto* q = recv.get_if<NameExpr>(); q && !locals_.count(q->name) && is_class_name(q->name)) {
            if (is_static_builtin(q->name, c.method, arity)) return;
            if (classes_.count(q->name)) {
                callees.push_back(find_callee(file_, *method_, c.method, arity, e.span));
                return;
            }
            throw UnsupportedForEvaluation(e.span, "call " + q->name + "." + c.method);
        }
        expr(recv, callees);
        if (!is_string_builtin(c.method, arity)) throw UnsupportedForEvaluation(e.span, "call ." + c.method);
    }

    const SourceFile* file_;
    std::set<std::string> classes_;
    std::set<const MethodDecl*> checked_;
    const MethodDecl* method_ = nullptr;
    std::set<std::string> locals_;
};

// ---------------------------------------------------------------------------
// Interpreter

class Interpreter {
public:
    Interpreter(const SourceFile* file, std::int64_t fuel) : file_(file), classes_(own_class_names(file)), fuel_(fuel) {}

    Outcome run(const MethodDecl& m, const std::vector<Value>& args) {
        try {
            return Outcome::returned(call(m, args));
        } catch (const ThrowSignal& t) {
            return Outcome::threw(t.kind);
        } catch (const OutOfFuelSignal&) {
            return Outcome::out_of_fuel();
        }
    }

private:
    enum class Flow { Normal, Break, Continue, Return };

    using Env = std::vector<std::pair<std::string, Value>>;

    std::optional<Value> call(const MethodDecl& m, const std::vector<Value>& args) {
        if (depth_ >= kMaxCallDepth) throw OutOfFuelSignal{};
        Env env;
        for (std::size_t i = 0; i < m.params.size(); ++i) env.emplace_back(m.params[i].name, args.at(i));
        Env* saved_env = env_;
        const MethodDecl* saved_method = method_;
        std::optional<Value> saved_ret = std::move(ret_);
        env_ = &env;
        method_ = &m;
        ret_.reset();
        ++depth_;
        struct Restore {
            Interpreter& in;
            Env* env;
            const MethodDecl* method;
            std::optional<Value> ret;
            ~Restore() {
                in.env_ = env;
                in.method_ = method;
                in.ret_ = std::move(ret);
                --in.depth_;
            }
        } restore{*this, saved_env, saved_method, std::move(saved_ret)};
        exec_list(m.body.stmts);
        return ret_;
    }

    void spend() {
        if (--fuel_ < 0) throw OutOfFuelSignal{};
    }

    [[noreturn]] void unsupported(const Span& at, const std::string& what) { throw UnsupportedForEvaluation(at, what); }

    Value& lookup(const std::string& name, const Span& at) {
        for (auto it = env_->rbegin(); it != env_->rend(); ++it) {
            if (it->first == name) return it->second;
        }
        unsupported(at, "unbound name '" + name + "'");
    }

    std::int32_t as_int(const Value& v, const Span& at) {
        if (const auto* i = std::get_if<std::int32_t>(&v.v)) return *i;
        unsupported(at, "expected int");
    }

    bool as_bool(const Value& v, const Span& at) {
        if (const auto* b = std::get_if<bool>(&v.v)) return *b;
        unsupported(at, "expected boolean");
    }

    const std::string& as_string(const Value& v, const Span& at) {
        if (v.is_null()) throw ThrowSignal{"NullPointerException"};
        if (const auto* s = std::get_if<std::string>(&v.v)) return *s;
        unsupported(at, "expected String");
    }

    Flow exec_list(const std::vector<Stmt>& stmts) {
        for (const auto& s : stmts) {
            const Flow f = exec(s);
            if (f != Flow::Normal) return f;
        }
        return Flow::Normal;
    }

    Flow exec_scoped(const std::vector<Stmt>& stmts) {
        const std::size_t mark = env_->size();
        const Flow f = exec_list(stmts);
        env_->resize(mark);
        return f;
    }

    Flow exec(const Stmt& s) {
        spend();
        return std::visit(
            [&](const auto& n) -> Flow {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, Block>) {
                    return exec_scoped(n.stmts);
                } else if constexpr (std::is_same_v<T, IfStmt>) {
                    if (as_bool(eval(n.cond), n.cond.span)) return exec_scoped(n.then_block.stmts);
                    if (n.else_block) return exec_scoped(n.else_block->stmts);
                    return Flow::Normal;
                } else if constexpr (std::is_same_v<T, WhileStmt>) {
                    for (;;) {
                        spend();
                        if (!as_bool(eval(n.cond), n.cond.span)) return Flow::Normal;
                        const Flow f = exec_scoped(n.body.stmts);
                        if (f == Flow::Break) return Flow::Normal;
                        if (f == Flow::Return) return f;
                    }
                } else if constexpr (std::is_same_v<T, ForStmt>) {
                    const std::size_t mark = env_->size();
                    for (const auto& i : n.init) exec(i);
                    Flow result = Flow::Normal;
                    for (;;) {
                        spend();
                        if (n.cond && !as_bool(eval(*n.cond), n.cond->span)) break;
                        const Flow f = exec_scoped(n.body.stmts);
                        if (f == Flow::Break) break;
                        if (f == Flow::Return) {
                            result = f;
                            break;
                        }
                        for (const auto& u : n.update) eval(u);
                    }
                    env_->resize(mark);
                    return result;
                } else if constexpr (std::is_same_v<T, SwitchStmt>) {
                    return exec_switch(n);
                } else if constexpr (std::is_same_v<T, LocalVarDecl>) {
                    Value v = n.init ? eval(*n.init) : Value::null();
                    env_->emplace_back(n.name, std::move(v));
                    return Flow::Normal;
                } else if constexpr (std::is_same_v<T, ExprStmt>) {
                    eval(n.expr);
                    return Flow::Normal;
                } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                    if (n.value) ret_ = eval(*n.value);
                    return Flow::Return;
                } else if constexpr (std::is_same_v<T, BreakStmt>) {
                    return Flow::Break;
                } else if constexpr (std::is_same_v<T, ContinueStmt>) {
                    return Flow::Continue;
                } else {
                    const auto* ne = n.value.template get_if<NewExpr>();
                    if (!ne) unsupported(n.value.span, "throw of a non-new expression");
                    for (const auto& a : ne->args) eval(a);
                    throw ThrowSignal{ne->type.name};
                }
            },
            s.node);
    }

    Flow exec_switch(const SwitchStmt& sw) {
        const Value v = eval(sw.scrutinee);
        if (v.is_null()) throw ThrowSignal{"NullPointerException"};
        std::optional<std::size_t> start;
        std::optional<std::size_t> fallback;
        for (std::size_t i = 0; i < sw.cases.size() && !start; ++i) {
            for (const auto& l : sw.cases[i].labels) {
                if (l.is_default) {
                    fallback = i;
                } else if (l.value.kind == LiteralKind::Int) {
                    if (as_int(v, sw.scrutinee.span) == wrap(l.value.int_value)) start = i;
                } else if (as_string(v, sw.scrutinee.span) == unescape(l.value.text)) {
                    start = i;
                }
            }
        }
        if (!start) start = fallback;
        if (!start) return Flow::Normal;
        const std::size_t mark = env_->size();
        Flow result = Flow::Normal;
        for (std::size_t i = *start; i < sw.cases.size(); ++i) {
            const Flow f = exec_list(sw.cases[i].body);
            if (f == Flow::Break) break;
            if (f != Flow::Normal) {
                result = f;
                break;
            }
        }
        env_->resize(mark);
        return result;
    }

    Value eval(const Expr& e) {
        return std::visit(
            [&](const auto& n) -> Value {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, NameExpr>) {
                    return lookup(n.name, e.span);
                } else if constexpr (std::is_same_v<T, LiteralExpr>) {
                    switch (n.kind) {
                        case LiteralKind::Int: return Value::integer(wrap(n.int_value));
                        case LiteralKind::Bool: return Value::boolean(n.bool_value);
                        case LiteralKind::String: return Value::string(unescape(n.text));
                        case LiteralKind::Null: return Value::null();
                    }
                    return Value::null();
                } else if constexpr (std::is_same_v<T, UnaryExpr>) {
                    const Value v = eval(*n.operand);
                    if (n.op == UnaryOp::Not) return Value::boolean(!as_bool(v, e.span));
                    return Value::integer(wrap(-static_cast<std::int64_t>(as_int(v, e.span))));
                } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                    return binary(e, n);
                } else if constexpr (std::is_same_v<T, TernaryExpr>) {
                    return as_bool(eval(*n.cond), n.cond->span) ? eval(*n.if_true) : eval(*n.if_false);
                } else if constexpr (std::is_same_v<T, CallExpr>) {
                    return call_expr(e, n);
                } else if constexpr (std::is_same_v<T, AssignExpr>) {
                    const auto* target = n.target->template get_if<NameExpr>();
                    if (!target) unsupported(e.span, "field assignment");
                    Value v = eval(*n.value);
                    lookup(target->name, e.span) = v;
                    return v;
                } else if constexpr (std::is_same_v<T, FieldAccessExpr>) {
                    unsupported(e.span, "field access");
                } else {
                    unsupported(e.span, "object creation");
                }
            },
            e.node);
    }

    Value binary(const Expr& e, const BinaryExpr& b) {
        if (b.op == BinaryOp::And) {
            if (!as_bool(eval(*b.lhs), b.lhs->span)) return Value::boolean(false);
            return Value::boolean(as_bool(eval(*b.rhs), b.rhs->span));
        }
        if (b.op == BinaryOp::Or) {
            if (as_bool(eval(*b.lhs), b.lhs->span)) return Value::boolean(true);
            return Value::boolean(as_bool(eval(*b.rhs), b.rhs->span));
        }
        const Value l = eval(*b.lhs);
        const Value r = eval(*b.rhs);
        // Strings are the only reference type, so null is a String here.
        const bool lstr = l.is_null() || std::holds_alternative<std::string>(l.v);
        const bool rstr = r.is_null() || std::holds_alternative<std::string>(r.v);
        if (b.op == BinaryOp::Add && (lstr || rstr)) return Value::string(concat_text(l) + concat_text(r));
        if (b.op == BinaryOp::Eq || b.op == BinaryOp::Ne) {
            bool eq;
            if (l.is_null() || r.is_null()) {
                eq = l.is_null() && r.is_null();
            } else if (lstr || rstr) {
                unsupported(e.span, "string reference comparison");
            } else if (l.v.index() != r.v.index()) {
                unsupported(e.span, "comparison of mixed types");
            } else {
                eq = l == r;
            }
            return Value::boolean(b.op == BinaryOp::Eq ? eq : !eq);
        }
        const std::int64_t x = as_int(l, b.lhs->span);
        const std::int64_t y = as_int(r, b.rhs->span);
        switch (b.op) {
            case BinaryOp::Add: return Value::integer(wrap(x + y));
            case BinaryOp::Sub: return Value::integer(wrap(x - y));
            case BinaryOp::Mul: return Value::integer(wrap(x * y));
            case BinaryOp::Div:
                if (y == 0) throw ThrowSignal{"ArithmeticException"};
                return Value::integer(wrap(x / y));
            case BinaryOp::Mod:
                if (y == 0) throw ThrowSignal{"ArithmeticException"};
                return Value::integer(wrap(x % y));
            case BinaryOp::Lt: return Value::boolean(x < y);
            case BinaryOp::Le: return Value::boolean(x <= y);
            case BinaryOp::Gt: return Value::boolean(x > y);
            case BinaryOp::Ge: return Value::boolean(x >= y);
            default: unsupported(e.span, "operator");
        }
    }

    Value call_expr(const Expr& e, const CallExpr& c) {
        if (!c.receiver) return invoke(find_callee(file_, *method_, c.method, c.args.size(), e.span), c);
        const Expr& recv = **c.receiver;
        if (const auto* q = recv.get_if<NameExpr>(); q && is_class_name(q->name) && !bound(q->name)) {
            if (is_static_builtin(q->name, c.method, c.args.size())) return static_builtin(e, q->name, c);
            if (classes_.count(q->name)) return invoke(find_callee(file_, *method_, c.method, c.args.size(), e.span), c);
            unsupported(e.span, "call " + q->name + "." + c.method);
        }
        const Value target = eval(recv);
        std::vector<Value> args;
        for (const auto& a : c.args) args.push_back(eval(a));
        if (target.is_null()) throw ThrowSignal{"NullPointerException"};
        if (!std::holds_alternative<std::string>(target.v)) unsupported(e.span, "call on a non-string value");
        return string_method(e, std::get<std::string>(target.v), c.method, args);
    }

    bool bound(const std::string& name) const {
        for (const auto& [n, v] : *env_) {
            if (n == name) return true;
        }
        return false;
    }

    Value invoke(const MethodDecl* m, const CallExpr& c) {
        std::vector<Value> args;
        for (const auto& a : c.args) args.push_back(eval(a));
        auto r = call(*m, args);
        return r ? *r : Value::null();
    }

    Value static_builtin(const Expr& e, const std::string& cls, const CallExpr& c) {
        std::vector<Value> a;
        for (const auto& x : c.args) a.push_back(eval(x));
        const std::string& m = c.method;
        if (cls == "Math") {
            if (m == "abs") {
                const std::int64_t v = as_int(a[0], e.span);
                return Value::integer(wrap(v < 0 ? -v : v));
            }
            const std::int32_t x = as_int(a[0], e.span);
            const std::int32_t y = as_int(a[1], e.span);
            return Value::integer(m == "min" ? std::min(x, y) : std::max(x, y));
        }
        if (cls == "Integer") {
            if (m == "compare") {
                const std::int32_t x = as_int(a[0], e.span);
                const std::int32_t y = as_int(a[1], e.span);
                return Value::integer(x < y ? -1 : (x == y ? 0 : 1));
            }
            if (m == "toString") return Value::string(std::to_string(as_int(a[0], e.span)));
            return parse_int(a[0], e.span);
        }
        if (cls == "String") return Value::string(concat_text(a[0]));
        if (m == "equals") {
            if (a[0].is_null() || a[1].is_null()) return Value::boolean(a[0].is_null() && a[1].is_null());
            return Value::boolean(a[0] == a[1]);
        }
        return Value::boolean(m == "isNull" ? a[0].is_null() : !a[0].is_null());
    }

    Value parse_int(const Value& v, const Span& at) {
        if (v.is_null()) throw ThrowSignal{"NumberFormatException"};
        const std::string& s = as_string(v, at);
        std::size_t i = 0;
        bool negative = false;
        if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
            negative = s[0] == '-';
            i = 1;
        }
        if (i == s.size()) throw ThrowSignal{"NumberFormatException"};
        std::int64_t acc = 0;
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw ThrowSignal{"NumberFormatException"};
            acc = acc * 10 + (s[i] - '0');
            if (acc > 2147483648LL) throw ThrowSignal{"NumberFormatException"};
        }
        if (negative) acc = -acc;
        if (acc > std::numeric_limits<std::int32_t>::max()) throw ThrowSignal{"NumberFormatException"};
        return Value::integer(static_cast<std::int32_t>(acc));
    }

    Value string_method(const Expr& e, const std::string& s, const std::string& m, const std::vector<Value>& a) {
        const auto len = static_cast<std::int64_t>(s.size());
        if (m == "length") return Value::integer(static_cast<std::int32_t>(len));
        if (m == "isEmpty") return Value::boolean(s.empty());
        if (m == "toString") return Value::string(s);
        if (m == "trim") {
            std::size_t b = 0;
            std::size_t end = s.size();
            while (b < end && static_cast<unsigned char>(s[b]) <= ' ') ++b;
            while (end > b && static_cast<unsigned char>(s[end - 1]) <= ' ') --end;
            return Value::string(s.substr(b, end - b));
        }
        if (m == "toUpperCase" || m == "toLowerCase") {
            std::string out = s;
            for (auto& ch : out) {
                ch = static_cast<char>(m == "toUpperCase" ? std::toupper(static_cast<unsigned char>(ch))
                                                         : std::tolower(static_cast<unsigned char>(ch)));
            }
            return Value::string(out);
        }
        if (m == "hashCode") {
            std::uint32_t h = 0;
            for (unsigned char ch : s) h = 31 * h + ch;
            return Value::integer(static_cast<std::int32_t>(h));
        }
        if (m == "equals") return Value::boolean(!a[0].is_null() && a[0] == Value::string(s));
        if (m == "equalsIgnoreCase") {
            if (a[0].is_null()) return Value::boolean(false);
            const std::string& o = as_string(a[0], e.span);
            bool eq = o.size() == s.size();
            for (std::size_t i = 0; eq && i < s.size(); ++i) {
                eq = std::tolower(static_cast<unsigned char>(s[i])) == std::tolower(static_cast<unsigned char>(o[i]));
            }
            return Value::boolean(eq);
        }
        if (m == "substring") {
            const std::int64_t b = as_int(a[0], e.span);
            const std::int64_t end = a.size() > 1 ? as_int(a[1], e.span) : len;
            if (b < 0 || end > len || b > end) throw ThrowSignal{"StringIndexOutOfBoundsException"};
            return Value::string(s.substr(static_cast<std::size_t>(b), static_cast<std::size_t>(end - b)));
        }
        const std::string& o = as_string(a[0], e.span);
        if (m == "startsWith") return Value::boolean(s.compare(0, o.size(), o) == 0 && o.size() <= s.size());
        if (m == "endsWith") {
            return Value::boolean(o.size() <= s.size() && s.compare(s.size() - o.size(), o.size(), o) == 0);
        }
        if (m == "contains") return Value::boolean(s.find(o) != std::string::npos);
        if (m == "indexOf" || m == "lastIndexOf") {
            const std::size_t p = m == "indexOf" ? s.find(o) : s.rfind(o);
            return Value::integer(p == std::string::npos ? -1 : static_cast<std::int32_t>(p));
        }
        if (m == "concat") return Value::string(s + o);
        if (m == "compareTo") {
            const std::size_t n = std::min(s.size(), o.size());
            for (std::size_t i = 0; i < n; ++i) {
                if (s[i] != o[i]) {
                    return Value::integer(static_cast<unsigned char>(s[i]) - static_cast<unsigned char>(o[i]));
                }
            }
            return Value::integer(static_cast<std::int32_t>(s.size()) - static_cast<std::int32_t>(o.size()));
        }
        unsupported(e.span, "call ." + m);
    }

    const SourceFile* file_;
    std::set<std::string> classes_;
    std::int64_t fuel_;
    int depth_ = 0;
    Env* env_ = nullptr;
    const MethodDecl* method_ = nullptr;
    std::optional<Value> ret_;
};

}  // namespace

void check_supported(const MethodDecl& method, const SourceFile* file) { SupportChecker(file).check(method); }

bool is_supported(const MethodDecl& method, const SourceFile* file) {
    try {
        check_supported(method, file);
        return true;
    } catch (const UnsupportedForEvaluation&) {
        return false;
    }
}

Outcome evaluate(const MethodDecl& method, const std::vector<Value>& args, std::int64_t fuel, const SourceFile* file) {
    check_supported(method, file);
    if (args.size() != method.params.size()) {
        throw Error("evaluate: " + method.name + " takes " + std::to_string(method.params.size()) + " arguments, got " +
                    std::to_string(args.size()));
    }
    return Interpreter(file, fuel).run(method, args);
}

}  // namespace vmorph
