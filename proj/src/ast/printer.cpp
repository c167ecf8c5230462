#include "vmorph/printer.hpp"

#include <sstream>

namespace vmorph {

namespace {

using namespace ast;

constexpr int kAssignPrec = 1;
constexpr int kTernaryPrec = 2;
constexpr int kUnaryPrec = 9;
constexpr int kPostfixPrec = 10;

int expr_prec(const Expr& e) {
    return std::visit(
        [](const auto& n) -> int {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, AssignExpr>) return kAssignPrec;
            else if constexpr (std::is_same_v<T, TernaryExpr>) return kTernaryPrec;
            else if constexpr (std::is_same_v<T, BinaryExpr>) return precedence(n.op);
            else if constexpr (std::is_same_v<T, UnaryExpr>) return kUnaryPrec;
            else if constexpr (std::is_same_v<T, LiteralExpr>)
                return n.kind == LiteralKind::Int && n.int_value < 0 ? kUnaryPrec : kPostfixPrec;
            else return kPostfixPrec;
        },
        e.node);
}

std::string literal_text(const LiteralExpr& lit) {
    switch (lit.kind) {
        case LiteralKind::Int: return std::to_string(lit.int_value);
        case LiteralKind::Bool: return lit.bool_value ? "true" : "false";
        case LiteralKind::String: return "\"" + lit.text + "\"";
        case LiteralKind::Null: return "null";
    }
    return "";
}

void write_expr(std::string& out, const Expr& e);

void write_wrapped(std::string& out, const Expr& e, bool parens) {
    if (parens) out += '(';
    write_expr(out, e);
    if (parens) out += ')';
}

void write_args(std::string& out, const std::vector<Expr>& args) {
    out += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ", ";
        write_expr(out, args[i]);
    }
    out += ')';
}

void write_expr(std::string& out, const Expr& e) {
    std::visit(
        [&out](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, NameExpr>) {
                out += n.name;
            } else if constexpr (std::is_same_v<T, LiteralExpr>) {
                out += literal_text(n);
            } else if constexpr (std::is_same_v<T, UnaryExpr>) {
                out += to_string(n.op);
                const Expr& operand = *n.operand;
                bool parens = expr_prec(operand) < kUnaryPrec;
                if (n.op == UnaryOp::Neg) {
                    // `- -x` would re-lex as a decrement.
                    const auto* inner = operand.get_if<UnaryExpr>();
                    parens = parens || (inner && inner->op == UnaryOp::Neg) ||
                             (operand.is<LiteralExpr>() && expr_prec(operand) == kUnaryPrec);
                }
                write_wrapped(out, operand, parens);
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                const int p = precedence(n.op);
                write_wrapped(out, *n.lhs, expr_prec(*n.lhs) < p);
                out += ' ';
                out += to_string(n.op);
                out += ' ';
                write_wrapped(out, *n.rhs, expr_prec(*n.rhs) <= p);
            } else if constexpr (std::is_same_v<T, TernaryExpr>) {
                write_wrapped(out, *n.cond, expr_prec(*n.cond) <= kTernaryPrec);
                out += " ? ";
                write_wrapped(out, *n.if_true, expr_prec(*n.if_true) <= kTernaryPrec);
                out += " : ";
                write_wrapped(out, *n.if_false, expr_prec(*n.if_false) < kTernaryPrec);
            } else if constexpr (std::is_same_v<T, CallExpr>) {
                if (n.receiver) {
                    write_wrapped(out, **n.receiver, expr_prec(**n.receiver) < kPostfixPrec);
                    out += '.';
                }
                out += n.method;
                write_args(out, n.args);
            } else if constexpr (std::is_same_v<T, FieldAccessExpr>) {
                write_wrapped(out, *n.object, expr_prec(*n.object) < kPostfixPrec);
                out += '.';
                out += n.field;
            } else if constexpr (std::is_same_v<T, AssignExpr>) {
                write_expr(out, *n.target);
                out += " = ";
                write_expr(out, *n.value);
            } else if constexpr (std::is_same_v<T, NewExpr>) {
                out += "new ";
                out += n.type.name;
                write_args(out, n.args);
            }
        },
        e.node);
}

std::string modifier_text(unsigned mods) {
    std::string out;
    if (mods & kPublic) out += "public ";
    if (mods & kProtected) out += "protected ";
    if (mods & kPrivate) out += "private ";
    if (mods & kStatic) out += "static ";
    if (mods & kFinal) out += "final ";
    return out;
}

std::string decl_head(const LocalVarDecl& d) {
    std::string out = d.is_final ? "final " : "";
    out += d.type ? d.type->name : "var";
    return out;
}

class Printer {
public:
    explicit Printer(std::string base_indent, LineOrigins* origins)
        : base_(std::move(base_indent)), origins_(origins) {}

    std::string take() { return std::move(out_); }

    void line(const std::string& text, const std::optional<Span>& origin = std::nullopt) {
        if (!first_line_) out_ += '\n';
        first_line_ = false;
        if (!text.empty()) {
            out_ += base_;
            out_ += std::string(4 * depth_, ' ');
            out_ += text;
        }
        if (origins_) {
            origins_->push_back(origin);
            // Multi-line block comments occupy extra lines.
            for (char c : text) {
                if (c == '\n') origins_->push_back(std::nullopt);
            }
        }
    }

    void blank() { line(""); }

    void comments(const Comments& cs) {
        for (const auto& c : cs) line(c.text);
    }

    void file(const SourceFile& f) {
        comments(f.package_comments);
        bool need_gap = false;
        if (f.package) {
            line("package " + *f.package + ";");
            need_gap = true;
        }
        if (!f.imports.empty()) {
            if (need_gap) blank();
            for (const auto& imp : f.imports) {
                comments(imp.comments);
                line(std::string("import ") + (imp.is_static ? "static " : "") + imp.name + (imp.wildcard ? ".*" : "") +
                         ";",
                     imp.span);
            }
            need_gap = true;
        }
        for (const auto& cls : f.types) {
            if (need_gap) blank();
            class_decl(cls);
            need_gap = true;
        }
        if (!f.trailing_comments.empty()) {
            if (need_gap) blank();
            comments(f.trailing_comments);
        }
    }

    void class_decl(const ClassDecl& cls) {
        comments(cls.comments);
        std::string head = modifier_text(cls.modifiers) + "class " + cls.name;
        if (cls.extends) head += " extends " + cls.extends->name;
        if (!cls.implements.empty()) {
            head += " implements ";
            for (std::size_t i = 0; i < cls.implements.size(); ++i) {
                if (i) head += ", ";
                head += cls.implements[i].name;
            }
        }
        line(head + " {", cls.name_span);
        ++depth_;
        bool prev_field = false;
        for (std::size_t i = 0; i < cls.members.size(); ++i) {
            const bool is_field = std::holds_alternative<FieldDecl>(cls.members[i]);
            if (i > 0 && !(is_field && prev_field)) blank();
            if (const auto* f = std::get_if<FieldDecl>(&cls.members[i])) {
                comments(f->comments);
                std::string text = modifier_text(f->modifiers) + f->type.name + " " + f->name;
                if (f->init) text += " = " + print_expr(*f->init);
                line(text + ";", f->span);
            } else {
                method(std::get<MethodDecl>(cls.members[i]));
            }
            prev_field = is_field;
        }
        if (!cls.trailing_comments.empty()) {
            if (!cls.members.empty()) blank();
            comments(cls.trailing_comments);
        }
        --depth_;
        line("}");
    }

    void method(const MethodDecl& m) {
        comments(m.comments);
        std::string head = modifier_text(m.modifiers);
        if (m.return_type) head += m.return_type->name + " ";
        head += m.name + "(";
        for (std::size_t i = 0; i < m.params.size(); ++i) {
            if (i) head += ", ";
            if (m.params[i].is_final) head += "final ";
            head += m.params[i].type.name + " " + m.params[i].name;
        }
        head += ")";
        if (!m.throws.empty()) {
            head += " throws ";
            for (std::size_t i = 0; i < m.throws.size(); ++i) {
                if (i) head += ", ";
                head += m.throws[i].name;
            }
        }
        line(head + " {", m.name_span);
        block_body(m.body);
        line("}");
    }

    void block_body(const Block& b) {
        ++depth_;
        for (const auto& s : b.stmts) stmt(s);
        comments(b.trailing_comments);
        --depth_;
    }

    static bool prints_as_else_if(const Block& b) {
        return b.stmts.size() == 1 && b.stmts[0].is<IfStmt>() && b.stmts[0].comments.empty() &&
               b.trailing_comments.empty();
    }

    // From the statement's first token through its condition.
    static Span head_span(const Stmt& s) {
        const Span& cond = s.as<IfStmt>().cond.span;
        if (s.span.empty() || s.span.file != cond.file) return cond;
        return Span{cond.file, s.span.start, cond.end};
    }

    void if_chain(const IfStmt& n, const std::string& prefix, const Span& origin) {
        line(prefix + "if (" + print_expr(n.cond) + ") {", origin);
        block_body(n.then_block);
        if (!n.else_block) {
            line("}");
            return;
        }
        if (prints_as_else_if(*n.else_block)) {
            const Stmt& nested = n.else_block->stmts[0];
            if_chain(nested.as<IfStmt>(), "} else ", head_span(nested));
            return;
        }
        line("} else {");
        block_body(*n.else_block);
        line("}");
    }

    static std::string for_init(const std::vector<Stmt>& init) {
        std::string out;
        for (std::size_t i = 0; i < init.size(); ++i) {
            if (const auto* d = init[i].get_if<LocalVarDecl>()) {
                out += i == 0 ? decl_head(*d) + " " : ", ";
                out += d->name;
                if (d->init) out += " = " + print_expr(*d->init);
            } else {
                if (i) out += ", ";
                out += print_expr(init[i].as<ExprStmt>().expr);
            }
        }
        return out;
    }

    void stmt(const Stmt& s) {
        comments(s.comments);
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, Block>) {
                    line("{", s.span);
                    block_body(n);
                    line("}");
                } else if constexpr (std::is_same_v<T, IfStmt>) {
                    if_chain(n, "", head_span(s));
                } else if constexpr (std::is_same_v<T, WhileStmt>) {
                    line("while (" + print_expr(n.cond) + ") {", n.cond.span);
                    block_body(n.body);
                    line("}");
                } else if constexpr (std::is_same_v<T, ForStmt>) {
                    std::string head = "for (" + for_init(n.init) + ";";
                    head += n.cond ? " " + print_expr(*n.cond) + ";" : " ;";
                    head += " ";
                    for (std::size_t i = 0; i < n.update.size(); ++i) {
                        if (i) head += ", ";
                        head += print_expr(n.update[i]);
                    }
                    Span header{s.span.file, s.span.start, n.body.span.start};
                    line(head + ") {", header);
                    block_body(n.body);
                    line("}");
                } else if constexpr (std::is_same_v<T, SwitchStmt>) {
                    line("switch (" + print_expr(n.scrutinee) + ") {", n.scrutinee.span);
                    ++depth_;
                    for (const auto& c : n.cases) {
                        for (const auto& l : c.labels) {
                            line(l.is_default ? std::string("default:") : "case " + literal_text(l.value) + ":", l.span);
                        }
                        ++depth_;
                        for (const auto& b : c.body) stmt(b);
                        --depth_;
                    }
                    --depth_;
                    line("}");
                } else if constexpr (std::is_same_v<T, LocalVarDecl>) {
                    std::string text = decl_head(n) + " " + n.name;
                    if (n.init) text += " = " + print_expr(*n.init);
                    line(text + ";", s.span);
                } else if constexpr (std::is_same_v<T, ExprStmt>) {
                    line(print_expr(n.expr) + ";", s.span);
                } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                    line(n.value ? "return " + print_expr(*n.value) + ";" : std::string("return;"), s.span);
                } else if constexpr (std::is_same_v<T, BreakStmt>) {
                    line("break;", s.span);
                } else if constexpr (std::is_same_v<T, ContinueStmt>) {
                    line("continue;", s.span);
                } else if constexpr (std::is_same_v<T, ThrowStmt>) {
                    line("throw " + print_expr(n.value) + ";", s.span);
                }
            },
            s.node);
    }

private:
    std::string base_;
    LineOrigins* origins_;
    std::string out_;
    int depth_ = 0;
    bool first_line_ = true;
};

}  // namespace

std::string print_expr(const Expr& expr) {
    std::string out;
    write_expr(out, expr);
    return out;
}

std::string print(const SourceFile& file) {
    Printer p("", nullptr);
    p.file(file);
    std::string out = p.take();
    out += '\n';
    return out;
}

std::string print_method(const MethodDecl& method, const std::string& indent, LineOrigins* origins) {
    Printer p(indent, origins);
    p.method(method);
    return p.take();
}

std::string print_stmt(const Stmt& stmt, const std::string& indent) {
    Printer p(indent, nullptr);
    p.stmt(stmt);
    return p.take();
}

}  // namespace vmorph
