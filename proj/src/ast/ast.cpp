#include "vmorph/ast.hpp"

#include <stdexcept>
#include <utility>

namespace vmorph {

std::string to_string(const Span& span) {
    return span.file + ":" + std::to_string(span.start.line) + ":" + std::to_string(span.start.col);
}

LineRange parse_line_range(const std::string& text) {
    const auto colon = text.find(':');
    try {
        std::size_t used = 0;
        LineRange r;
        if (colon == std::string::npos) {
            r.first = r.last = std::stoi(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
        } else {
            const std::string a = text.substr(0, colon);
            const std::string b = text.substr(colon + 1);
            r.first = std::stoi(a, &used);
            if (used != a.size()) throw std::invalid_argument(text);
            r.last = std::stoi(b, &used);
            if (used != b.size()) throw std::invalid_argument(text);
        }
        if (r.first < 1 || r.last < r.first) throw std::invalid_argument(text);
        return r;
    } catch (const std::logic_error&) {
        throw std::invalid_argument("invalid line range '" + text + "' (expected A:B with 1 <= A <= B)");
    }
}

std::string to_string(const LineRange& range) {
    return std::to_string(range.first) + ":" + std::to_string(range.last);
}

}  // namespace vmorph

namespace vmorph::ast {

bool SwitchCase::terminated() const {
    if (body.empty()) return false;
    const Stmt& last = body.back();
    return last.is<BreakStmt>() || last.is<ReturnStmt>() || last.is<ThrowStmt>() || last.is<ContinueStmt>();
}

std::vector<const MethodDecl*> ClassDecl::methods() const {
    std::vector<const MethodDecl*> out;
    for (const auto& m : members) {
        if (const auto* md = std::get_if<MethodDecl>(&m)) out.push_back(md);
    }
    return out;
}

std::vector<MethodDecl*> ClassDecl::methods() {
    std::vector<MethodDecl*> out;
    for (auto& m : members) {
        if (auto* md = std::get_if<MethodDecl>(&m)) out.push_back(md);
    }
    return out;
}

std::vector<const MethodDecl*> SourceFile::methods() const {
    std::vector<const MethodDecl*> out;
    for (const auto& cls : types) {
        for (const auto* m : cls.methods()) out.push_back(m);
    }
    return out;
}

std::vector<MethodDecl*> SourceFile::methods() {
    std::vector<MethodDecl*> out;
    for (auto& cls : types) {
        for (auto* m : cls.methods()) out.push_back(m);
    }
    return out;
}

Expr make_name(std::string name, Span span) { return Expr{NameExpr{std::move(name)}, std::move(span)}; }

Expr make_call(std::optional<Expr> receiver, std::string method, std::vector<Expr> args, Span span) {
    CallExpr call;
    if (receiver) call.receiver = std::move(*receiver);
    call.method = std::move(method);
    call.method_span = span;
    call.args = std::move(args);
    return Expr{std::move(call), std::move(span)};
}

Stmt make_stmt(StmtNode node, Span span, Comments comments) {
    return Stmt{std::move(node), std::move(span), std::move(comments)};
}

const char* to_string(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Mul: return "*";
        case BinaryOp::Div: return "/";
        case BinaryOp::Mod: return "%";
        case BinaryOp::Lt: return "<";
        case BinaryOp::Le: return "<=";
        case BinaryOp::Gt: return ">";
        case BinaryOp::Ge: return ">=";
        case BinaryOp::Eq: return "==";
        case BinaryOp::Ne: return "!=";
        case BinaryOp::And: return "&&";
        case BinaryOp::Or: return "||";
    }
    return "?";
}

const char* to_string(UnaryOp op) { return op == UnaryOp::Not ? "!" : "-"; }

int precedence(BinaryOp op) {
    switch (op) {
        case BinaryOp::Or: return 3;
        case BinaryOp::And: return 4;
        case BinaryOp::Eq:
        case BinaryOp::Ne: return 5;
        case BinaryOp::Lt:
        case BinaryOp::Le:
        case BinaryOp::Gt:
        case BinaryOp::Ge: return 6;
        case BinaryOp::Add:
        case BinaryOp::Sub: return 7;
        case BinaryOp::Mul:
        case BinaryOp::Div:
        case BinaryOp::Mod: return 8;
    }
    return 0;
}

const MethodDecl* find_method_covering(const SourceFile& file, LineRange lines) {
    for (const auto* m : file.methods()) {
        if (m->span.start.line <= lines.first && m->span.end.line >= lines.last) return m;
    }
    return nullptr;
}

MethodDecl* find_method_covering(SourceFile& file, LineRange lines) {
    return const_cast<MethodDecl*>(find_method_covering(std::as_const(file), lines));
}

}  // namespace vmorph::ast
