#include "vmorph/parser.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "vmorph/errors.hpp"
#include "vmorph/lexer.hpp"

namespace vmorph {

namespace {

using namespace ast;

constexpr std::array<std::string_view, 8> kPrimitiveTypes = {"int",   "boolean", "long",  "char",
                                                             "byte",  "short",   "double", "float"};

bool is_primitive_type(const Token& t) {
    return t.kind == TokenKind::Keyword &&
           std::find(kPrimitiveTypes.begin(), kPrimitiveTypes.end(), t.text) != kPrimitiveTypes.end();
}

bool is_unsupported_binary(const Token& t) {
    static const std::set<std::string, std::less<>> ops = {"&", "|", "^", "<<", ">>", ">>>"};
    return t.kind == TokenKind::Punct && ops.count(t.text) > 0;
}

bool is_compound_assign(const Token& t) {
    static const std::set<std::string, std::less<>> ops = {"+=", "-=", "*=", "/=",  "%=",  "&=",
                                                           "|=", "^=", "<<=", ">>=", ">>>="};
    return t.kind == TokenKind::Punct && ops.count(t.text) > 0;
}

class Parser {
public:
    Parser(std::string_view text, const std::string& file) : file_(file), tokens_(lex(text, file)) {
        for (std::size_t i = 0; i < tokens_.size(); ++i) {
            if (tokens_[i].kind != TokenKind::Comment) sig_.push_back(i);
        }
        collect_comments_before(0);
    }

    SourceFile parse_unit() {
        SourceFile unit;
        unit.path = file_;
        const Position start = cur().span.start;

        if (cur().is_keyword("package")) {
            unit.package_comments = take_comments();
            advance();
            unit.package = parse_qualified_name();
            expect_punct(";");
        }
        while (cur().is_keyword("import")) {
            Import imp;
            imp.comments = take_comments();
            const Position s = cur().span.start;
            advance();
            if (cur().is_keyword("static")) {
                imp.is_static = true;
                advance();
            }
            imp.name = expect_identifier().text;
            while (cur().is_punct(".")) {
                advance();
                if (cur().is_punct("*")) {
                    advance();
                    imp.wildcard = true;
                    break;
                }
                imp.name += "." + expect_identifier().text;
            }
            expect_punct(";");
            imp.span = span_from(s);
            unit.imports.push_back(std::move(imp));
        }
        while (cur().kind != TokenKind::End) {
            if (cur().is_punct(";")) {
                advance();
                continue;
            }
            unit.types.push_back(parse_class());
        }
        unit.trailing_comments = take_comments();
        unit.span = Span{file_, start, cur().span.end};
        if (unit.span.end < unit.span.start) unit.span.end = unit.span.start;
        return unit;
    }

    Expr parse_standalone_expression() {
        Expr e = parse_expr();
        if (cur().kind != TokenKind::End) fail("unexpected '" + cur().text + "' after expression");
        return e;
    }

    std::vector<Stmt> parse_standalone_statements() {
        std::vector<Stmt> out;
        while (cur().kind != TokenKind::End) parse_block_statement(out);
        return out;
    }

private:
    // --- token plumbing ----------------------------------------------------

    const Token& cur() const { return tokens_[sig_[pos_]]; }
    const Token& peek(std::size_t k) const {
        const std::size_t i = std::min(pos_ + k, sig_.size() - 1);
        return tokens_[sig_[i]];
    }

    void collect_comments_before(std::size_t sig_index) {
        const std::size_t first = sig_index == 0 ? 0 : sig_[sig_index - 1] + 1;
        for (std::size_t i = first; i < sig_[sig_index]; ++i) {
            pending_.push_back(Comment{tokens_[i].text, tokens_[i].span});
        }
    }

    const Token& advance() {
        const Token& t = cur();
        prev_end_ = t.span.end;
        if (pos_ + 1 < sig_.size()) {
            ++pos_;
            collect_comments_before(pos_);
        }
        return t;
    }

    Comments take_comments() {
        Comments out;
        out.swap(pending_);
        return out;
    }

    Span span_from(Position start) const { return Span{file_, start, prev_end_}; }

    [[noreturn]] void fail(const std::string& message) const { throw SyntaxError(cur().span, message); }
    [[noreturn]] void unsupported(const std::string& construct) const {
        throw UnsupportedConstruct(cur().span, construct);
    }

    void expect_punct(std::string_view p) {
        if (!cur().is_punct(p)) {
            fail("expected '" + std::string(p) + "' but found '" + describe(cur()) + "'");
        }
        advance();
    }

    const Token& expect_identifier() {
        if (cur().kind != TokenKind::Identifier) fail("expected identifier but found '" + describe(cur()) + "'");
        if (cur().text == "true" || cur().text == "false" || cur().text == "null") {
            fail("'" + cur().text + "' cannot be used as an identifier");
        }
        return advance();
    }

    static std::string describe(const Token& t) { return t.kind == TokenKind::End ? "end of input" : t.text; }

    std::string parse_qualified_name() {
        std::string name = expect_identifier().text;
        while (cur().is_punct(".") && peek(1).kind == TokenKind::Identifier) {
            advance();
            name += "." + advance().text;
        }
        return name;
    }

    // --- declarations ------------------------------------------------------

    unsigned parse_modifiers() {
        unsigned mods = 0;
        while (true) {
            const Token& t = cur();
            if (t.is_punct("@")) unsupported("annotation");
            if (t.kind != TokenKind::Keyword) return mods;
            unsigned bit = 0;
            if (t.text == "public") bit = kPublic;
            else if (t.text == "protected") bit = kProtected;
            else if (t.text == "private") bit = kPrivate;
            else if (t.text == "static") bit = kStatic;
            else if (t.text == "final") bit = kFinal;
            else if (t.text == "abstract" || t.text == "native" || t.text == "synchronized" ||
                     t.text == "transient" || t.text == "volatile" || t.text == "strictfp") {
                unsupported("modifier '" + t.text + "'");
            } else {
                return mods;
            }
            if (mods & bit) fail("repeated modifier '" + t.text + "'");
            mods |= bit;
            advance();
        }
    }

    TypeRef parse_type() {
        const Position s = cur().span.start;
        TypeRef type;
        if (is_primitive_type(cur()) || cur().is_keyword("void")) {
            type.name = advance().text;
        } else if (cur().kind == TokenKind::Identifier) {
            type.name = parse_qualified_name();
        } else {
            fail("expected type but found '" + describe(cur()) + "'");
        }
        type.span = span_from(s);
        if (cur().is_punct("<")) unsupported("generic type");
        if (cur().is_punct("[")) unsupported("array type");
        if (cur().is_punct("...")) unsupported("varargs");
        return type;
    }

    ClassDecl parse_class() {
        ClassDecl cls;
        cls.comments = take_comments();
        const Position s = cur().span.start;
        cls.modifiers = parse_modifiers();
        if (cur().is_keyword("interface")) unsupported("interface");
        if (cur().is_keyword("enum")) unsupported("enum");
        if (cur().kind == TokenKind::Identifier && cur().text == "record") unsupported("record");
        if (!cur().is_keyword("class")) fail("expected class declaration but found '" + describe(cur()) + "'");
        advance();
        const Token& name = expect_identifier();
        cls.name = name.text;
        cls.name_span = name.span;
        if (cur().is_punct("<")) unsupported("generic class");
        if (cur().is_keyword("extends")) {
            advance();
            cls.extends = parse_type();
        }
        if (cur().is_keyword("implements")) {
            advance();
            cls.implements.push_back(parse_type());
            while (cur().is_punct(",")) {
                advance();
                cls.implements.push_back(parse_type());
            }
        }
        expect_punct("{");
        while (!cur().is_punct("}")) {
            if (cur().kind == TokenKind::End) fail("unterminated class body");
            if (cur().is_punct(";")) {
                advance();
                continue;
            }
            parse_member(cls);
        }
        cls.trailing_comments = take_comments();
        expect_punct("}");
        cls.span = span_from(s);
        return cls;
    }

    void parse_member(ClassDecl& cls) {
        Comments comments = take_comments();
        const Position s = cur().span.start;
        if (cur().is_punct("{")) unsupported("initializer block");
        const unsigned mods = parse_modifiers();
        if (cur().is_punct("{")) unsupported("initializer block");
        if (cur().is_keyword("class") || cur().is_keyword("interface") || cur().is_keyword("enum")) {
            unsupported("nested type");
        }
        if (cur().is_punct("<")) unsupported("generic method");

        if (cur().kind == TokenKind::Identifier && cur().text == cls.name && peek(1).is_punct("(")) {
            MethodDecl m;
            m.comments = std::move(comments);
            m.modifiers = mods;
            const Token& name = advance();
            m.name = name.text;
            m.name_span = name.span;
            parse_method_rest(m, s);
            cls.members.emplace_back(std::move(m));
            return;
        }

        TypeRef type = parse_type();
        const Token& name = expect_identifier();
        if (cur().is_punct("(")) {
            MethodDecl m;
            m.comments = std::move(comments);
            m.modifiers = mods;
            m.return_type = std::move(type);
            m.name = name.text;
            m.name_span = name.span;
            parse_method_rest(m, s);
            cls.members.emplace_back(std::move(m));
            return;
        }
        if (type.name == "void") throw SyntaxError(type.span, "field cannot have type void");

        FieldDecl field;
        field.comments = std::move(comments);
        field.modifiers = mods;
        field.type = type;
        field.name = name.text;
        field.name_span = name.span;
        Position field_start = s;
        while (true) {
            if (cur().is_punct("[")) unsupported("array type");
            if (cur().is_punct("=")) {
                advance();
                field.init = parse_expr();
            }
            field.span = span_from(field_start);
            if (!cur().is_punct(",")) break;
            advance();
            cls.members.emplace_back(field);
            const Token& next = expect_identifier();
            field_start = next.span.start;
            field.comments.clear();
            field.name = next.text;
            field.name_span = next.span;
            field.init.reset();
        }
        expect_punct(";");
        field.span = span_from(field_start);
        cls.members.emplace_back(std::move(field));
    }

    void parse_method_rest(MethodDecl& m, Position start) {
        expect_punct("(");
        std::set<std::string> seen;
        if (!cur().is_punct(")")) {
            while (true) {
                Param p;
                if (cur().is_punct("@")) unsupported("annotation");
                if (cur().is_keyword("final")) {
                    p.is_final = true;
                    advance();
                }
                p.type = parse_type();
                const Token& name = expect_identifier();
                p.name = name.text;
                p.name_span = name.span;
                if (cur().is_punct("[")) unsupported("array type");
                if (!seen.insert(p.name).second) {
                    throw SyntaxError(p.name_span, "duplicate parameter '" + p.name + "'");
                }
                m.params.push_back(std::move(p));
                if (!cur().is_punct(",")) break;
                advance();
            }
        }
        expect_punct(")");
        if (cur().is_keyword("throws")) {
            advance();
            m.throws.push_back(parse_type());
            while (cur().is_punct(",")) {
                advance();
                m.throws.push_back(parse_type());
            }
        }
        if (cur().is_punct(";")) unsupported("method without body");
        m.body = parse_block();
        m.span = span_from(start);
    }

    // --- statements --------------------------------------------------------

    Block parse_block() {
        Block block;
        const Position s = cur().span.start;
        expect_punct("{");
        while (!cur().is_punct("}")) {
            if (cur().kind == TokenKind::End) fail("unterminated block");
            parse_block_statement(block.stmts);
        }
        block.trailing_comments = take_comments();
        expect_punct("}");
        block.span = span_from(s);
        return block;
    }

    // Body of if/while/for: braces optional in the source, always a Block in the AST.
    Block parse_body() {
        if (cur().is_punct("{")) return parse_block();
        Block block;
        const Position s = cur().span.start;
        parse_block_statement(block.stmts);
        block.span = span_from(s);
        return block;
    }

    bool at_local_decl() const {
        const Token& t = cur();
        if (t.is_keyword("final")) return true;
        if (is_primitive_type(t)) return true;
        if (t.kind != TokenKind::Identifier) return false;
        if (t.text == "var" && peek(1).kind == TokenKind::Identifier) return true;
        std::size_t k = 1;
        while (peek(k).is_punct(".") && peek(k + 1).kind == TokenKind::Identifier) k += 2;
        const Token& after = peek(k);
        if (after.kind == TokenKind::Identifier) return true;
        if (after.is_punct("<") && k == 1) unsupported("generic type");
        if (after.is_punct("[")) unsupported(peek(k + 1).is_punct("]") ? "array type" : "array access");
        return false;
    }

    void parse_block_statement(std::vector<Stmt>& out) {
        if (at_local_decl()) {
            auto decls = parse_local_decls(take_comments());
            expect_punct(";");
            decls.back().span.end = prev_end_;
            for (auto& d : decls) out.push_back(std::move(d));
            return;
        }
        out.push_back(parse_statement());
    }

    std::vector<Stmt> parse_local_decls(Comments comments) {
        const Position s = cur().span.start;
        bool is_final = false;
        if (cur().is_keyword("final")) {
            is_final = true;
            advance();
        }
        std::optional<TypeRef> type;
        if (cur().kind == TokenKind::Identifier && cur().text == "var" && peek(1).kind == TokenKind::Identifier) {
            advance();
        } else {
            type = parse_type();
        }
        std::vector<Stmt> out;
        Position decl_start = s;
        while (true) {
            LocalVarDecl decl;
            decl.type = type;
            decl.is_final = is_final;
            const Token& name = expect_identifier();
            decl.name = name.text;
            decl.name_span = name.span;
            if (cur().is_punct("[")) unsupported("array type");
            if (cur().is_punct(":")) unsupported("enhanced for loop");
            if (cur().is_punct("=")) {
                advance();
                decl.init = parse_expr();
            } else if (!type) {
                fail("'var' declaration requires an initializer");
            }
            out.push_back(make_stmt(std::move(decl), span_from(decl_start), out.empty() ? std::move(comments) : Comments{}));
            if (!cur().is_punct(",")) break;
            if (!type) unsupported("multiple 'var' declarators");
            advance();
            decl_start = cur().span.start;
        }
        return out;
    }

    Stmt parse_statement() {
        Comments comments = take_comments();
        const Position s = cur().span.start;
        const Token& t = cur();

        if (t.is_punct("{")) {
            Block b = parse_block();
            Span sp = b.span;
            return make_stmt(std::move(b), sp, std::move(comments));
        }
        if (t.is_punct(";")) {
            advance();
            Block empty;
            empty.span = span_from(s);
            return make_stmt(std::move(empty), span_from(s), std::move(comments));
        }
        if (t.kind == TokenKind::Identifier && peek(1).is_punct(":")) unsupported("labeled statement");
        if (t.kind == TokenKind::Keyword) {
            if (t.text == "if") return parse_if(std::move(comments));
            if (t.text == "while") {
                advance();
                expect_punct("(");
                Expr cond = parse_expr();
                expect_punct(")");
                Block body = parse_body();
                return make_stmt(WhileStmt{std::move(cond), std::move(body)}, span_from(s), std::move(comments));
            }
            if (t.text == "for") return parse_for(std::move(comments));
            if (t.text == "switch") return parse_switch(std::move(comments));
            if (t.text == "return") {
                advance();
                ReturnStmt r;
                if (!cur().is_punct(";")) r.value = parse_expr();
                expect_punct(";");
                return make_stmt(std::move(r), span_from(s), std::move(comments));
            }
            if (t.text == "break" || t.text == "continue") {
                const bool is_break = t.text == "break";
                advance();
                if (cur().kind == TokenKind::Identifier) unsupported("labeled " + std::string(is_break ? "break" : "continue"));
                expect_punct(";");
                if (is_break) return make_stmt(BreakStmt{}, span_from(s), std::move(comments));
                return make_stmt(ContinueStmt{}, span_from(s), std::move(comments));
            }
            if (t.text == "throw") {
                advance();
                Expr value = parse_expr();
                expect_punct(";");
                return make_stmt(ThrowStmt{std::move(value)}, span_from(s), std::move(comments));
            }
            if (t.text == "do") unsupported("do-while loop");
            if (t.text == "try") unsupported("try statement");
            if (t.text == "synchronized") unsupported("synchronized block");
            if (t.text == "assert") unsupported("assert statement");
            if (t.text == "class" || t.text == "interface" || t.text == "enum") unsupported("local type");
            if (t.text == "else") fail("'else' without 'if'");
            if (t.text == "case" || t.text == "default") fail("'" + t.text + "' outside switch");
        }

        Expr e = parse_expr();
        if (!e.is<AssignExpr>() && !e.is<CallExpr>() && !e.is<NewExpr>()) {
            throw SyntaxError(e.span, "not a statement");
        }
        expect_punct(";");
        return make_stmt(ExprStmt{std::move(e)}, span_from(s), std::move(comments));
    }

    Stmt parse_if(Comments comments) {
        const Position s = cur().span.start;
        advance();
        expect_punct("(");
        Expr cond = parse_expr();
        expect_punct(")");
        IfStmt node{std::move(cond), parse_body(), std::nullopt};
        if (cur().is_keyword("else")) {
            advance();
            if (cur().is_keyword("if")) {
                Block b;
                const Position es = cur().span.start;
                b.stmts.push_back(parse_if(take_comments()));
                b.span = span_from(es);
                node.else_block = std::move(b);
            } else {
                node.else_block = parse_body();
            }
        }
        return make_stmt(std::move(node), span_from(s), std::move(comments));
    }

    Stmt parse_for(Comments comments) {
        const Position s = cur().span.start;
        advance();
        expect_punct("(");
        ForStmt node;
        if (!cur().is_punct(";")) {
            if (at_local_decl()) {
                node.init = parse_local_decls({});
            } else {
                while (true) {
                    const Position es = cur().span.start;
                    Expr e = parse_expr();
                    if (!e.is<AssignExpr>() && !e.is<CallExpr>() && !e.is<NewExpr>()) {
                        throw SyntaxError(e.span, "not a statement");
                    }
                    node.init.push_back(make_stmt(ExprStmt{std::move(e)}, span_from(es)));
                    if (!cur().is_punct(",")) break;
                    advance();
                }
            }
        }
        expect_punct(";");
        if (!cur().is_punct(";")) node.cond = parse_expr();
        expect_punct(";");
        if (!cur().is_punct(")")) {
            while (true) {
                Expr e = parse_expr();
                if (!e.is<AssignExpr>() && !e.is<CallExpr>() && !e.is<NewExpr>()) {
                    throw SyntaxError(e.span, "not a statement");
                }
                node.update.push_back(std::move(e));
                if (!cur().is_punct(",")) break;
                advance();
            }
        }
        expect_punct(")");
        node.body = parse_body();
        return make_stmt(std::move(node), span_from(s), std::move(comments));
    }

    CaseLabel parse_case_label() {
        CaseLabel label;
        const Position s = cur().span.start;
        if (cur().is_keyword("default")) {
            advance();
            label.is_default = true;
        } else {
            advance();  // `case`
            if (cur().kind == TokenKind::IntLiteral) {
                if (cur().int_value > 2147483647LL) fail("integer literal out of 32-bit range");
                label.value = LiteralExpr::integer(advance().int_value);
            } else if (cur().is_punct("-") && peek(1).kind == TokenKind::IntLiteral) {
                advance();
                label.value = LiteralExpr::integer(-advance().int_value);
            } else if (cur().kind == TokenKind::StringLiteral) {
                const std::string& raw = advance().text;
                label.value = LiteralExpr::string(raw.substr(1, raw.size() - 2));
            } else {
                unsupported("non-literal case label");
            }
        }
        if (cur().is_punct("->")) unsupported("arrow-form switch");
        if (cur().is_punct(",")) unsupported("multi-label case");
        expect_punct(":");
        label.span = span_from(s);
        return label;
    }

    static std::string label_key(const CaseLabel& l) {
        if (l.is_default) return "default";
        if (l.value.kind == LiteralKind::String) return "s:" + l.value.text;
        return "i:" + std::to_string(l.value.int_value);
    }

    Stmt parse_switch(Comments comments) {
        const Position s = cur().span.start;
        advance();
        expect_punct("(");
        SwitchStmt node{parse_expr(), {}};
        expect_punct(")");
        expect_punct("{");
        std::set<std::string> seen;
        while (!cur().is_punct("}")) {
            if (!cur().is_keyword("case") && !cur().is_keyword("default")) {
                fail("expected 'case' or 'default' but found '" + describe(cur()) + "'");
            }
            const Position cs = cur().span.start;
            CaseLabel label = parse_case_label();
            if (!seen.insert(label_key(label)).second) throw SyntaxError(label.span, "duplicate case label");
            if (!node.cases.empty() && node.cases.back().body.empty()) {
                node.cases.back().labels.push_back(std::move(label));
            } else {
                SwitchCase c;
                c.labels.push_back(std::move(label));
                c.span.start = cs;
                node.cases.push_back(std::move(c));
            }
            SwitchCase& c = node.cases.back();
            while (!cur().is_keyword("case") && !cur().is_keyword("default") && !cur().is_punct("}")) {
                if (cur().kind == TokenKind::End) fail("unterminated switch");
                parse_block_statement(c.body);
            }
            c.span = Span{file_, c.span.start, prev_end_};
        }
        expect_punct("}");
        return make_stmt(std::move(node), span_from(s), std::move(comments));
    }

    // --- expressions -------------------------------------------------------

    Expr finish(ExprNode node, Position start) const { return Expr{std::move(node), span_from(start)}; }

    Expr parse_expr() {
        const Position s = cur().span.start;
        Expr lhs = parse_ternary();
        if (cur().is_punct("=")) {
            if (!lhs.is<NameExpr>() && !lhs.is<FieldAccessExpr>()) fail("invalid assignment target");
            if (const auto* n = lhs.get_if<NameExpr>(); n && n->name == "this") fail("cannot assign to 'this'");
            advance();
            Expr rhs = parse_expr();
            return finish(AssignExpr{std::move(lhs), std::move(rhs)}, s);
        }
        if (is_compound_assign(cur())) unsupported("compound assignment");
        return lhs;
    }

    Expr parse_ternary() {
        const Position s = cur().span.start;
        Expr cond = parse_binary(0);
        if (!cur().is_punct("?")) return cond;
        advance();
        Expr if_true = parse_expr();
        expect_punct(":");
        Expr if_false = parse_ternary();
        return finish(TernaryExpr{std::move(cond), std::move(if_true), std::move(if_false)}, s);
    }

    static std::optional<BinaryOp> binary_op(const Token& t) {
        if (t.kind != TokenKind::Punct) return std::nullopt;
        static const std::array<std::pair<std::string_view, BinaryOp>, 13> table = {{
            {"||", BinaryOp::Or}, {"&&", BinaryOp::And}, {"==", BinaryOp::Eq}, {"!=", BinaryOp::Ne},
            {"<", BinaryOp::Lt},  {"<=", BinaryOp::Le},  {">", BinaryOp::Gt},  {">=", BinaryOp::Ge},
            {"+", BinaryOp::Add}, {"-", BinaryOp::Sub},  {"*", BinaryOp::Mul}, {"/", BinaryOp::Div},
            {"%", BinaryOp::Mod},
        }};
        for (const auto& [text, op] : table) {
            if (t.text == text) return op;
        }
        return std::nullopt;
    }

    // Precedence climbing over the left-associative binary levels.
    Expr parse_binary(int min_prec) {
        const Position s = cur().span.start;
        Expr lhs = parse_unary();
        while (true) {
            if (cur().is_keyword("instanceof")) unsupported("instanceof");
            if (is_unsupported_binary(cur())) unsupported("bitwise operator '" + cur().text + "'");
            auto op = binary_op(cur());
            if (!op || precedence(*op) < min_prec) return lhs;
            advance();
            Expr rhs = parse_binary(precedence(*op) + 1);
            lhs = finish(BinaryExpr{*op, std::move(lhs), std::move(rhs)}, s);
        }
    }

    Expr parse_unary() {
        const Position s = cur().span.start;
        if (cur().is_punct("!")) {
            advance();
            return finish(UnaryExpr{UnaryOp::Not, parse_unary()}, s);
        }
        if (cur().is_punct("-")) {
            advance();
            if (cur().kind == TokenKind::IntLiteral) {
                // 2147483648 is only legal directly under unary minus.
                const Token& lit = advance();
                Expr operand{LiteralExpr::integer(lit.int_value), lit.span};
                return finish(UnaryExpr{UnaryOp::Neg, std::move(operand)}, s);
            }
            return finish(UnaryExpr{UnaryOp::Neg, parse_unary()}, s);
        }
        if (cur().is_punct("++") || cur().is_punct("--")) unsupported("increment/decrement operator");
        if (cur().is_punct("~")) unsupported("bitwise operator '~'");
        if (cur().is_punct("+")) unsupported("unary plus");
        Expr e = parse_postfix(parse_primary(), s);
        if (cur().is_punct("++") || cur().is_punct("--")) unsupported("increment/decrement operator");
        return e;
    }

    Expr parse_postfix(Expr e, Position s) {
        while (true) {
            if (cur().is_punct(".")) {
                advance();
                if (cur().is_keyword("new")) unsupported("inner class creation");
                if (cur().is_punct("<")) unsupported("generic method call");
                if (cur().is_keyword("class")) unsupported("class literal");
                if (cur().is_keyword("this")) unsupported("qualified this");
                const Token& name = expect_identifier();
                if (cur().is_punct("(")) {
                    CallExpr call;
                    call.receiver = std::move(e);
                    call.method = name.text;
                    call.method_span = name.span;
                    call.args = parse_args();
                    e = finish(std::move(call), s);
                } else {
                    e = finish(FieldAccessExpr{std::move(e), name.text, name.span}, s);
                }
                continue;
            }
            if (cur().is_punct("[")) unsupported("array access");
            if (cur().is_punct("::")) unsupported("method reference");
            return e;
        }
    }

    std::vector<Expr> parse_args() {
        expect_punct("(");
        std::vector<Expr> args;
        if (!cur().is_punct(")")) {
            while (true) {
                args.push_back(parse_expr());
                if (!cur().is_punct(",")) break;
                advance();
            }
        }
        expect_punct(")");
        return args;
    }

    // `(` at cur(): true if the parenthesised group is a lambda parameter list.
    bool paren_starts_lambda() const {
        int depth = 0;
        for (std::size_t k = 0; pos_ + k < sig_.size(); ++k) {
            const Token& t = peek(k);
            if (t.is_punct("(")) ++depth;
            if (t.is_punct(")") && --depth == 0) return peek(k + 1).is_punct("->");
            if (t.kind == TokenKind::End) return false;
        }
        return false;
    }

    bool paren_is_cast() const {
        if (is_primitive_type(peek(1)) && peek(2).is_punct(")")) return true;
        if (peek(1).kind != TokenKind::Identifier) return false;
        std::size_t k = 2;
        while (peek(k).is_punct(".") && peek(k + 1).kind == TokenKind::Identifier) k += 2;
        if (!peek(k).is_punct(")")) return false;
        const Token& after = peek(k + 1);
        return after.kind == TokenKind::Identifier || after.kind == TokenKind::IntLiteral ||
               after.kind == TokenKind::StringLiteral || after.is_punct("(") || after.is_punct("!") ||
               after.is_punct("~") || after.is_keyword("this") || after.is_keyword("new");
    }

    Expr parse_primary() {
        const Position s = cur().span.start;
        const Token& t = cur();
        switch (t.kind) {
            case TokenKind::IntLiteral: {
                if (t.int_value > 2147483647LL) fail("integer literal out of 32-bit range");
                const std::int64_t v = advance().int_value;
                return finish(LiteralExpr::integer(v), s);
            }
            case TokenKind::StringLiteral: {
                std::string raw = advance().text;
                return finish(LiteralExpr::string(raw.substr(1, raw.size() - 2)), s);
            }
            case TokenKind::Identifier: {
                if (t.text == "true" || t.text == "false") {
                    const bool v = advance().text == "true";
                    return finish(LiteralExpr::boolean(v), s);
                }
                if (t.text == "null") {
                    advance();
                    return finish(LiteralExpr::null(), s);
                }
                if (peek(1).is_punct("->")) unsupported("lambda");
                const Token& name = advance();
                if (cur().is_punct("(")) {
                    CallExpr call;
                    call.method = name.text;
                    call.method_span = name.span;
                    call.args = parse_args();
                    return finish(std::move(call), s);
                }
                return finish(NameExpr{name.text}, s);
            }
            case TokenKind::Keyword: {
                if (t.text == "this") {
                    advance();
                    if (cur().is_punct("(")) unsupported("constructor chaining");
                    return finish(NameExpr{"this"}, s);
                }
                if (t.text == "super") unsupported("super");
                if (t.text == "new") return parse_new();
                if (t.text == "switch") unsupported("switch expression");
                if (is_primitive_type(t) || t.text == "void") unsupported("class literal");
                break;
            }
            case TokenKind::Punct: {
                if (t.is_punct("(")) {
                    if (paren_starts_lambda()) unsupported("lambda");
                    if (paren_is_cast()) unsupported("cast");
                    advance();
                    Expr inner = parse_expr();
                    expect_punct(")");
                    return inner;
                }
                break;
            }
            default:
                break;
        }
        fail("expected expression but found '" + describe(t) + "'");
    }

    Expr parse_new() {
        const Position s = cur().span.start;
        advance();
        if (is_primitive_type(cur())) {
            advance();
            unsupported("array creation");
        }
        const Position ts = cur().span.start;
        TypeRef type;
        type.name = parse_qualified_name();
        type.span = span_from(ts);
        if (cur().is_punct("<")) unsupported("generic type");
        if (cur().is_punct("[")) unsupported("array creation");
        std::vector<Expr> args = parse_args();
        if (cur().is_punct("{")) unsupported("anonymous class");
        return finish(NewExpr{std::move(type), std::move(args)}, s);
    }

    std::string file_;
    std::vector<Token> tokens_;
    std::vector<std::size_t> sig_;
    std::size_t pos_ = 0;
    Comments pending_;
    Position prev_end_{1, 1};
};

}  // namespace

ast::SourceFile parse(std::string_view text, const std::string& file) { return Parser(text, file).parse_unit(); }

ast::Expr parse_expression(std::string_view text, const std::string& file) {
    return Parser(text, file).parse_standalone_expression();
}

std::vector<ast::Stmt> parse_statements(std::string_view text, const std::string& file) {
    return Parser(text, file).parse_standalone_statements();
}

}  // namespace vmorph
