#pragma once

// AST for the supported Java subset. Nodes are plain values: copying a node
// deep-copies its subtree, so rewrites build new trees instead of mutating
// shared ones.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vmorph/box.hpp"
#include "vmorph/span.hpp"

namespace vmorph::ast {

struct Comment {
    std::string text;  // raw, including the `//` or `/* */` delimiters
    Span span;
};

using Comments = std::vector<Comment>;

// Simple or dotted type name, or a primitive keyword such as `int`.
struct TypeRef {
    std::string name;
    Span span;
};

// ---------------------------------------------------------------------------
// Expressions

struct Expr;

struct NameExpr {
    std::string name;  // also holds `this`
};

enum class LiteralKind { Int, Bool, String, Null };

struct LiteralExpr {
    LiteralKind kind = LiteralKind::Null;
    std::int64_t int_value = 0;  // in [-2^31, 2^31]; 2^31 only under unary minus
    bool bool_value = false;
    std::string text;  // string literals: raw body between the quotes

    static LiteralExpr integer(std::int64_t v) { return {LiteralKind::Int, v, false, {}}; }
    static LiteralExpr boolean(bool v) { return {LiteralKind::Bool, 0, v, {}}; }
    static LiteralExpr string(std::string raw) { return {LiteralKind::String, 0, false, std::move(raw)}; }
    static LiteralExpr null() { return {}; }
};

enum class UnaryOp { Not, Neg };

enum class BinaryOp {
    Add, Sub, Mul, Div, Mod,
    Lt, Le, Gt, Ge, Eq, Ne,
    And, Or,
};

struct UnaryExpr {
    UnaryOp op;
    Box<Expr> operand;
};

struct BinaryExpr {
    BinaryOp op;
    Box<Expr> lhs;
    Box<Expr> rhs;
};

struct TernaryExpr {
    Box<Expr> cond;
    Box<Expr> if_true;
    Box<Expr> if_false;
};

struct CallExpr {
    std::optional<Box<Expr>> receiver;
    std::string method;
    Span method_span;
    std::vector<Expr> args;
};

struct FieldAccessExpr {
    Box<Expr> object;
    std::string field;
    Span field_span;
};

// Target is a NameExpr or FieldAccessExpr.
struct AssignExpr {
    Box<Expr> target;
    Box<Expr> value;
};

struct NewExpr {
    TypeRef type;
    std::vector<Expr> args;
};

using ExprNode = std::variant<NameExpr, LiteralExpr, UnaryExpr, BinaryExpr, TernaryExpr, CallExpr,
                              FieldAccessExpr, AssignExpr, NewExpr>;

struct Expr {
    ExprNode node;
    Span span;

    template <class T>
    bool is() const { return std::holds_alternative<T>(node); }
    template <class T>
    const T& as() const { return std::get<T>(node); }
    template <class T>
    T& as() { return std::get<T>(node); }
    template <class T>
    const T* get_if() const { return std::get_if<T>(&node); }
    template <class T>
    T* get_if() { return std::get_if<T>(&node); }
};

// ---------------------------------------------------------------------------
// Statements

struct Stmt;

struct Block {
    std::vector<Stmt> stmts;
    Comments trailing_comments;  // comments between the last statement and `}`
    Span span;
};

struct IfStmt {
    Expr cond;
    Block then_block;
    std::optional<Block> else_block;  // `else if` is an else block holding one IfStmt
};

struct WhileStmt {
    Expr cond;
    Block body;
};

struct ForStmt {
    std::vector<Stmt> init;  // LocalVarDecl or ExprStmt entries; >1 means a comma list
    std::optional<Expr> cond;
    std::vector<Expr> update;
    Block body;
};

struct CaseLabel {
    bool is_default = false;
    LiteralExpr value;  // Int (possibly negative) or String
    Span span;
};

struct SwitchCase {
    std::vector<CaseLabel> labels;
    std::vector<Stmt> body;
    Span span;

    // Last statement transfers control out of the case.
    bool terminated() const;
};

struct SwitchStmt {
    Expr scrutinee;
    std::vector<SwitchCase> cases;
};

struct LocalVarDecl {
    std::optional<TypeRef> type;  // nullopt: `var`
    bool is_final = false;
    std::string name;
    Span name_span;
    std::optional<Expr> init;
};

struct ExprStmt {
    Expr expr;
};

struct ReturnStmt {
    std::optional<Expr> value;
};

struct BreakStmt {};
struct ContinueStmt {};

struct ThrowStmt {
    Expr value;
};

using StmtNode = std::variant<Block, IfStmt, WhileStmt, ForStmt, SwitchStmt, LocalVarDecl, ExprStmt,
                              ReturnStmt, BreakStmt, ContinueStmt, ThrowStmt>;

struct Stmt {
    StmtNode node;
    Span span;
    Comments comments;  // leading comments attached by the parser

    template <class T>
    bool is() const { return std::holds_alternative<T>(node); }
    template <class T>
    const T& as() const { return std::get<T>(node); }
    template <class T>
    T& as() { return std::get<T>(node); }
    template <class T>
    const T* get_if() const { return std::get_if<T>(&node); }
    template <class T>
    T* get_if() { return std::get_if<T>(&node); }
};

// ---------------------------------------------------------------------------
// Declarations

enum Modifier : unsigned {
    kPublic = 1u << 0,
    kProtected = 1u << 1,
    kPrivate = 1u << 2,
    kStatic = 1u << 3,
    kFinal = 1u << 4,
};

struct Param {
    bool is_final = false;
    TypeRef type;
    std::string name;
    Span name_span;
};

struct MethodDecl {
    Comments comments;
    unsigned modifiers = 0;
    std::optional<TypeRef> return_type;  // nullopt only for constructors; `void` is a TypeRef
    std::string name;
    Span name_span;
    std::vector<Param> params;
    std::vector<TypeRef> throws;
    Block body;
    Span span;

    bool is_constructor() const { return !return_type.has_value(); }
    bool is_static() const { return (modifiers & kStatic) != 0; }
};

struct FieldDecl {
    Comments comments;
    unsigned modifiers = 0;
    TypeRef type;
    std::string name;
    Span name_span;
    std::optional<Expr> init;
    Span span;
};

using Member = std::variant<FieldDecl, MethodDecl>;

struct ClassDecl {
    Comments comments;
    unsigned modifiers = 0;
    std::string name;
    Span name_span;
    std::optional<TypeRef> extends;
    std::vector<TypeRef> implements;
    std::vector<Member> members;
    Comments trailing_comments;
    Span span;

    std::vector<const MethodDecl*> methods() const;
    std::vector<MethodDecl*> methods();
};

struct Import {
    Comments comments;
    std::string name;  // dotted, without the trailing `.*`
    bool wildcard = false;
    bool is_static = false;
    Span span;
};

struct SourceFile {
    std::string path;
    Comments package_comments;
    std::optional<std::string> package;
    std::vector<Import> imports;
    std::vector<ClassDecl> types;
    Comments trailing_comments;
    Span span;

    std::vector<const MethodDecl*> methods() const;
    std::vector<MethodDecl*> methods();
};

// ---------------------------------------------------------------------------
// Helpers

Expr make_name(std::string name, Span span = {});
Expr make_call(std::optional<Expr> receiver, std::string method, std::vector<Expr> args, Span span = {});
Stmt make_stmt(StmtNode node, Span span, Comments comments = {});

const char* to_string(BinaryOp op);
const char* to_string(UnaryOp op);
int precedence(BinaryOp op);

// Method whose span covers `lines`, searching every class of `file`.
const MethodDecl* find_method_covering(const SourceFile& file, LineRange lines);
MethodDecl* find_method_covering(SourceFile& file, LineRange lines);

}  // namespace vmorph::ast
