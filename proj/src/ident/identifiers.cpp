#include "vmorph/identifiers.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "vmorph/bundled_data.hpp"
#include "vmorph/errors.hpp"

namespace vmorph {

namespace {

using namespace ast;

bool is_primitive_name(std::string_view n) {
    return n == "void" || n == "int" || n == "boolean" || n == "long" || n == "char" || n == "byte" ||
           n == "short" || n == "double" || n == "float";
}

bool looks_like_class(std::string_view n) {
    return !n.empty() && std::isupper(static_cast<unsigned char>(n[0]));
}

std::string last_component(std::string_view dotted) {
    const auto dot = dotted.rfind('.');
    return std::string(dot == std::string_view::npos ? dotted : dotted.substr(dot + 1));
}

struct ProjectDecls {
    std::set<std::string> classes;
    std::set<std::string> methods;
    std::map<std::string, std::set<std::string>> field_types;  // field name -> declared types
};

ProjectDecls gather_decls(const std::vector<SourceFile>& project) {
    ProjectDecls d;
    for (const auto& file : project) {
        for (const auto& cls : file.types) {
            d.classes.insert(cls.name);
            for (const auto& m : cls.members) {
                if (const auto* f = std::get_if<FieldDecl>(&m)) {
                    d.field_types[f->name].insert(f->type.name);
                } else {
                    const auto& md = std::get<MethodDecl>(m);
                    if (!md.is_constructor()) d.methods.insert(md.name);
                }
            }
        }
    }
    return d;
}

// What is known statically about a receiver expression.
struct ReceiverType {
    std::optional<std::string> type;  // class name, when known
};

class Collector {
public:
    Collector(const ProjectDecls& decls, IdentifierTable& table) : decls_(decls), table_(table) {}

    void file(const SourceFile& f) {
        for (const auto& imp : f.imports) {
            table_.imports.insert(imp.name + (imp.wildcard ? ".*" : ""));
            std::stringstream ss(imp.name);
            std::string part;
            while (std::getline(ss, part, '.')) table_.all_names.insert(part);
        }
        for (const auto& cls : f.types) class_decl(cls);
    }

    void finish() {
        for (auto& [key, entry] : table_.entries) {
            entry.member_only = !entry.use_sites.empty() && plain_uses_[key] == 0;
            table_.all_names.insert(entry.name);
            if (entry.name.find('.') != std::string::npos) {
                std::stringstream ss(entry.name);
                std::string part;
                while (std::getline(ss, part, '.')) table_.all_names.insert(part);
            }
        }
    }

private:
    struct Local {
        EntryKey key;
        std::optional<std::string> type;
    };

    IdentifierEntry& entry(const EntryKey& key) {
        auto [it, inserted] = table_.entries.try_emplace(key);
        if (inserted) {
            it->second.name = key.name;
            it->second.kind = key.kind;
            it->second.origin = key.origin;
            it->second.resolution = key.origin == Origin::Project ? Resolution::Declared : Resolution::Unresolved;
        }
        return it->second;
    }

    void declare(const EntryKey& key, const Span& span) { entry(key).decl_sites.push_back(span); }

    void use(const EntryKey& key, const Span& span, bool member) {
        entry(key).use_sites.push_back(span);
        if (!member) ++plain_uses_[key];
    }

    static EntryKey project(std::string name, IdentifierKind kind) {
        return EntryKey{std::move(name), kind, Origin::Project, std::nullopt};
    }
    static EntryKey external(std::string name, IdentifierKind kind) {
        return EntryKey{std::move(name), kind, Origin::External, std::nullopt};
    }

    void type_use(const TypeRef& t) {
        if (t.name.empty() || is_primitive_name(t.name)) return;
        if (decls_.classes.count(t.name)) {
            use(project(t.name, IdentifierKind::Class), t.span, false);
        } else {
            use(external(t.name, IdentifierKind::Class), t.span, false);
        }
    }

    void class_decl(const ClassDecl& cls) {
        current_class_ = cls.name;
        declare(project(cls.name, IdentifierKind::Class), cls.name_span);
        if (cls.extends) type_use(*cls.extends);
        for (const auto& t : cls.implements) type_use(t);
        for (const auto& m : cls.members) {
            if (const auto* f = std::get_if<FieldDecl>(&m)) {
                type_use(f->type);
                declare(project(f->name, IdentifierKind::Variable), f->name_span);
                if (f->init) expr(*f->init);
            } else {
                method(std::get<MethodDecl>(m));
            }
        }
    }

    void method(const MethodDecl& m) {
        if (m.is_constructor()) {
            declare(project(m.name, IdentifierKind::Class), m.name_span);
        } else {
            type_use(*m.return_type);
            declare(project(m.name, IdentifierKind::Function), m.name_span);
        }
        scopes_.clear();
        scopes_.emplace_back();
        for (const auto& p : m.params) {
            type_use(p.type);
            EntryKey key{p.name, IdentifierKind::Variable, Origin::Project, p.name_span};
            declare(key, p.name_span);
            scopes_.back()[p.name] = Local{key, p.type.name};
        }
        for (const auto& t : m.throws) type_use(t);
        block(m.body);
        scopes_.clear();
    }

    const Local* lookup_local(const std::string& name) const {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            auto found = it->find(name);
            if (found != it->end()) return &found->second;
        }
        return nullptr;
    }

    void block(const Block& b) {
        scopes_.emplace_back();
        for (const auto& s : b.stmts) stmt(s);
        scopes_.pop_back();
    }

    void stmt(const Stmt& s) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, Block>) {
                    block(n);
                } else if constexpr (std::is_same_v<T, IfStmt>) {
                    expr(n.cond);
                    block(n.then_block);
                    if (n.else_block) block(*n.else_block);
                } else if constexpr (std::is_same_v<T, WhileStmt>) {
                    expr(n.cond);
                    block(n.body);
                } else if constexpr (std::is_same_v<T, ForStmt>) {
                    scopes_.emplace_back();
                    for (const auto& i : n.init) stmt(i);
                    if (n.cond) expr(*n.cond);
                    for (const auto& u : n.update) expr(u);
                    block(n.body);
                    scopes_.pop_back();
                } else if constexpr (std::is_same_v<T, SwitchStmt>) {
                    expr(n.scrutinee);
                    scopes_.emplace_back();
                    for (const auto& c : n.cases) {
                        for (const auto& b : c.body) stmt(b);
                    }
                    scopes_.pop_back();
                } else if constexpr (std::is_same_v<T, LocalVarDecl>) {
                    if (n.type) type_use(*n.type);
                    if (n.init) expr(*n.init);
                    EntryKey key{n.name, IdentifierKind::Variable, Origin::Project, n.name_span};
                    declare(key, n.name_span);
                    scopes_.back()[n.name] = Local{key, n.type ? std::optional<std::string>(n.type->name) : std::nullopt};
                } else if constexpr (std::is_same_v<T, ExprStmt>) {
                    expr(n.expr);
                } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                    if (n.value) expr(*n.value);
                } else if constexpr (std::is_same_v<T, ThrowStmt>) {
                    expr(n.value);
                }
            },
            s.node);
    }

    ReceiverType receiver_type(const Expr& e) const {
        if (const auto* n = e.get_if<NameExpr>()) {
            if (n->name == "this") return {current_class_};
            if (const Local* l = lookup_local(n->name)) return {l->type};
            auto f = decls_.field_types.find(n->name);
            if (f != decls_.field_types.end()) {
                if (f->second.size() == 1) return {*f->second.begin()};
                return {};
            }
            if (decls_.classes.count(n->name) || looks_like_class(n->name)) return {n->name};
            return {};
        }
        if (const auto* n = e.get_if<NewExpr>()) return {n->type.name};
        if (const auto* l = e.get_if<LiteralExpr>(); l && l->kind == LiteralKind::String) return {"String"};
        return {};
    }

    // Member of a project class, of an external class, or unknown.
    bool member_is_project(const std::optional<Expr>& receiver, bool declared_in_project) const {
        if (!declared_in_project) return false;
        if (!receiver) return true;
        const ReceiverType rt = receiver_type(*receiver);
        if (!rt.type) return true;
        return decls_.classes.count(*rt.type) > 0;
    }

    void name_use(const NameExpr& n, const Span& span) {
        if (n.name == "this") return;
        if (const Local* l = lookup_local(n.name)) {
            use(l->key, span, false);
        } else if (decls_.field_types.count(n.name)) {
            use(project(n.name, IdentifierKind::Variable), span, false);
        } else if (decls_.classes.count(n.name)) {
            use(project(n.name, IdentifierKind::Class), span, false);
        } else {
            use(external(n.name, looks_like_class(n.name) ? IdentifierKind::Class : IdentifierKind::Variable), span,
                false);
        }
    }

    void expr(const Expr& e) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, NameExpr>) {
                    name_use(n, e.span);
                } else if constexpr (std::is_same_v<T, UnaryExpr>) {
                    expr(*n.operand);
                } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                    expr(*n.lhs);
                    expr(*n.rhs);
                } else if constexpr (std::is_same_v<T, TernaryExpr>) {
                    expr(*n.cond);
                    expr(*n.if_true);
                    expr(*n.if_false);
                } else if constexpr (std::is_same_v<T, CallExpr>) {
                    std::optional<Expr> recv;
                    if (n.receiver) {
                        expr(**n.receiver);
                        recv = **n.receiver;
                    }
                    const bool proj = member_is_project(recv, decls_.methods.count(n.method) > 0);
                    use(proj ? project(n.method, IdentifierKind::Function) : external(n.method, IdentifierKind::Function),
                        n.method_span, n.receiver.has_value());
                    for (const auto& a : n.args) expr(a);
                } else if constexpr (std::is_same_v<T, FieldAccessExpr>) {
                    expr(*n.object);
                    const bool proj = member_is_project(*n.object, decls_.field_types.count(n.field) > 0);
                    use(proj ? project(n.field, IdentifierKind::Variable) : external(n.field, IdentifierKind::Variable),
                        n.field_span, true);
                } else if constexpr (std::is_same_v<T, AssignExpr>) {
                    expr(*n.target);
                    expr(*n.value);
                } else if constexpr (std::is_same_v<T, NewExpr>) {
                    type_use(n.type);
                    for (const auto& a : n.args) expr(a);
                }
            },
            e.node);
    }

    const ProjectDecls& decls_;
    IdentifierTable& table_;
    std::vector<std::map<std::string, Local>> scopes_;
    std::string current_class_;
    std::map<EntryKey, int> plain_uses_;
};

bool any_site_within(const IdentifierEntry& e, const Span& region) {
    auto inside = [&region](const Span& s) { return s.file == region.file && region.contains(s); };
    for (const auto& s : e.decl_sites) {
        if (inside(s)) return true;
    }
    for (const auto& s : e.use_sites) {
        if (inside(s)) return true;
    }
    return false;
}

}  // namespace

const char* to_string(IdentifierKind k) {
    switch (k) {
        case IdentifierKind::Variable: return "variable";
        case IdentifierKind::Function: return "function";
        case IdentifierKind::Class: return "class";
    }
    return "variable";
}

IdentifierKind identifier_kind_from_string(std::string_view s) {
    if (s == "function") return IdentifierKind::Function;
    if (s == "class") return IdentifierKind::Class;
    if (s == "variable") return IdentifierKind::Variable;
    throw Error("unknown identifier kind '" + std::string(s) + "'");
}

const char* to_string(Origin o) { return o == Origin::Project ? "project" : "external"; }

const char* to_string(Resolution r) {
    switch (r) {
        case Resolution::Declared: return "declared";
        case Resolution::Stdlib: return "stdlib";
        case Resolution::Import: return "import";
        case Resolution::Unresolved: return "unresolved";
    }
    return "unresolved";
}

StdlibIndex StdlibIndex::parse(std::string_view text) {
    std::set<std::string, std::less<>> names;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        names.insert(line.substr(b, e - b + 1));
    }
    return StdlibIndex(std::move(names));
}

StdlibIndex StdlibIndex::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read stdlib index '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

StdlibIndex StdlibIndex::bundled() { return parse(bundled::kStdlibIndex); }

StdlibIndex StdlibIndex::from_environment() {
    if (const char* path = std::getenv("VMORPH_STDLIB_INDEX"); path && *path) return load(path);
    return bundled();
}

std::vector<const IdentifierEntry*> IdentifierTable::named(std::string_view name) const {
    std::vector<const IdentifierEntry*> out;
    for (const auto& [key, entry] : entries) {
        if (key.name == name) out.push_back(&entry);
    }
    return out;
}

std::size_t IdentifierTable::site_count() const {
    std::size_t n = 0;
    for (const auto& [key, entry] : entries) n += entry.decl_sites.size() + entry.use_sites.size();
    return n;
}

IdentifierTable collect_identifiers(const std::vector<SourceFile>& project, const MethodDecl* focus,
                                    const std::string& scope) {
    IdentifierTable table;
    table.scope = scope;
    const ProjectDecls decls = gather_decls(project);
    Collector collector(decls, table);
    for (const auto& f : project) collector.file(f);
    collector.finish();
    if (focus) {
        for (auto it = table.entries.begin(); it != table.entries.end();) {
            if (any_site_within(it->second, focus->span)) {
                ++it;
            } else {
                it = table.entries.erase(it);
            }
        }
    }
    return table;
}

IdentifierTable classify_origin(IdentifierTable table, const std::vector<std::string>& imports,
                                const StdlibIndex& stdlib) {
    std::set<std::string> imported_simple;
    bool any_wildcard = false;
    for (const auto& imp : imports) {
        if (imp.size() > 2 && imp.compare(imp.size() - 2, 2, ".*") == 0) {
            any_wildcard = true;
        } else {
            imported_simple.insert(last_component(imp));
        }
    }
    table.diagnostics.clear();
    for (auto& [key, entry] : table.entries) {
        if (!entry.decl_sites.empty()) {
            entry.origin = Origin::Project;
            entry.resolution = Resolution::Declared;
            continue;
        }
        entry.origin = Origin::External;
        const std::string simple = last_component(entry.name);
        if (stdlib.contains(entry.name) || stdlib.contains(simple)) {
            entry.resolution = Resolution::Stdlib;
        } else if (imported_simple.count(simple) || entry.name.find('.') != std::string::npos ||
                   (any_wildcard && entry.kind == IdentifierKind::Class) ||
                   (entry.member_only && !imports.empty())) {
            entry.resolution = Resolution::Import;
        } else {
            entry.resolution = Resolution::Unresolved;
            const Span where = entry.use_sites.empty() ? Span{} : entry.use_sites.front();
            table.diagnostics.push_back(Diagnostic{"UnresolvedIdentifier", entry.name, where});
        }
    }
    return table;
}

IdentifierTable analyze_identifiers(const std::vector<SourceFile>& project, const StdlibIndex& stdlib,
                                    const MethodDecl* focus, const std::string& scope) {
    IdentifierTable table = collect_identifiers(project, focus, scope);
    std::vector<std::string> imports(table.imports.begin(), table.imports.end());
    return classify_origin(std::move(table), imports, stdlib);
}

}  // namespace vmorph
