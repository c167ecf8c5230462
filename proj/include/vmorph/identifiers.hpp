#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vmorph/ast.hpp"

namespace vmorph {

enum class IdentifierKind { Variable, Function, Class };
enum class Origin { Project, External };

// How an external name was accounted for by classify_origin.
enum class Resolution { Declared, Stdlib, Import, Unresolved };

const char* to_string(IdentifierKind k);
const char* to_string(Origin o);
const char* to_string(Resolution r);
IdentifierKind identifier_kind_from_string(std::string_view s);

// Names from the core standard library (classes and members). Backed by a
// plain-text list: one name per line, `#` starts a comment.
class StdlibIndex {
public:
    StdlibIndex() = default;
    explicit StdlibIndex(std::set<std::string, std::less<>> names) : names_(std::move(names)) {}

    static StdlibIndex parse(std::string_view text);
    static StdlibIndex load(const std::string& path);
    // The list compiled into the binary.
    static StdlibIndex bundled();
    // VMORPH_STDLIB_INDEX if set, else the bundled list.
    static StdlibIndex from_environment();

    bool contains(std::string_view name) const { return names_.find(name) != names_.end(); }
    std::size_t size() const { return names_.size(); }

private:
    std::set<std::string, std::less<>> names_;
};

// Identity of a table entry. Locals and parameters carry the span of their
// declaring identifier so that shadowed or reused names stay distinct;
// project classes, methods and fields are keyed by name alone (overloads and
// overrides share one entry).
struct EntryKey {
    std::string name;
    IdentifierKind kind = IdentifierKind::Variable;
    Origin origin = Origin::Project;
    std::optional<Span> local_decl;

    auto operator<=>(const EntryKey&) const = default;
};

struct IdentifierEntry {
    std::string name;
    IdentifierKind kind = IdentifierKind::Variable;
    std::vector<Span> decl_sites;
    std::vector<Span> use_sites;
    Origin origin = Origin::External;
    Resolution resolution = Resolution::Declared;
    bool member_only = false;  // every use is `x.name` with an explicit receiver
};

struct Diagnostic {
    std::string code;  // e.g. "UnresolvedIdentifier"
    std::string name;
    Span span;
};

struct IdentifierTable {
    std::map<EntryKey, IdentifierEntry> entries;
    std::string scope;                 // project root
    std::set<std::string> all_names;   // every identifier spelled anywhere in the project
    std::set<std::string> imports;     // dotted import names across the project (wildcards end in ".*")
    std::vector<Diagnostic> diagnostics;

    std::vector<const IdentifierEntry*> named(std::string_view name) const;
    std::size_t site_count() const;
};

// Builds the identifier table for `project`. With `focus`, only entries with
// at least one site inside that method are kept, but their sites are still
// gathered project-wide. Origins are provisional until classify_origin.
IdentifierTable collect_identifiers(const std::vector<ast::SourceFile>& project,
                                    const ast::MethodDecl* focus = nullptr, const std::string& scope = ".");

// Finalises origins: an entry is external iff it has no declaration in the
// project. External names are checked against the stdlib index and imports;
// anything left unexplained yields an UnresolvedIdentifier diagnostic.
// Idempotent.
IdentifierTable classify_origin(IdentifierTable table, const std::vector<std::string>& imports,
                                const StdlibIndex& stdlib);

// collect + classify with the project's own imports.
IdentifierTable analyze_identifiers(const std::vector<ast::SourceFile>& project, const StdlibIndex& stdlib,
                                    const ast::MethodDecl* focus = nullptr, const std::string& scope = ".");

}  // namespace vmorph
