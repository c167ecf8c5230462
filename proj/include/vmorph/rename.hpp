#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vmorph/ast.hpp"
#include "vmorph/errors.hpp"
#include "vmorph/identifiers.hpp"
#include "vmorph/naming.hpp"

namespace vmorph {

class StaleDictionary : public Error {
public:
    explicit StaleDictionary(const std::string& name)
        : Error("dictionary entry '" + name + "' does not resolve to any project identifier"), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class ExhaustedCandidates : public Error {
public:
    explicit ExhaustedCandidates(const std::string& name) : Error("no usable new name for '" + name + "'") {}
};

// Word -> ranked synonyms, plus the past participles used when naming
// extracted variables. File format (TSV):
//
//   word<TAB>syn1,syn2,...
//   [participles]
//   verb<TAB>participle
//
// Blank lines and `#` comments are ignored. Entries are lowercased and a word
// never lists itself.
class SynonymLexicon {
public:
    static SynonymLexicon parse(std::string_view text);
    static SynonymLexicon load(const std::string& path);
    static SynonymLexicon bundled();

    void add(const std::string& word, std::vector<std::string> synonyms);
    void add_participle(const std::string& verb, const std::string& participle);

    // Empty when the word is unknown.
    const std::vector<std::string>& synonyms(std::string_view word) const;
    std::optional<std::string> participle(std::string_view verb) const;
    std::size_t size() const { return synonyms_.size(); }

private:
    std::map<std::string, std::vector<std::string>, std::less<>> synonyms_;
    std::map<std::string, std::string, std::less<>> participles_;
};

// One candidate list per token; unknown tokens yield [token].
std::vector<std::vector<std::string>> propose_synonyms(const std::vector<std::string>& tokens,
                                                       const SynonymLexicon& lexicon);

// Injective map between original and new identifiers.
class RenameDictionary {
public:
    struct Meta {
        IdentifierKind kind = IdentifierKind::Variable;
        Convention convention = Convention::Camel;
    };

    // Throws Error if either side is already mapped.
    void add(const std::string& original, const std::string& renamed, Meta meta);

    const std::map<std::string, std::string>& forward() const { return forward_; }
    const std::map<std::string, std::string>& backward() const { return backward_; }
    const std::map<std::string, Meta>& meta() const { return meta_; }
    bool empty() const { return forward_.empty(); }
    std::size_t size() const { return forward_.size(); }

    // The same mapping read in the other direction.
    RenameDictionary inverse() const;

    // {"forward": {...}, "kinds": {...}, "conventions": {...}}; keys sorted.
    std::string to_json() const;
    static RenameDictionary from_json(std::string_view text);
    void save(const std::string& path) const;
    static RenameDictionary load(const std::string& path);

private:
    std::map<std::string, std::string> forward_;
    std::map<std::string, std::string> backward_;
    std::map<std::string, Meta> meta_;
};

enum class ReviewAction { Accept, Edit, Skip };

struct ReviewDecision {
    ReviewAction action = ReviewAction::Accept;
    std::string edited;  // used with Edit
};

// Called once per proposed rename, in plan order.
using ReviewHook = std::function<ReviewDecision(const std::string& original, const std::string& proposed,
                                                IdentifierKind kind)>;

struct RenameOptions {
    // Names never renamed even when declared in the project (entry points).
    std::set<std::string> keep{"main"};
    // Project methods whose names appear here are left alone (they override or
    // implement library methods), and no new name may take a name from it.
    const StdlibIndex* stdlib = nullptr;
    ReviewHook review;
};

// Plans new names for the project-origin entries of `table`. Names are
// processed in order of their first declaration. A name whose words have no
// synonyms keeps its spelling and is left out of the dictionary.
RenameDictionary build_rename_plan(const IdentifierTable& table, const SynonymLexicon& lexicon,
                                   const RenameOptions& options = {});

// Every project site to rewrite: file path -> (identifier span, new name),
// sorted by position. Throws StaleDictionary for keys without project sites.
using RenameSites = std::map<std::string, std::vector<std::pair<Span, std::string>>>;
RenameSites rename_sites(const std::vector<ast::SourceFile>& project, const RenameDictionary& dict,
                         const StdlibIndex& stdlib);

// AST-level rename: same trees with identifier payloads replaced.
std::vector<ast::SourceFile> apply_rename(const std::vector<ast::SourceFile>& project, const RenameDictionary& dict,
                                          const StdlibIndex& stdlib);

// Text-level rename of `text` (the source of `file`), splicing new names into
// the original layout so that nothing else changes.
std::string rename_text(const std::string& text, const std::vector<std::pair<Span, std::string>>& sites);

// String literals mentioning a renamed original name as a whole word; these
// are deliberately left alone and reported.
struct LiteralMention {
    Span span;
    std::string name;
};
std::vector<LiteralMention> literal_mentions(const ast::SourceFile& file, const RenameDictionary& dict);

// Replaces identifier tokens found in dict.backward() by their originals.
// Strings, character literals, comments and numbers are left as they are.
std::string recover_patch(std::string_view patch_text, const RenameDictionary& dict);

// Applies dict.forward() the same way (used for dictionaries on text).
std::string substitute_identifiers(std::string_view text, const std::map<std::string, std::string>& mapping);

// File name a renamed public class would need ("FileService.java" ->
// "DocumentHelp.java"); unchanged when the stem is not renamed.
std::string suggested_filename(const std::string& filename, const RenameDictionary& dict);

}  // namespace vmorph
