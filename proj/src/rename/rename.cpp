#include "vmorph/rename.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "vmorph/bundled_data.hpp"
#include "vmorph/lexer.hpp"
#include "vmorph/walk.hpp"

namespace vmorph {

namespace {

using namespace ast;
using json = nlohmann::json;

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Convention convention_from_string(const std::string& s) {
    if (s == "snake") return Convention::Snake;
    if (s == "pascal") return Convention::Pascal;
    return Convention::Camel;
}

using SiteKey = std::tuple<std::string, int, int>;

SiteKey key_of(const Span& s) { return {s.file, s.start.line, s.start.col}; }

// Rewrites identifier payloads whose spans start at a planned site.
class AstRenamer {
public:
    explicit AstRenamer(const std::map<SiteKey, std::string>& sites) : sites_(sites) {}

    void file(SourceFile& f) {
        for (auto& cls : f.types) class_decl(cls);
    }

private:
    void fix(std::string& name, const Span& span) {
        auto it = sites_.find(key_of(span));
        if (it != sites_.end()) name = it->second;
    }

    void type(TypeRef& t) { fix(t.name, t.span); }

    void class_decl(ClassDecl& cls) {
        fix(cls.name, cls.name_span);
        if (cls.extends) type(*cls.extends);
        for (auto& t : cls.implements) type(t);
        for (auto& m : cls.members) {
            if (auto* f = std::get_if<FieldDecl>(&m)) {
                type(f->type);
                fix(f->name, f->name_span);
                if (f->init) exprs(*f->init);
            } else {
                method(std::get<MethodDecl>(m));
            }
        }
    }

    void method(MethodDecl& m) {
        if (m.return_type) type(*m.return_type);
        fix(m.name, m.name_span);
        for (auto& p : m.params) {
            type(p.type);
            fix(p.name, p.name_span);
        }
        for (auto& t : m.throws) type(t);
        walk_block(m.body, [this](Stmt& s) {
            if (auto* d = s.get_if<LocalVarDecl>()) {
                if (d->type) type(*d->type);
                fix(d->name, d->name_span);
            }
            for_each_direct_expr(s, [this](Expr& e) { exprs(e); });
        });
    }

    void exprs(Expr& root) {
        walk_expr(root, [this](Expr& e) {
            if (auto* n = e.get_if<NameExpr>()) {
                fix(n->name, e.span);
            } else if (auto* c = e.get_if<CallExpr>()) {
                fix(c->method, c->method_span);
            } else if (auto* f = e.get_if<FieldAccessExpr>()) {
                fix(f->field, f->field_span);
            } else if (auto* n = e.get_if<NewExpr>()) {
                type(n->type);
            }
        });
    }

    const std::map<SiteKey, std::string>& sites_;
};

bool is_ident_start(char c) { return is_identifier_start(c); }
bool is_ident_part(char c) { return is_identifier_part(c); }

}  // namespace

// ---------------------------------------------------------------------------
// Lexicon

SynonymLexicon SynonymLexicon::parse(std::string_view text) {
    SynonymLexicon lex;
    std::istringstream in{std::string(text)};
    std::string line;
    bool participles = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line == "[participles]") {
            participles = true;
            continue;
        }
        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw Error("lexicon line " + std::to_string(lineno) + ": expected word<TAB>synonyms");
        }
        const std::string word = to_lower(trim(line.substr(0, tab)));
        const std::string rest = trim(line.substr(tab + 1));
        if (participles) {
            lex.add_participle(word, to_lower(rest));
            continue;
        }
        std::vector<std::string> syns;
        std::stringstream ss(rest);
        std::string s;
        while (std::getline(ss, s, ',')) {
            s = to_lower(trim(s));
            if (!s.empty()) syns.push_back(s);
        }
        lex.add(word, std::move(syns));
    }
    return lex;
}

SynonymLexicon SynonymLexicon::load(const std::string& path) { return parse(read_file(path)); }

SynonymLexicon SynonymLexicon::bundled() { return parse(bundled::kLexicon); }

void SynonymLexicon::add(const std::string& word, std::vector<std::string> synonyms) {
    const std::string w = to_lower(word);
    auto& list = synonyms_[w];
    for (auto& s : synonyms) {
        s = to_lower(s);
        if (s.empty() || s == w || std::find(list.begin(), list.end(), s) != list.end()) continue;
        list.push_back(std::move(s));
    }
    if (list.empty()) synonyms_.erase(w);
}

void SynonymLexicon::add_participle(const std::string& verb, const std::string& participle) {
    if (!verb.empty() && !participle.empty()) participles_[to_lower(verb)] = to_lower(participle);
}

const std::vector<std::string>& SynonymLexicon::synonyms(std::string_view word) const {
    static const std::vector<std::string> none;
    auto it = synonyms_.find(word);
    return it == synonyms_.end() ? none : it->second;
}

std::optional<std::string> SynonymLexicon::participle(std::string_view verb) const {
    auto it = participles_.find(verb);
    if (it == participles_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::vector<std::string>> propose_synonyms(const std::vector<std::string>& tokens,
                                                       const SynonymLexicon& lexicon) {
    std::vector<std::vector<std::string>> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
        const auto& syns = lexicon.synonyms(t);
        out.push_back(syns.empty() ? std::vector<std::string>{t} : syns);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dictionary

void RenameDictionary::add(const std::string& original, const std::string& renamed, Meta meta) {
    if (forward_.count(original)) throw Error("'" + original + "' is already renamed");
    if (backward_.count(renamed)) throw Error("'" + renamed + "' is already the new name of another identifier");
    forward_[original] = renamed;
    backward_[renamed] = original;
    meta_[original] = meta;
}

RenameDictionary RenameDictionary::inverse() const {
    RenameDictionary inv;
    for (const auto& [orig, renamed] : forward_) inv.add(renamed, orig, meta_.at(orig));
    return inv;
}

std::string RenameDictionary::to_json() const {
    json j;
    j["forward"] = json::object();
    j["kinds"] = json::object();
    j["conventions"] = json::object();
    for (const auto& [orig, renamed] : forward_) {
        j["forward"][orig] = renamed;
        j["kinds"][orig] = to_string(meta_.at(orig).kind);
        j["conventions"][orig] = to_string(meta_.at(orig).convention);
    }
    return j.dump(2) + "\n";
}

RenameDictionary RenameDictionary::from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(std::string("malformed dictionary JSON: ") + e.what());
    }
    if (!j.contains("forward") || !j["forward"].is_object()) throw Error("dictionary JSON lacks a \"forward\" object");
    RenameDictionary d;
    for (const auto& [orig, renamed] : j["forward"].items()) {
        Meta meta;
        meta.convention = convention_of(orig);
        if (j.contains("kinds") && j["kinds"].contains(orig)) {
            meta.kind = identifier_kind_from_string(j["kinds"][orig].get<std::string>());
        }
        if (j.contains("conventions") && j["conventions"].contains(orig)) {
            meta.convention = convention_from_string(j["conventions"][orig].get<std::string>());
        }
        d.add(orig, renamed.get<std::string>(), meta);
    }
    return d;
}

void RenameDictionary::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << to_json();
}

RenameDictionary RenameDictionary::load(const std::string& path) { return from_json(read_file(path)); }

// ---------------------------------------------------------------------------
// Planning

RenameDictionary build_rename_plan(const IdentifierTable& table, const SynonymLexicon& lexicon,
                                   const RenameOptions& options) {
    // Project names with their first declaration and kind, in declaration order.
    struct Candidate {
        Span first_decl;
        std::string name;
        IdentifierKind kind;
    };
    std::map<std::string, Candidate> by_name;
    for (const auto& [key, entry] : table.entries) {
        if (entry.origin != Origin::Project || entry.decl_sites.empty()) continue;
        const Span first = *std::min_element(entry.decl_sites.begin(), entry.decl_sites.end());
        auto it = by_name.find(entry.name);
        if (it == by_name.end()) {
            by_name.emplace(entry.name, Candidate{first, entry.name, entry.kind});
        } else if (first < it->second.first_decl) {
            it->second.first_decl = first;
            it->second.kind = entry.kind;
        }
    }
    std::vector<Candidate> order;
    for (auto& [name, c] : by_name) order.push_back(c);
    std::sort(order.begin(), order.end(), [](const Candidate& a, const Candidate& b) {
        return std::tie(a.first_decl, a.name) < std::tie(b.first_decl, b.name);
    });

    std::set<std::string> taken(table.all_names.begin(), table.all_names.end());
    for (const auto& c : order) taken.insert(c.name);

    auto usable = [&](const std::string& n) {
        return is_legal_identifier(n) && !is_reserved_word(n) && !taken.count(n) &&
               !(options.stdlib && options.stdlib->contains(n));
    };

    RenameDictionary dict;
    for (const auto& c : order) {
        if (options.keep.count(c.name)) continue;
        if (c.kind == IdentifierKind::Function && options.stdlib && options.stdlib->contains(c.name)) continue;

        const TokenizedIdentifier tok = split_identifier(c.name);
        if (tok.words.empty()) continue;
        const auto proposals = propose_synonyms(tok.words, lexicon);
        std::vector<std::string> words;
        for (const auto& p : proposals) words.push_back(p.front());
        if (words == tok.words) continue;

        std::optional<std::string> chosen;
        const std::string base = assemble_identifier(words, tok.style);
        if (usable(base)) chosen = base;
        for (std::size_t alt = 1; !chosen && alt < proposals.back().size(); ++alt) {
            words.back() = proposals.back()[alt];
            const std::string n = assemble_identifier(words, tok.style);
            if (usable(n)) chosen = n;
        }
        for (int suffix = 2; !chosen && suffix < 100000; ++suffix) {
            const std::string n = base + std::to_string(suffix);
            if (usable(n)) chosen = n;
        }
        if (!chosen) throw ExhaustedCandidates(c.name);

        if (options.review) {
            const ReviewDecision d = options.review(c.name, *chosen, c.kind);
            if (d.action == ReviewAction::Skip) continue;
            if (d.action == ReviewAction::Edit) {
                if (d.edited == c.name) continue;
                if (!usable(d.edited)) {
                    throw Error("reviewed name '" + d.edited + "' for '" + c.name +
                                "' is not a legal, unused identifier");
                }
                chosen = d.edited;
            }
        }
        taken.insert(*chosen);
        dict.add(c.name, *chosen, RenameDictionary::Meta{c.kind, tok.style.convention()});
    }
    return dict;
}

// ---------------------------------------------------------------------------
// Applying

RenameSites rename_sites(const std::vector<SourceFile>& project, const RenameDictionary& dict,
                         const StdlibIndex& stdlib) {
    RenameSites sites;
    if (dict.empty()) return sites;
    const IdentifierTable table = analyze_identifiers(project, stdlib);
    std::set<std::string> resolved;
    for (const auto& [key, entry] : table.entries) {
        if (entry.origin != Origin::Project) continue;
        auto it = dict.forward().find(entry.name);
        if (it == dict.forward().end()) continue;
        resolved.insert(entry.name);
        for (const auto* list : {&entry.decl_sites, &entry.use_sites}) {
            for (const auto& s : *list) sites[s.file].emplace_back(s, it->second);
        }
    }
    for (const auto& [orig, renamed] : dict.forward()) {
        if (!resolved.count(orig)) throw StaleDictionary(orig);
    }
    for (auto& [file, list] : sites) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return sites;
}

std::vector<SourceFile> apply_rename(const std::vector<SourceFile>& project, const RenameDictionary& dict,
                                     const StdlibIndex& stdlib) {
    const RenameSites sites = rename_sites(project, dict, stdlib);
    std::map<SiteKey, std::string> by_start;
    for (const auto& [file, list] : sites) {
        for (const auto& [span, name] : list) by_start[key_of(span)] = name;
    }
    std::vector<SourceFile> out = project;
    AstRenamer renamer(by_start);
    for (auto& f : out) renamer.file(f);
    return out;
}

std::string rename_text(const std::string& text, const std::vector<std::pair<Span, std::string>>& sites) {
    std::vector<std::size_t> line_start{0};
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\n') line_start.push_back(i + 1);
    }
    auto offset = [&](const Position& p) {
        if (p.line < 1 || static_cast<std::size_t>(p.line) > line_start.size()) {
            throw Error("rename site outside the text");
        }
        return line_start[p.line - 1] + static_cast<std::size_t>(p.col - 1);
    };
    std::vector<std::pair<Span, std::string>> ordered = sites;
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.first.start > b.first.start; });
    std::string out = text;
    for (const auto& [span, name] : ordered) {
        const std::size_t b = offset(span.start);
        const std::size_t e = offset(span.end);
        out.replace(b, e - b, name);
    }
    return out;
}

std::vector<LiteralMention> literal_mentions(const SourceFile& file, const RenameDictionary& dict) {
    std::vector<LiteralMention> out;
    auto scan = [&](const Expr& e) {
        const auto* lit = e.get_if<LiteralExpr>();
        if (!lit || lit->kind != LiteralKind::String) return;
        const std::string& s = lit->text;
        for (std::size_t i = 0; i < s.size();) {
            if (!is_ident_start(s[i])) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < s.size() && is_ident_part(s[j])) ++j;
            const std::string word = s.substr(i, j - i);
            if (dict.forward().count(word)) out.push_back({e.span, word});
            i = j;
        }
    };
    for (const auto& cls : file.types) {
        for (const auto& m : cls.members) {
            if (const auto* f = std::get_if<FieldDecl>(&m)) {
                if (f->init) walk_expr(*f->init, scan);
            } else {
                walk_exprs_in_block(std::get<MethodDecl>(m).body, scan);
            }
        }
    }
    return out;
}

std::string substitute_identifiers(std::string_view text, const std::map<std::string, std::string>& mapping) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto copy_until = [&](std::size_t j) {
        out.append(text.substr(i, j - i));
        i = j;
    };
    while (i < n) {
        const char c = text[i];
        if (c == '"' || c == '\'') {
            std::size_t j = i + 1;
            while (j < n && text[j] != c && text[j] != '\n') j += text[j] == '\\' ? 2 : 1;
            copy_until(std::min(n, j + 1));
        } else if (c == '/' && i + 1 < n && text[i + 1] == '/') {
            std::size_t j = text.find('\n', i);
            copy_until(j == std::string_view::npos ? n : j);
        } else if (c == '/' && i + 1 < n && text[i + 1] == '*') {
            std::size_t j = text.find("*/", i + 2);
            copy_until(j == std::string_view::npos ? n : j + 2);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < n && (is_ident_part(text[j]) || text[j] == '.')) ++j;
            copy_until(j);
        } else if (is_ident_start(c)) {
            std::size_t j = i;
            while (j < n && is_ident_part(text[j])) ++j;
            const std::string word(text.substr(i, j - i));
            auto it = mapping.find(word);
            out += it == mapping.end() ? word : it->second;
            i = j;
        } else {
            copy_until(i + 1);
        }
    }
    return out;
}

std::string recover_patch(std::string_view patch_text, const RenameDictionary& dict) {
    return substitute_identifiers(patch_text, dict.backward());
}

std::string suggested_filename(const std::string& filename, const RenameDictionary& dict) {
    const auto dot = filename.rfind('.');
    const std::string stem = dot == std::string::npos ? filename : filename.substr(0, dot);
    const std::string ext = dot == std::string::npos ? "" : filename.substr(dot);
    auto it = dict.forward().find(stem);
    if (it == dict.forward().end() || dict.meta().at(stem).kind != IdentifierKind::Class) return filename;
    return it->second + ext;
}

}  // namespace vmorph
