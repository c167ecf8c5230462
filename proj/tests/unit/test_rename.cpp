#include "doctest.h"
#include "fixtures.hpp"
#include "vmorph/lexer.hpp"
#include "vmorph/printer.hpp"
#include "vmorph/rename.hpp"
#include "vmorph/structural.hpp"

using namespace vmorph;
using namespace vmorph::ast;
namespace fs = std::filesystem;

namespace {

SynonymLexicon small_lexicon() { return SynonymLexicon::load((testsupport::fixture_dir() / "lexicon_small.tsv").string()); }

struct Project {
    std::vector<fs::path> paths;
    std::vector<std::string> texts;
    std::vector<SourceFile> files;
};

Project load_project(const fs::path& dir) {
    Project p;
    for (const auto& path : testsupport::java_files(dir)) {
        p.paths.push_back(path);
        p.texts.push_back(testsupport::read_text(path));
        p.files.push_back(parse(p.texts.back(), path.generic_string()));
    }
    return p;
}

std::vector<std::string> rename_texts(const Project& p, const RenameDictionary& dict, const StdlibIndex& stdlib) {
    const RenameSites sites = rename_sites(p.files, dict, stdlib);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < p.files.size(); ++i) {
        auto it = sites.find(p.files[i].path);
        out.push_back(it == sites.end() ? p.texts[i] : rename_text(p.texts[i], it->second));
    }
    return out;
}

std::vector<std::string> token_texts(const std::string& text) {
    std::vector<std::string> out;
    for (const auto& t : lex(text, "x")) out.push_back(t.text);
    return out;
}

std::size_t count_word(const std::string& text, const std::string& word) {
    std::size_t n = 0;
    for (const auto& t : lex(text, "x")) n += t.kind == TokenKind::Identifier && t.text == word;
    return n;
}

IdentifierTable table_for(const std::string& src) {
    return analyze_identifiers({parse(src, "T.java")}, StdlibIndex::bundled());
}

}  // namespace

TEST_CASE("propose_synonyms: lookup, passthrough, ranking") {
    SynonymLexicon lex;
    lex.add("parent", {"progenitor"});
    lex.add("path", {"route"});
    lex.add("check", {"verify", "inspect"});
    CHECK(propose_synonyms({"parent", "path"}, lex) ==
          std::vector<std::vector<std::string>>{{"progenitor"}, {"route"}});
    CHECK(propose_synonyms({"xml"}, lex) == std::vector<std::vector<std::string>>{{"xml"}});
    CHECK(propose_synonyms({"check"}, lex) == std::vector<std::vector<std::string>>{{"verify", "inspect"}});
}

TEST_CASE("lexicon: parsing drops self-maps and reads participles") {
    const auto lex = SynonymLexicon::parse("# c\nItem\titem, Thing\nempty\tempty\n\n[participles]\nnormalize\tnormalized\n");
    CHECK(lex.synonyms("item") == std::vector<std::string>{"thing"});
    CHECK(lex.synonyms("empty").empty());
    CHECK(lex.participle("normalize") == "normalized");
    CHECK_FALSE(lex.participle("walk").has_value());
    CHECK_THROWS_AS(SynonymLexicon::parse("no tab here\n"), Error);
    const auto bundled = SynonymLexicon::bundled();
    CHECK(bundled.size() > 100);
    CHECK(bundled.participle("normalize") == "normalized");
}

TEST_CASE("assemble_identifier examples") {
    CHECK(assemble_identifier({"progenitor", "route"}, Convention::Camel) == "progenitorRoute");
    CHECK(assemble_identifier({"node", "tally"}, Convention::Snake) == "node_tally");
    CHECK(assemble_identifier({"file", "service"}, Convention::Pascal) == "FileService");
}

TEST_CASE("plan: project names renamed, external names absent") {
    const auto lex = small_lexicon();
    const auto table = table_for(
        "class T {\n"
        "    boolean f(String parentPath, String pathToCheck) {\n"
        "        return pathToCheck.startsWith(parentPath);\n"
        "    }\n"
        "}\n");
    const auto dict = build_rename_plan(table, lex);
    CHECK(dict.forward().at("parentPath") == "progenitorRoute");
    CHECK(dict.forward().at("pathToCheck") == "routeToVerify");
    CHECK(dict.forward().count("startsWith") == 0);
    CHECK(dict.forward().count("String") == 0);
    CHECK(dict.backward().at("progenitorRoute") == "parentPath");
    CHECK(dict.meta().at("parentPath").kind == IdentifierKind::Variable);
}

TEST_CASE("plan: collisions advance the last word, then add a numeric suffix") {
    const auto lex = small_lexicon();
    const auto table = table_for(
        "class T {\n"
        "    int f(int itemCount, int itemNumber) {\n"
        "        return itemCount + itemNumber;\n"
        "    }\n"
        "}\n");
    const auto dict = build_rename_plan(table, lex);
    CHECK(dict.forward().at("itemCount") == "itemTally");
    CHECK(dict.forward().at("itemNumber") == "itemTally2");

    // An existing name blocks the proposal too.
    const auto t2 = table_for("class T { int f(int nodeCount, int node_tally) { return nodeCount; } }");
    const auto d2 = build_rename_plan(t2, lex);
    CHECK(d2.forward().at("nodeCount") == "vertexTally");
    CHECK(d2.forward().at("node_tally") == "vertex_tally");

    const auto t3 = table_for("class T { int f(int count, int tally) { return count + tally; } }");
    CHECK(build_rename_plan(t3, lex).forward().at("count") == "tally2");
}

TEST_CASE("plan: reserved words are skipped in favour of the next synonym") {
    const auto lex = small_lexicon();
    const auto table = table_for("class T { int f(int kind) { return kind; } }");
    CHECK(build_rename_plan(table, lex).forward().at("kind") == "sort");
}

TEST_CASE("plan: main and library overrides keep their names") {
    SynonymLexicon lex;
    lex.add("main", {"chief"});
    lex.add("to", {"toward"});
    lex.add("string", {"text"});
    const auto stdlib = StdlibIndex::bundled();
    const auto table = table_for(
        "class T {\n"
        "    public static void main(String args) {\n"
        "    }\n"
        "\n"
        "    public String toString() {\n"
        "        return \"t\";\n"
        "    }\n"
        "}\n");
    RenameOptions opts;
    opts.stdlib = &stdlib;
    const auto dict = build_rename_plan(table, lex, opts);
    CHECK(dict.forward().count("main") == 0);
    CHECK(dict.forward().count("toString") == 0);
}

TEST_CASE("plan: review hook can accept, edit or skip") {
    const auto lex = small_lexicon();
    const auto table = table_for("class T { int f(int parentPath, int nodeCount, int rootPath) { return 0; } }");
    std::vector<std::string> offered;
    RenameOptions opts;
    opts.review = [&](const std::string& orig, const std::string& proposed, IdentifierKind) {
        offered.push_back(orig + "->" + proposed);
        if (orig == "parentPath") return ReviewDecision{ReviewAction::Edit, "ancestorTrail"};
        if (orig == "nodeCount") return ReviewDecision{ReviewAction::Skip, {}};
        return ReviewDecision{};
    };
    const auto dict = build_rename_plan(table, lex, opts);
    CHECK(offered == std::vector<std::string>{"parentPath->progenitorRoute", "nodeCount->vertexTally",
                                              "rootPath->baseRoute"});
    CHECK(dict.forward().at("parentPath") == "ancestorTrail");
    CHECK(dict.forward().count("nodeCount") == 0);
    CHECK(dict.forward().at("rootPath") == "baseRoute");

    opts.review = [](const std::string&, const std::string&, IdentifierKind) {
        return ReviewDecision{ReviewAction::Edit, "class"};
    };
    CHECK_THROWS_AS(build_rename_plan(table, lex, opts), Error);
}

TEST_CASE("dictionary: injective, JSON round trip, inverse") {
    RenameDictionary d;
    d.add("parentPath", "progenitorRoute", {IdentifierKind::Variable, Convention::Camel});
    d.add("FileService", "DocumentHelp", {IdentifierKind::Class, Convention::Pascal});
    CHECK_THROWS_AS(d.add("parentPath", "other", {}), Error);
    CHECK_THROWS_AS(d.add("x", "progenitorRoute", {}), Error);
    const std::string text = d.to_json();
    CHECK(text ==
          "{\n"
          "  \"conventions\": {\n"
          "    \"FileService\": \"pascal\",\n"
          "    \"parentPath\": \"camel\"\n"
          "  },\n"
          "  \"forward\": {\n"
          "    \"FileService\": \"DocumentHelp\",\n"
          "    \"parentPath\": \"progenitorRoute\"\n"
          "  },\n"
          "  \"kinds\": {\n"
          "    \"FileService\": \"class\",\n"
          "    \"parentPath\": \"variable\"\n"
          "  }\n"
          "}\n");
    const auto back = RenameDictionary::from_json(text);
    CHECK(back.forward() == d.forward());
    CHECK(back.meta().at("FileService").kind == IdentifierKind::Class);
    const auto minimal = RenameDictionary::from_json(R"({"forward": {"a": "b"}, "kinds": {"a": "function"}})");
    CHECK(minimal.meta().at("a").kind == IdentifierKind::Function);
    CHECK(d.inverse().forward() == d.backward());
    CHECK(suggested_filename("FileService.java", d) == "DocumentHelp.java");
    CHECK(suggested_filename("PathGuard.java", d) == "PathGuard.java");
}

TEST_CASE("recover_patch: token-level substitution") {
    RenameDictionary d;
    d.add("parentPath", "progenitorRoute", {});
    CHECK(recover_patch("progenitorRoute.normalize()", d) == "parentPath.normalize()");
    CHECK(recover_patch("return x + 1;", d) == "return x + 1;");
    CHECK(recover_patch("f(\"progenitorRoute\", progenitorRoutes, 'c'); // progenitorRoute", d) ==
          "f(\"progenitorRoute\", progenitorRoutes, 'c'); // progenitorRoute");
    CHECK(recover_patch("-    if (!progenitorRoute.isEmpty())\n+    if (progenitorRoute == null)\n", d) ==
          "-    if (!parentPath.isEmpty())\n+    if (parentPath == null)\n");
}

TEST_CASE("rename laws on the two-file project") {
    const auto lex = small_lexicon();
    const auto stdlib = StdlibIndex::bundled();
    const Project p = load_project(testsupport::fixture_dir() / "rename_project");
    const auto table = analyze_identifiers(p.files, stdlib);
    RenameOptions opts;
    opts.stdlib = &stdlib;
    const auto dict = build_rename_plan(table, lex, opts);

    CHECK(dict.forward().at("checkDirectoryTraversal") == "verifyFolderCrossing");
    CHECK(dict.forward().at("FileService") == "DocumentHelp");
    CHECK(dict.forward().at("parentPath") == "progenitorRoute");
    CHECK(dict.forward().count("startsWith") == 0);
    CHECK(dict.forward().count("normalize") == 0);

    const auto renamed = rename_texts(p, dict, stdlib);
    for (std::size_t i = 0; i < p.texts.size(); ++i) {
        CAPTURE(p.paths[i].string());
        CHECK(renamed[i] != p.texts[i]);
        // Library names survive untouched.
        for (const char* lib : {"startsWith", "normalize", "toFile", "exists", "Path", "File", "String"}) {
            CHECK(count_word(renamed[i], lib) == count_word(p.texts[i], lib));
        }
        // Backward application restores the exact bytes.
        CHECK(recover_patch(renamed[i], dict) == p.texts[i]);
        // AST-level rename prints to the same tokens as the text-level one.
        const auto ast_renamed = apply_rename(p.files, dict, stdlib);
        CHECK(token_texts(print(ast_renamed[i])) == token_texts(renamed[i]));
    }
    CHECK(renamed[0].find("progenitorRoute") != std::string::npos);
    CHECK(renamed[1].find("pathToCheck.startsWith(") == std::string::npos);
    CHECK(renamed[1].find("routeToVerify.startsWith(progenitorRoute.normalize())") != std::string::npos);

    // Backward dictionary applied to the renamed ASTs restores them.
    const auto ast_renamed = apply_rename(p.files, dict, stdlib);
    const auto restored = apply_rename(ast_renamed, dict.inverse(), stdlib);
    for (std::size_t i = 0; i < p.files.size(); ++i) CHECK(structurally_equal(restored[i], p.files[i]));
}

TEST_CASE("apply_rename: empty dictionary is the identity, stale keys are rejected") {
    const auto stdlib = StdlibIndex::bundled();
    const Project p = load_project(testsupport::fixture_dir() / "rename_project");
    const auto same = apply_rename(p.files, RenameDictionary{}, stdlib);
    for (std::size_t i = 0; i < p.files.size(); ++i) CHECK(structurally_equal(same[i], p.files[i]));
    RenameDictionary stale;
    stale.add("noSuchName", "stillNothing", {});
    CHECK_THROWS_AS(apply_rename(p.files, stale, stdlib), StaleDictionary);
    RenameDictionary external;
    external.add("startsWith", "beginsWith", {});
    CHECK_THROWS_AS(apply_rename(p.files, external, stdlib), StaleDictionary);
}

TEST_CASE("apply_rename keeps the tree shape and reports string literal mentions") {
    const auto lex = small_lexicon();
    const auto stdlib = StdlibIndex::bundled();
    const Project p = load_project(testsupport::fixture_dir() / "rename_project");
    const auto dict = build_rename_plan(analyze_identifiers(p.files, stdlib), lex);
    const auto renamed = apply_rename(p.files, dict, stdlib);
    for (std::size_t i = 0; i < p.files.size(); ++i) {
        // Renaming back via text substitution gives the original tree.
        const std::string back = recover_patch(print(renamed[i]), dict);
        CHECK(structurally_equal(parse(back, p.files[i].path), p.files[i]));
    }
    const auto mentions = literal_mentions(p.files[1], dict);
    REQUIRE(mentions.size() == 0);
    RenameDictionary d;
    d.add("parent", "progenitor", {});
    const auto m2 = literal_mentions(p.files[1], d);
    REQUIRE(m2.size() == 1);
    CHECK(m2[0].name == "parent");
}

TEST_CASE("property: recover(print(rename(f))) token-equals print(f) over the corpus") {
    const auto lex = SynonymLexicon::bundled();
    const auto stdlib = StdlibIndex::bundled();
    int renamed_files = 0;
    for (const auto& path : testsupport::java_files(testsupport::fixture_dir() / "corpus")) {
        CAPTURE(path.string());
        const SourceFile f = testsupport::parse_file(path);
        RenameOptions opts;
        opts.stdlib = &stdlib;
        const auto dict = build_rename_plan(analyze_identifiers({f}, stdlib), lex, opts);
        const auto out = apply_rename({f}, dict, stdlib);
        renamed_files += !dict.empty();
        CHECK(token_texts(recover_patch(print(out[0]), dict)) == token_texts(print(f)));
        for (const auto& [orig, renamed] : dict.forward()) {
            CHECK(!is_reserved_word(renamed));
            CHECK(!stdlib.contains(renamed));
        }
    }
    CHECK(renamed_files >= 25);
}
