#include <algorithm>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "java_gen.hpp"
#include "json.hpp"
#include "vmorph/parser.hpp"
#include "vmorph/printer.hpp"
#include "vmorph/rename.hpp"
#include "vmorph/structural.hpp"
#include "vmorph/transform.hpp"
#include "vmorph/walk.hpp"

using namespace vmorph;
using namespace vmorph::ast;

namespace {

SourceFile wrap(const std::string& body) {
    return parse("class T {\n    static int m(int a, int b, int c, String s, String t) {\n" + body + "\n    }\n}\n",
                 "T.java");
}

Stmt stmt_of(const std::string& text) { return parse_statements(text).front(); }

Block block_of(const std::string& text) {
    Block b;
    b.stmts = parse_statements(text);
    return b;
}

bool same(const Stmt& a, const std::string& expected) { return structurally_equal(a, stmt_of(expected)); }

bool same(const Block& a, const std::string& expected) { return structurally_equal(a, block_of(expected)); }

// Context for statements parsed outside a method: parameters a, b, c (int),
// s, t (String) are locals.
TransformContext fragment_context(const SynonymLexicon* lexicon = nullptr) {
    static const SourceFile f = wrap("return a;");
    return make_context(*f.methods().front(), &f, lexicon);
}

using testsupport::Gen;

std::vector<std::string> printed(const std::vector<Stmt>& stmts) {
    std::vector<std::string> out;
    for (const auto& s : stmts) out.push_back(print_stmt(s));
    return out;
}

struct CorpusMethod {
    std::shared_ptr<SourceFile> file;
    const MethodDecl* method;
};

std::vector<CorpusMethod> corpus_methods() {
    std::vector<CorpusMethod> out;
    for (const auto& path : testsupport::java_files(testsupport::fixture_dir() / "corpus")) {
        auto file = std::make_shared<SourceFile>(testsupport::parse_file(path));
        for (const auto* m : file->methods()) out.push_back({file, m});
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------

TEST_CASE("rule names") {
    CHECK(std::size(kAllRules) == 6);
    for (TransformRule r : kAllRules) CHECK(transform_rule_from_string(to_string(r)) == r);
    CHECK_THROWS_AS(transform_rule_from_string("Inline"), Error);
}

TEST_CASE("purity whitelist: qualified entries") {
    const auto w = PurityWhitelist::parse("# header\nString.length\n  Math.max  \n\n");
    CHECK(w.size() == 2);
    CHECK(w.contains("String", "length"));
    CHECK(w.contains("Math", "max"));
    CHECK_FALSE(w.contains("Path", "length"));
    CHECK(PurityWhitelist::bundled().contains("String", "trim"));
    CHECK(PurityWhitelist::load((testsupport::data_dir() / "purity_whitelist.txt").string()).size() ==
          PurityWhitelist::bundled().size());
}

TEST_CASE("flip_if: examples") {
    auto r = flip_if(stmt_of("if (x > 0) {a();} else {b();}"));
    REQUIRE(r.ok());
    CHECK(same(r.value(), "if (!(x > 0)) {b();} else {a();}"));
    CHECK(print_stmt(r.value()) == "if (!(x > 0)) {\n    b();\n} else {\n    a();\n}");

    auto d = flip_if(stmt_of("if (!done) {a();} else {b();}"));
    REQUIRE(d.ok());
    CHECK(same(d.value(), "if (done) {b();} else {a();}"));

    auto n = flip_if(stmt_of("if (x > 0) {a();}"));
    REQUIRE_FALSE(n.ok());
    CHECK(n.reason() == "no-else");
}

TEST_CASE("flip_if: involution on 100 generated if-else statements") {
    Gen g(11);
    for (int i = 0; i < 100; ++i) {
        const Stmt s = stmt_of(g.if_else());
        auto once = flip_if(s);
        REQUIRE(once.ok());
        CHECK_FALSE(structurally_equal(once.value(), s));
        auto twice = flip_if(once.value());
        REQUIRE(twice.ok());
        CHECK(structurally_equal(twice.value(), s));
    }
}

TEST_CASE("convert_loop: schemas") {
    auto w = convert_loop(stmt_of("for (int i = 0; i < n; i = i + 1) { s = s + i; }"));
    REQUIRE(w.ok());
    CHECK(same(w.value(), "{ int i = 0; while (i < n) { s = s + i; i = i + 1; } }"));

    auto f = convert_loop(stmt_of("while (it.hasNext()) { use(it.next()); }"));
    REQUIRE(f.ok());
    CHECK(same(f.value(), "for (; it.hasNext(); ) { use(it.next()); }"));
    CHECK(print_stmt(f.value()) == "for (; it.hasNext(); ) {\n    use(it.next());\n}");

    auto no_init = convert_loop(stmt_of("for (; i < n; i = i + 1) { a(); }"));
    REQUIRE(no_init.ok());
    CHECK(same(no_init.value(), "while (i < n) { a(); i = i + 1; }"));

    auto forever = convert_loop(stmt_of("for (int i = 0; ; i = i + 1) { if (i > 3) { break; } }"));
    REQUIRE(forever.ok());
    CHECK(same(forever.value(), "{ int i = 0; while (true) { if (i > 3) { break; } i = i + 1; } }"));
}

TEST_CASE("convert_loop: refusals") {
    auto c = convert_loop(stmt_of("for (int i = 0; i < n; i = i + 1) { if (i == 2) { continue; } a(); }"));
    REQUIRE_FALSE(c.ok());
    CHECK(c.reason() == "continue-in-body");

    // A continue bound to an inner loop does not block the outer one.
    CHECK(convert_loop(stmt_of("for (int i = 0; i < n; i = i + 1) { while (x) { continue; } }")).ok());

    auto m = convert_loop(stmt_of("for (i = 0, j = 1; i < n; i = i + 1) { a(); }"));
    REQUIRE_FALSE(m.ok());
    CHECK(m.reason() == "multi-declaration-init");

    auto t = convert_loop(stmt_of("for (int i = 0; i < n; i = i + 1) { return i; }"));
    REQUIRE_FALSE(t.ok());
    CHECK(t.reason() == "terminating-body");

    CHECK(convert_loop(stmt_of("a();")).reason() == "not-a-loop");
}

TEST_CASE("convert_loop: for -> while -> for on 100 generated loops") {
    Gen g(23);
    for (int i = 0; i < 100; ++i) {
        const std::string text = g.for_loop();
        const Stmt s = stmt_of(text);
        auto w = convert_loop(s, LoopDirection::ToWhile);
        REQUIRE_MESSAGE(w.ok(), text);
        auto back = convert_loop(w.value(), LoopDirection::ToFor);
        REQUIRE_MESSAGE(back.ok(), text);
        CHECK_MESSAGE(structurally_equal(back.value(), s), text);
    }
}

TEST_CASE("convert_conditional: ternary schema") {
    auto r = convert_conditional(stmt_of("v = cond ? exprTrue : exprFalse;"));
    REQUIRE(r.ok());
    REQUIRE(r.value().size() == 1);
    CHECK(same(r.value()[0], "if (cond) { v = exprTrue; } else { v = exprFalse; }"));

    auto d = convert_conditional(stmt_of("int v = a > b ? a : b;"));
    REQUIRE(d.ok());
    REQUIRE(d.value().size() == 2);
    CHECK(same(d.value()[0], "int v;"));
    CHECK(same(d.value()[1], "if (a > b) { v = a; } else { v = b; }"));

    CHECK(convert_conditional(stmt_of("var v = a > b ? a : b;")).reason() == "inferred-type");
    CHECK(convert_conditional(stmt_of("v = 1 + (c ? a : b);")).reason() == "nested-ternary-position");
    CHECK(convert_conditional(stmt_of("return c ? a : b;")).reason() == "nested-ternary-position");
    CHECK(convert_conditional(stmt_of("a = b;")).reason() == "not-a-conditional");
}

TEST_CASE("convert_conditional: ternary round trip on 100 generated statements") {
    Gen g(31);
    for (int i = 0; i < 100; ++i) {
        const std::string text = g.ternary_stmt();
        const Block original = block_of("log(a);\n" + text + "\nlog(b);");
        auto r = convert_conditional(original.stmts[1]);
        REQUIRE_MESSAGE(r.ok(), text);
        Block expanded = original;
        expanded.stmts.erase(expanded.stmts.begin() + 1);
        expanded.stmts.insert(expanded.stmts.begin() + 1, r.value().begin(), r.value().end());
        auto back = conditional_to_ternary(expanded);
        REQUIRE_MESSAGE(back.ok(), text);
        CHECK_MESSAGE(structurally_equal(back.value(), original), text);
    }
    CHECK(conditional_to_ternary(block_of("a = 1;")).reason() == "no-conditional-assignment");
}

TEST_CASE("convert_conditional: switch to if") {
    auto r = convert_conditional(stmt_of("switch (k) { case 1: a(); break; default: b(); }"));
    REQUIRE(r.ok());
    CHECK(same(r.value()[0], "if (k == 1) { a(); } else { b(); }"));

    auto multi = convert_conditional(stmt_of(
        "switch (k) { case -1: case 2: a(); break; case 3: return 4; }"));
    REQUIRE(multi.ok());
    CHECK(same(multi.value()[0], "if (k == -1 || k == 2) { a(); } else if (k == 3) { return 4; }"));

    auto str = convert_conditional(stmt_of("switch (cmd) { case \"go\": a(); break; default: b(); break; }"));
    REQUIRE(str.ok());
    CHECK(same(str.value()[0], "if (cmd.equals(\"go\")) { a(); } else { b(); }"));

    CHECK(convert_conditional(stmt_of("switch (k) { case 1: a(); case 2: b(); break; }")).reason() == "fallthrough");
    CHECK(convert_conditional(stmt_of("switch (k) { default: b(); }")).reason() == "default-only");
    CHECK(convert_conditional(stmt_of("switch (f(k)) { case 1: a(); break; }")).reason() == "non-name-scrutinee");
    CHECK(convert_conditional(stmt_of("switch (k) { case 1: if (x) { break; } a(); break; default: b(); }"))
              .reason() == "nested-break");
    CHECK(convert_conditional(stmt_of("switch (k) { case 1: int v = 2; a(v); break; case 2: v = 3; break; }"))
              .reason() == "shared-case-scope");
}

TEST_CASE("convert_conditional: if-chain to switch") {
    auto r = convert_conditional(stmt_of("if (k == 1) { a(); } else if (k == 2 || k == -3) { b(); } else { c(); }"));
    REQUIRE(r.ok());
    CHECK(same(r.value()[0], "switch (k) { case 1: a(); break; case 2: case -3: b(); break; default: c(); break; }"));

    auto ret = convert_conditional(stmt_of("if (s.equals(\"x\")) { return 1; } else if (s.equals(\"y\")) { return 2; }"));
    REQUIRE(ret.ok());
    CHECK(same(ret.value()[0], "switch (s) { case \"x\": return 1; case \"y\": return 2; }"));

    CHECK(convert_conditional(stmt_of("if (k < 1) { a(); } else if (k == 2) { b(); }")).reason() ==
          "non-literal-guards");
    CHECK(convert_conditional(stmt_of("if (k == 1) { a(); } else if (j == 2) { b(); }")).reason() ==
          "non-literal-guards");
    CHECK(convert_conditional(stmt_of("if (k == 1) { a(); } else if (k == 1) { b(); }")).reason() ==
          "duplicate-label");
    CHECK(convert_conditional(stmt_of("if (k == 1) { break; } else if (k == 2) { b(); }")).reason() ==
          "break-in-branch");
    // A plain if/else is not a chain.
    CHECK(convert_conditional(stmt_of("if (k == 1) { a(); } else { b(); }")).reason() == "not-a-conditional");

    // The scrutinee must be switchable when its type is known.
    const SourceFile f = parse("class T { static void m(Object o) { return; } }", "T.java");
    const TransformContext ctx = make_context(*f.methods().front(), &f);
    CHECK(convert_conditional(stmt_of("if (o.equals(\"x\")) { a(); } else if (o.equals(\"y\")) { b(); }"), &ctx)
              .reason() == "non-literal-guards");
}

TEST_CASE("convert_conditional: switch -> if -> switch on 100 generated switches") {
    Gen g(47);
    for (int i = 0; i < 100; ++i) {
        const std::string text = g.switch_stmt();
        const Stmt s = stmt_of(text);
        auto chain = convert_conditional(s);
        REQUIRE_MESSAGE(chain.ok(), text);
        REQUIRE(chain.value().size() == 1);
        auto back = convert_conditional(chain.value()[0]);
        if (!back.ok()) {
            // One guarded case without default leaves a plain if.
            CHECK_MESSAGE(back.reason() == "not-a-conditional", text);
            continue;
        }
        CHECK_MESSAGE(structurally_equal(back.value()[0], s), text);
    }
}

TEST_CASE("chain_functions: split and merge") {
    SynonymLexicon lexicon = SynonymLexicon::bundled();
    TransformContext ctx = fragment_context(&lexicon);
    ctx.locals.insert("value");
    ctx.locals.insert("x");
    const Block original = block_of("value.getClass().equals(x);");
    auto split = chain_functions(original, ChainDirection::Split, ctx);
    REQUIRE(split.ok());
    CHECK(same(split.value(), "Class value_class = value.getClass(); value_class.equals(x);"));

    auto merged = chain_functions(split.value(), ChainDirection::Merge, ctx);
    REQUIRE(merged.ok());
    CHECK(structurally_equal(merged.value(), original));

    auto twice = chain_functions(block_of("String v = s.trim(); v.length(); v.isEmpty();"), ChainDirection::Merge, ctx);
    REQUIRE_FALSE(twice.ok());
    CHECK(twice.reason() == "multiple-uses");
    CHECK(chain_functions(block_of("a = 1;"), ChainDirection::Merge, ctx).reason() == "no-chain");
    CHECK(chain_functions(block_of("a = s.length();"), ChainDirection::Split, ctx).reason() == "no-chain");
}

TEST_CASE("chain_functions: fresh names and types") {
    SynonymLexicon lexicon = SynonymLexicon::bundled();
    TransformContext ctx = fragment_context(&lexicon);
    auto r = chain_functions(block_of("a = s.trim().length();"), ChainDirection::Split, ctx);
    REQUIRE(r.ok());
    CHECK(same(r.value(), "String trimmedS = s.trim(); a = trimmedS.length();"));
    // The name is now taken.
    auto again = chain_functions(block_of("b = s.trim().length();"), ChainDirection::Split, ctx);
    REQUIRE(again.ok());
    CHECK(same(again.value(), "String trimmedS2 = s.trim(); b = trimmedS2.length();"));

    TransformContext plain = fragment_context();
    auto tmp = chain_functions(block_of("a = s.trim().length();"), ChainDirection::Split, plain);
    REQUIRE(tmp.ok());
    CHECK(same(tmp.value(), "String tmp1 = s.trim(); a = tmp1.length();"));
}

TEST_CASE("chain_functions: evaluation order is preserved") {
    TransformContext ctx = fragment_context();
    // f() runs before the chain; hoisting would reorder the calls.
    CHECK(chain_functions(block_of("a = f() + s.trim().length();"), ChainDirection::Split, ctx).reason() ==
          "evaluation-order");
    // Short-circuit: the chain may not run at all.
    CHECK(chain_functions(block_of("if (a > 0 && s.trim().isEmpty()) { b = 1; }"), ChainDirection::Split, ctx)
              .reason() == "evaluation-order");
    // A field read before the chain could observe the chain's effects.
    CHECK(chain_functions(block_of("a = count + s.trim().length();"), ChainDirection::Split, ctx).reason() ==
          "evaluation-order");
    // Merge may not move the call past another call.
    CHECK(chain_functions(block_of("String v = s.trim(); a = f() + v.length();"), ChainDirection::Merge, ctx)
              .reason() == "evaluation-order");
}

TEST_CASE("chain_functions: merge . split = id on 100 generated statements") {
    Gen g(59);
    for (int i = 0; i < 100; ++i) {
        const std::string text = g.stmts(g.pick(3), 0) + g.chain_stmt();
        const Block original = block_of(text);
        TransformContext ctx = fragment_context();
        auto split = chain_functions(original, ChainDirection::Split, ctx);
        REQUIRE_MESSAGE(split.ok(), text);
        CHECK(split.value().stmts.size() == original.stmts.size() + 1);
        auto merged = chain_functions(split.value(), ChainDirection::Merge, ctx);
        REQUIRE_MESSAGE(merged.ok(), text);
        CHECK_MESSAGE(structurally_equal(merged.value(), original), text);
    }
}

TEST_CASE("argument_pass: extract and inline") {
    SynonymLexicon lexicon = SynonymLexicon::bundled();
    TransformContext ctx = fragment_context(&lexicon);
    ctx.locals.insert("parentPath");
    auto r = argument_pass(block_of("f(parentPath.normalize());"), ArgumentDirection::Extract, ctx);
    REQUIRE(r.ok());
    CHECK(same(r.value(), "var normalizedParentPath = parentPath.normalize(); f(normalizedParentPath);"));

    auto in = argument_pass(block_of("var t = g(x); f(t);"), ArgumentDirection::Inline, ctx);
    REQUIRE(in.ok());
    CHECK(same(in.value(), "f(g(x));"));

    CHECK(argument_pass(block_of("int t = g(x); f(t, t);"), ArgumentDirection::Inline, ctx).reason() ==
          "multiple-uses");
    CHECK(argument_pass(block_of("int t = g(x); a = t + 1;"), ArgumentDirection::Inline, ctx).reason() ==
          "no-call-argument");
    CHECK(argument_pass(block_of("int t = g(x); f(h(), t);"), ArgumentDirection::Inline, ctx).reason() ==
          "interference");
    CHECK(argument_pass(block_of("int t = a; f(a = 2, t);"), ArgumentDirection::Inline, ctx).reason() ==
          "interference");
    CHECK(argument_pass(block_of("f(a, b);"), ArgumentDirection::Extract, ctx).reason() == "no-call-argument");
}

TEST_CASE("argument_pass: inline . extract = id on 100 generated call sites") {
    Gen g(67);
    for (int i = 0; i < 100; ++i) {
        const std::string text = g.stmts(g.pick(3), 0) + g.argument_stmt();
        const Block original = block_of(text);
        TransformContext ctx = fragment_context();
        auto ex = argument_pass(original, ArgumentDirection::Extract, ctx);
        REQUIRE_MESSAGE(ex.ok(), text);
        auto back = argument_pass(ex.value(), ArgumentDirection::Inline, ctx);
        REQUIRE_MESSAGE(back.ok(), text);
        CHECK_MESSAGE(structurally_equal(back.value(), original), text);
    }
}

TEST_CASE("reorder_statements: examples") {
    TransformContext ctx = fragment_context();
    ctx.locals.insert("n");
    ctx.locals.insert("x");
    TransformReport report;
    const Block swapped = reorder_statements(block_of("funcA(); int n = 0;"), ctx, &report);
    CHECK(same(swapped, "int n = 0; funcA();"));
    CHECK(report.applied_count(TransformRule::CodeOrder) == 1);

    TransformReport none;
    CHECK(same(reorder_statements(block_of("int a2 = f(); int b2 = g();"), ctx, &none), "int a2 = f(); int b2 = g();"));
    REQUIRE(none.skipped.size() == 1);
    CHECK(none.skipped[0].reason == "no-independent-pair");

    CHECK(same(reorder_statements(block_of("int x = 1; int y = x + 1;"), ctx), "int x = 1; int y = x + 1;"));
    // Both may throw.
    CHECK(same(reorder_statements(block_of("f(); int n = s.length();"), ctx), "f(); int n = s.length();"));
    // A whitelisted call that cannot throw commutes with an impure one.
    CHECK(same(reorder_statements(block_of("f(); int n = Math.max(a, b);"), ctx), "int n = Math.max(a, b); f();"));
    CHECK(same(reorder_statements(block_of("a = b + 1; c = 2;"), ctx), "c = 2; a = b + 1;"));
    // Field writes do not move past calls.
    CHECK(same(reorder_statements(block_of("f(); count = 1;"), ctx), "f(); count = 1;"));
    // Two statements that may throw keep their order.
    CHECK(same(reorder_statements(block_of("a = b / c; b = s.length();"), ctx), "a = b / c; b = s.length();"));
    // Control flow never moves.
    CHECK(same(reorder_statements(block_of("a = 1; return b;"), ctx), "a = 1; return b;"));
}

TEST_CASE("reorder_statements: output is a permutation on 100 generated blocks") {
    Gen g(71);
    for (int i = 0; i < 100; ++i) {
        const Block original = block_of(g.stmts(2 + g.pick(5), 0));
        TransformContext ctx = fragment_context();
        const Block out = reorder_statements(original, ctx);
        auto a = printed(original.stmts);
        auto b = printed(out.stmts);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
    }
}

TEST_CASE("apply_all: composition and identity") {
    const SourceFile f = wrap(
        "        if (a > b) {\n            c = a;\n        } else {\n            c = b;\n        }\n"
        "        for (int i = 0; i < c; i = i + 1) {\n            log(i);\n        }\n        return c;");
    const MethodDecl& m = *f.methods().front();
    TransformContext ctx = make_context(m, &f);
    auto [out, report] = apply_all(m, ctx);
    CHECK(report.applied_count(TransformRule::IfFlip) == 1);
    CHECK(report.applied_count(TransformRule::LoopConvert) == 1);
    CHECK_FALSE(structurally_equal(out, m));

    const SourceFile plain = wrap("        return a;");
    const MethodDecl& pm = *plain.methods().front();
    TransformContext pctx = make_context(pm, &plain);
    auto [same_m, empty_report] = apply_all(pm, pctx);
    CHECK(structurally_equal(same_m, pm));
    CHECK(empty_report.empty());
}

TEST_CASE("apply_all: getClass chain split") {
    const SourceFile f = testsupport::parse_file(testsupport::fixture_dir() / "transform" / "KeyValue.java");
    const MethodDecl* m = nullptr;
    for (const auto* md : f.methods()) {
        if (md->name == "sameType") m = md;
    }
    REQUIRE(m);
    const SynonymLexicon lexicon = SynonymLexicon::bundled();
    TransformContext ctx = make_context(*m, &f, &lexicon);
    auto [out, report] = apply_all(*m, ctx);
    const std::string text = print_method(out);
    CHECK(text.find("Class value_class = value.getClass();") != std::string::npos);
    CHECK(text.find("value_class.equals(") != std::string::npos);
    REQUIRE(report.applied_count(TransformRule::FunctionChain) == 1);
}

TEST_CASE("apply_all: normalize argument extracted") {
    const SourceFile f = testsupport::parse_file(testsupport::fixture_dir() / "rename_project" / "src" / "com" /
                                                 "example" / "files" / "PathGuard.java");
    const MethodDecl* m = nullptr;
    for (const auto* md : f.methods()) {
        if (md->name == "checkDirectoryTraversal") m = md;
    }
    REQUIRE(m);
    const SynonymLexicon lexicon = SynonymLexicon::bundled();
    TransformContext ctx = make_context(*m, &f, &lexicon);
    auto [out, report] = apply_all(*m, ctx);
    REQUIRE(out.body.stmts.size() == 2);
    CHECK(same(out.body.stmts[0], "var normalizedParentPath = parentPath.normalize();"));
    CHECK(same(out.body.stmts[1], "return pathToCheck.startsWith(normalizedParentPath);"));
    CHECK(report.applied_count(TransformRule::ArgumentPass) == 1);
    CHECK(report.applied[0].note == "extract: parentPath.normalize() into normalizedParentPath");
}

TEST_CASE("apply_all: deterministic, valid output, spans inside the method") {
    const SynonymLexicon lexicon = SynonymLexicon::bundled();
    std::size_t applied = 0;
    for (const auto& cm : corpus_methods()) {
        TransformContext c1 = make_context(*cm.method, cm.file.get(), &lexicon);
        TransformContext c2 = make_context(*cm.method, cm.file.get(), &lexicon);
        auto [o1, r1] = apply_all(*cm.method, c1);
        auto [o2, r2] = apply_all(*cm.method, c2);
        CHECK(structurally_equal(o1, o2));
        CHECK(r1.to_json() == r2.to_json());
        applied += r1.applied.size();

        // The transformed method prints to parseable subset Java.
        SourceFile copy = *cm.file;
        for (auto* md : copy.methods()) {
            if (md->name == cm.method->name && md->span == cm.method->span) *md = o1;
        }
        const std::string text = print(copy);
        SourceFile reparsed;
        CHECK_NOTHROW(reparsed = parse(text, cm.file->path));
        CHECK(print(reparsed) == text);

        for (const auto& a : r1.applied) CHECK_MESSAGE(cm.method->span.contains(a.span), cm.method->name);
        for (const auto& s : r1.skipped) CHECK_MESSAGE(cm.method->span.contains(s.span), cm.method->name);
    }
    CHECK(applied > 50);
}

TEST_CASE("apply_rules: every rule fires somewhere in the corpus") {
    const SynonymLexicon lexicon = SynonymLexicon::bundled();
    for (TransformRule rule : kAllRules) {
        std::size_t fired = 0;
        for (const auto& cm : corpus_methods()) {
            TransformContext ctx = make_context(*cm.method, cm.file.get(), &lexicon);
            fired += apply_rules(*cm.method, {rule}, ctx).second.applied_count(rule);
        }
        CHECK_MESSAGE(fired > 0, to_string(rule));
    }
}

TEST_CASE("report json") {
    TransformReport r;
    Span sp{"A.java", {2, 5}, {4, 6}};
    r.applied.push_back({TransformRule::IfFlip, sp, "negated condition, swapped branches"});
    r.skipped.push_back({TransformRule::LoopConvert, sp, "continue-in-body"});
    const auto j = nlohmann::json::parse(r.to_json());
    CHECK(j["applied"][0]["rule"] == "IfFlip");
    CHECK(j["applied"][0]["span"]["start_line"] == 2);
    CHECK(j["applied"][0]["span"]["end_col"] == 6);
    CHECK(j["skipped"][0]["reason"] == "continue-in-body");
    CHECK(j["skipped"][0]["span"]["file"] == "A.java");
}
