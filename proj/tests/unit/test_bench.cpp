#include <chrono>
#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"
#include "vmorph/bench.hpp"
#include "vmorph/parser.hpp"

using namespace vmorph;
namespace fs = std::filesystem;

namespace {

std::map<std::string, std::string> tree_contents(const fs::path& root) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (e.is_regular_file()) out[e.path().lexically_relative(root).generic_string()] = testsupport::read_text(e.path());
    }
    return out;
}

VulnRecord corpus_record(const std::string& id, const std::string& file, LineRange lines) {
    return {id, testsupport::fixture_dir() / "corpus", file, lines, std::nullopt, std::nullopt};
}

const SynonymLexicon& lexicon() {
    static const SynonymLexicon lex = SynonymLexicon::bundled();
    return lex;
}

}  // namespace

TEST_CASE("names round trip") {
    for (VariantKind v : kAllVariants) CHECK(variant_kind_from_string(to_string(v)) == v);
    for (PromptFormat f : kAllPromptFormats) CHECK(prompt_format_from_string(to_string(f)) == f);
    CHECK_THROWS_AS(variant_kind_from_string("obfuscated"), Error);
    CHECK_THROWS_AS(prompt_format_from_string("gpt"), Error);
}

// ---------------------------------------------------------------------------
// Variant generation

TEST_CASE("generate_variants: 50 records give 150 entries") {
    const auto set = load_records(testsupport::fixture_dir() / "bench" / "records.json");
    REQUIRE(set.records.size() == 50);
    const fs::path out = testsupport::scratch_dir("bench50");
    GenerateOptions opts;
    opts.source_benchmark = set.source_benchmark;
    opts.jobs = 4;
    const auto start = std::chrono::steady_clock::now();
    const auto manifest = generate_variants(set.records, lexicon(), out, 7, opts);
    const auto elapsed = std::chrono::steady_clock::now() - start;
    CHECK(elapsed < std::chrono::minutes(1));
    REQUIRE(manifest.entries.size() == 150);
    std::map<std::string, std::set<VariantKind>> kinds;
    for (const auto& e : manifest.entries) {
        CHECK_MESSAGE(!e.failure, e.record.id << ": " << e.failure.value_or(""));
        kinds[e.record.id].insert(e.variant);
        CHECK(fs::is_directory(e.output_root));
        CHECK(fs::is_regular_file(e.report));
        CHECK(fs::is_regular_file(e.output_root / e.variant_buggy_file));
        CHECK(e.dictionary.has_value() == (e.variant != VariantKind::StructureOnly));
        if (e.dictionary) CHECK(fs::is_regular_file(*e.dictionary));
        REQUIRE(e.equivalence);
        CHECK_MESSAGE(e.equivalence->verdict == Verdict::Equivalent, e.record.id << " " << to_string(e.variant));
        CHECK(!e.buggy_method.empty());
    }
    CHECK(kinds.size() == 50);
    for (const auto& [id, k] : kinds) CHECK(k.size() == 3);
}

TEST_CASE("generate_variants: one and zero records") {
    const fs::path out = testsupport::scratch_dir("bench1");
    const auto one = generate_variants({corpus_record("Gcd-1", "Gcd.java", {5, 5})}, lexicon(), out, 1);
    REQUIRE(one.entries.size() == 3);
    CHECK(one.entries[0].variant == VariantKind::RenameOnly);
    CHECK(one.entries[1].variant == VariantKind::StructureOnly);
    CHECK(one.entries[2].variant == VariantKind::Both);
    CHECK(generate_variants({}, lexicon(), testsupport::scratch_dir("bench0"), 1).entries.empty());
}

TEST_CASE("generate_variants: failures are recorded per entry") {
    const fs::path out = testsupport::scratch_dir("benchfail");
    const std::vector<VulnRecord> records = {corpus_record("Missing-1", "Nope.java", {3, 3}),
                                             corpus_record("Outside-1", "Gcd.java", {1, 1}),
                                             corpus_record("Gcd-1", "Gcd.java", {5, 5})};
    const auto m = generate_variants(records, lexicon(), out, 1);
    REQUIRE(m.entries.size() == 9);
    for (int i = 0; i < 6; ++i) {
        REQUIRE(m.entries[i].failure);
        CHECK(m.entries[i].failure->find(m.entries[i].record.id) == 0);
    }
    CHECK(m.entries[0].failure->find("not found") != std::string::npos);
    CHECK(m.entries[3].failure->find("not inside one method") != std::string::npos);
    for (int i = 6; i < 9; ++i) CHECK_FALSE(m.entries[i].failure);
}

TEST_CASE("generate_variants: project with classes and fields") {
    const fs::path project = testsupport::fixture_dir() / "rename_project";
    const fs::path guard = fs::path("src/com/example/files/PathGuard.java");
    const auto text = testsupport::read_text(project / guard);
    const auto file = parse(text, guard.generic_string());
    const ast::MethodDecl* method = nullptr;
    for (const auto* m : file.methods()) {
        if (!m->is_constructor() && m->body.stmts.size() >= 2) {
            method = m;
            break;
        }
    }
    REQUIRE(method);
    const int line = method->body.stmts.front().span.start.line;
    const VulnRecord record{"Files-1", project, guard, LineRange{line, line}, std::string("CWE-22"), std::nullopt};
    const fs::path out = testsupport::scratch_dir("benchproject");
    const auto m = generate_variants({record}, lexicon(), out, 3);
    REQUIRE(m.entries.size() == 3);
    for (const auto& e : m.entries) REQUIRE_MESSAGE(!e.failure, *e.failure);

    const auto& rename = m.entries[0];
    const auto& both = m.entries[2];
    // Both reuses the RenameOnly dictionary.
    CHECK(testsupport::read_text(*rename.dictionary) == testsupport::read_text(*both.dictionary));
    const auto dict = RenameDictionary::load(rename.dictionary->string());
    CHECK_FALSE(dict.empty());
    CHECK(rename.variant_buggy_file == both.variant_buggy_file);
    CHECK(fs::is_regular_file(both.output_root / both.variant_buggy_file));
    // Renaming keeps the layout, so buggy lines do not move.
    CHECK(rename.variant_buggy_lines == record.buggy_lines);
    // The structure variant leaves the other files untouched.
    const auto& structure = m.entries[1];
    const auto original = tree_contents(project);
    const auto restructured = tree_contents(structure.output_root);
    REQUIRE(original.size() == restructured.size());
    for (const auto& [path, content] : original) {
        if (path != guard.generic_string()) CHECK(restructured.at(path) == content);
    }
    const auto report = nlohmann::json::parse(testsupport::read_text(structure.report));
    CHECK(report.contains("applied"));
    CHECK(structure.record.cwe == std::optional<std::string>("CWE-22"));
}

TEST_CASE("generate_variants: structure variant tracks buggy lines") {
    const auto set = load_records(testsupport::fixture_dir() / "bench" / "records.json");
    const fs::path out = testsupport::scratch_dir("benchlines");
    GenerateOptions opts;
    opts.variants = {VariantKind::StructureOnly};
    const auto m = generate_variants(set.records, lexicon(), out, 7, opts);
    int moved = 0;
    for (const auto& e : m.entries) {
        REQUIRE(!e.failure);
        REQUIRE_MESSAGE(e.variant_buggy_lines, e.record.id);
        const auto text = testsupport::read_text(e.output_root / e.variant_buggy_file);
        const auto file = parse(text, "x.java");
        const auto* method = method_containing(file, *e.variant_buggy_lines);
        REQUIRE_MESSAGE(method, e.record.id);
        CHECK(method->name == e.buggy_method);
        moved += *e.variant_buggy_lines != *e.record.buggy_lines;
    }
    CHECK(moved > 0);
}

TEST_CASE("manifest: json round trip with relative paths") {
    const fs::path out = testsupport::scratch_dir("benchjson");
    auto m = generate_variants({corpus_record("Gcd-1", "Gcd.java", {5, 5})}, lexicon(), out, 9);
    m.entries[0].validation = ValidationResult{ValidationResult::Status::Failed, 1, ""};
    const fs::path path = out / "manifest.json";
    m.save(path);
    const std::string text = testsupport::read_text(path);
    CHECK(text.find(fs::absolute(out).string()) == std::string::npos);
    const auto j = nlohmann::json::parse(text);
    CHECK(j["entries"][0]["output_root"] == "Gcd-1/rename");
    CHECK(j["entries"][1]["dictionary"].is_null());
    CHECK(j["entries"][1]["equivalence"]["verdict"] == "equivalent");
    const auto back = BenchmarkManifest::load(path);
    CHECK(back.to_json(out) == m.to_json(out));
    CHECK(back.entries[0].validation->status == ValidationResult::Status::Failed);
    CHECK(back.seed == 9);
}

TEST_CASE("generate_variants: deterministic across runs and job counts") {
    const auto set = load_records(testsupport::fixture_dir() / "bench" / "records.json");
    const std::vector<VulnRecord> some(set.records.begin(), set.records.begin() + 12);
    const fs::path a = testsupport::scratch_dir("benchdet_a");
    const fs::path b = testsupport::scratch_dir("benchdet_b");
    GenerateOptions serial;
    GenerateOptions parallel;
    parallel.jobs = 4;
    generate_variants(some, lexicon(), a, 5, serial).save(a / "manifest.json");
    generate_variants(some, lexicon(), b, 5, parallel).save(b / "manifest.json");
    CHECK(tree_contents(a) == tree_contents(b));
}

TEST_CASE("generate_variants: unsupported methods are left for external runs") {
    const fs::path project = testsupport::fixture_dir() / "transform";
    const auto text = testsupport::read_text(project / "KeyValue.java");
    const auto file = parse(text, "KeyValue.java");
    const ast::MethodDecl* same_type = nullptr;
    for (const auto* m : file.methods()) {
        if (m->name == "sameType") same_type = m;
    }
    REQUIRE(same_type);
    const int line = same_type->span.start.line + 1;
    const VulnRecord record{"KeyValue-1", project, "KeyValue.java", LineRange{line, line}, std::nullopt, std::nullopt};
    const auto m = generate_variants({record}, lexicon(), testsupport::scratch_dir("benchpending"), 1);
    for (const auto& e : m.entries) {
        REQUIRE(!e.failure);
        CHECK_FALSE(e.equivalence);
        CHECK(std::any_of(e.log.begin(), e.log.end(),
                          [](const std::string& s) { return s.rfind("external-pending", 0) == 0; }));
    }
    const auto j = nlohmann::json::parse(m.to_json("."));
    CHECK(j["entries"][0]["equivalence"] == "external-pending");
}

// ---------------------------------------------------------------------------
// Prompts

namespace {

struct PromptFixture {
    std::string text;
    ast::SourceFile file;
};

const PromptFixture& sanitizer() {
    static const PromptFixture f = [] {
        PromptFixture p;
        p.text = testsupport::read_text(testsupport::fixture_dir() / "prompts" / "Sanitizer.java");
        p.file = parse(p.text, "Sanitizer.java");
        return p;
    }();
    return f;
}

const ast::MethodDecl& sanitizer_method() { return *sanitizer().file.methods().front(); }

std::string golden(const std::string& name) {
    return testsupport::read_text(testsupport::fixture_dir() / "prompts" / "golden" / name);
}

// Lines first..last of `text`, each ending in '\n'.
std::string lines_of(const std::string& text, int first, int last) {
    std::istringstream in(text);
    std::string out, line;
    for (int n = 1; std::getline(in, line); ++n) {
        if (n >= first && n <= last) out += line + "\n";
    }
    return out;
}

}  // namespace

TEST_CASE("prompts: golden outputs for every format") {
    const LineRange bug{10, 11};
    for (PromptFormat f : kAllPromptFormats) {
        const auto b = build_prompt({f, 0}, sanitizer().text, sanitizer_method(), bug);
        CHECK_FALSE(b.truncated);
        if (f == PromptFormat::CodexInsert) {
            CHECK(b.prompt == golden("codex-insert.prefix.txt"));
            CHECK(b.suffix == golden("codex-insert.suffix.txt"));
        } else {
            CHECK_MESSAGE(b.prompt == golden(std::string(to_string(f)) + ".txt"), to_string(f));
            CHECK(b.suffix.empty());
        }
    }
}

TEST_CASE("prompts: mask formats are reversible") {
    const std::string function = lines_of(sanitizer().text, 5, 14);
    for (PromptFormat f : {PromptFormat::CodeT5Mask, PromptFormat::PlbartMask, PromptFormat::IncoderMask}) {
        for (int first = 5; first <= 14; ++first) {
            for (int last = first; last <= 14; ++last) {
                const auto b = build_prompt({f, 0}, sanitizer().text, sanitizer_method(), {first, last});
                const auto pos = b.prompt.find(b.mask_token);
                REQUIRE(pos != std::string::npos);
                CHECK(b.prompt.find(b.mask_token, pos + 1) == std::string::npos);
                std::string restored = b.prompt;
                restored.replace(pos, b.mask_token.size(), b.masked);
                CHECK(restored == function);
            }
        }
    }
}

TEST_CASE("prompts: mask reversibility over the corpus") {
    std::mt19937 rng(17);
    for (const auto& path : testsupport::java_files(testsupport::fixture_dir() / "corpus")) {
        const auto text = testsupport::read_text(path);
        const auto file = parse(text, path.generic_string());
        for (const auto* m : file.methods()) {
            const int a = m->span.start.line;
            const int z = m->span.end.line;
            const int first = a + static_cast<int>(rng() % static_cast<unsigned>(z - a + 1));
            const int last = first + static_cast<int>(rng() % static_cast<unsigned>(z - first + 1));
            const auto b = build_prompt({PromptFormat::CodeT5Mask, 0}, text, *m, {first, last});
            std::string restored = b.prompt;
            restored.replace(restored.find(b.mask_token), b.mask_token.size(), b.masked);
            CHECK(restored == lines_of(text, a, z));
        }
    }
}

TEST_CASE("prompts: codex insert on a five-line method") {
    const std::string src =
        "class A {\n"
        "    int f(int x) {\n"
        "        int y = x;\n"
        "        y = y / 0;\n"
        "        return y;\n"
        "    }\n"
        "}\n";
    const auto file = parse(src, "A.java");
    const auto b = build_prompt({PromptFormat::CodexInsert, 0}, src, *file.methods().front(), {4, 4});
    CHECK(b.prompt ==
          "    int f(int x) {\n"
          "        int y = x;\n"
          "        /* BUG:\n"
          "         * y = y / 0;\n"
          "         * FIXED:\n"
          "         */\n");
    CHECK(b.suffix ==
          "        return y;\n"
          "    }\n");
}

TEST_CASE("prompts: codegen prefix over a whole body is the signature") {
    const auto b = build_prompt({PromptFormat::CodeGenPrefix, 0}, sanitizer().text, sanitizer_method(), {6, 13});
    CHECK(b.prompt == "    public static String relative(String path) {\n");
}

TEST_CASE("prompts: buggy lines outside the method") {
    CHECK_THROWS_AS(build_prompt({PromptFormat::CodeT5Mask, 0}, sanitizer().text, sanitizer_method(), {3, 6}),
                    SpanOutsideMethod);
    CHECK_THROWS_AS(build_prompt({PromptFormat::CodeT5Mask, 0}, sanitizer().text, sanitizer_method(), {14, 15}),
                    SpanOutsideMethod);
}

TEST_CASE("prompts: truncation keeps the buggy lines centred") {
    const auto b = build_prompt({PromptFormat::CodeT5Mask, 5}, sanitizer().text, sanitizer_method(), {10, 11});
    CHECK(b.truncated);
    CHECK(b.prompt ==
          "        }\n"
          "        String trimmed = path.trim();\n"
          "        <extra_id_0>\n"
          "        }\n"
          "        return trimmed;\n");
    // Near the start of the method the unused share goes to the other side.
    const auto c = build_prompt({PromptFormat::TunedComment, 4}, sanitizer().text, sanitizer_method(), {5, 5});
    CHECK(c.prompt ==
          "    // buggy line: public static String relative(String path) {\n"
          "        if (path == null) {\n"
          "            return \"\";\n"
          "        }\n");
    // Codex: the window covers prefix and suffix together.
    const auto x = build_prompt({PromptFormat::CodexInsert, 7}, sanitizer().text, sanitizer_method(), {10, 10});
    CHECK(x.prompt ==
          "        }\n"
          "        String trimmed = path.trim();\n"
          "        /* BUG:\n"
          "         * if (trimmed.startsWith(\"/\")) {\n"
          "         * FIXED:\n"
          "         */\n");
    CHECK(x.suffix == "            trimmed = trimmed.substring(1);\n");
    // The window never cuts into the buggy lines.
    const auto w = build_prompt({PromptFormat::TunedComment, 1}, sanitizer().text, sanitizer_method(), {10, 11});
    CHECK(w.prompt ==
          "        // buggy line: if (trimmed.startsWith(\"/\")) {\n"
          "            // buggy line: trimmed = trimmed.substring(1);\n");
    const auto g = build_prompt({PromptFormat::CodeGenPrefix, 2}, sanitizer().text, sanitizer_method(), {10, 10});
    CHECK(g.prompt == "        }\n        String trimmed = path.trim();\n");
}

TEST_CASE("prompts: json bundle") {
    const auto b = build_prompt({PromptFormat::PlbartMask, 0}, sanitizer().text, sanitizer_method(), {9, 9});
    const auto j = nlohmann::json::parse(b.to_json());
    CHECK(j["format"] == "plbart-mask");
    CHECK(j["mask_token"] == "<mask>");
    CHECK(j["masked"] == "String trimmed = path.trim();");
    CHECK_FALSE(j.contains("suffix"));
}

// ---------------------------------------------------------------------------
// Statistics

TEST_CASE("margin_of_error: zero variance") {
    CHECK(margin_of_error(std::vector<double>(25, 10.2), 0.95) == 0.0);
}

TEST_CASE("margin_of_error: matches closed-form t quantiles") {
    // Fixture {9, 10, 11}: mean 10, s = 1, n = 3, df = 2. For df = 2 the
    // quantile has the closed form t = sqrt(2 q^2 / (1 - q^2)), q = 2p - 1.
    std::vector<double> samples;
    std::istringstream in(testsupport::read_text(testsupport::fixture_dir() / "stats" / "samples.txt"));
    for (double x; in >> x;) samples.push_back(x);
    REQUIRE(samples.size() == 3);
    const double q = 0.95;
    const double t2 = std::sqrt(2.0 * q * q / (1.0 - q * q));
    CHECK(t2 == doctest::Approx(4.302652729749464).epsilon(1e-12));
    CHECK(margin_of_error(samples, 0.95) == doctest::Approx(t2 / std::sqrt(3.0)).epsilon(1e-9));
    // df = 1: t = tan(pi (p - 1/2)); {4, 6}: s = sqrt(2), n = 2.
    const double t1 = std::tan(M_PI * (0.995 - 0.5));
    CHECK(margin_of_error({4.0, 6.0}, 0.99) == doctest::Approx(t1 * std::sqrt(2.0) / std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("margin_of_error: monotone in confidence, non-negative") {
    const std::vector<double> s = {10, 11, 10, 9, 11};
    CHECK(margin_of_error(s, 0.99) > margin_of_error(s, 0.95));
    std::mt19937 rng(3);
    for (int i = 0; i < 100; ++i) {
        std::vector<double> xs(2 + rng() % 10);
        for (auto& x : xs) x = static_cast<double>(rng() % 5);
        const bool constant = std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs[0]; });
        const double moe = margin_of_error(xs, 0.9);
        CHECK(moe >= 0.0);
        CHECK((moe == 0.0) == constant);
    }
}

TEST_CASE("margin_of_error: errors") {
    CHECK_THROWS_AS(margin_of_error({1.0}, 0.95), InsufficientSamples);
    CHECK_THROWS_AS(margin_of_error({}, 0.95), InsufficientSamples);
    CHECK_THROWS_AS(margin_of_error({1.0, 2.0}, 1.0), Error);
}

// ---------------------------------------------------------------------------
// External validation

TEST_CASE("external_validate: exit codes and placeholders") {
    const fs::path out = testsupport::scratch_dir("benchvalidate");
    auto m = generate_variants({corpus_record("Gcd-1", "Gcd.java", {5, 5})}, lexicon(), out, 1);
    const auto& e = m.entries[0];
    CHECK(external_validate(e, "sh -c 'exit 0'").status == ValidationResult::Status::Passed);
    const auto failed = external_validate(e, "sh -c 'exit 1'");
    CHECK(failed.status == ValidationResult::Status::Failed);
    CHECK(failed.exit_code == 1);
    const auto err = external_validate(e, "sh -c 'exit 3'");
    CHECK(err.status == ValidationResult::Status::Error);
    CHECK(err.detail == "NonZeroExit(3)");
    CHECK_THROWS_AS(external_validate(e, "/no/such/runner {project}"), RunnerNotFound);
    CHECK_THROWS_AS(external_validate(e, "vmorph-no-such-runner {project}"), RunnerNotFound);

    // The runner sees the variant tree and writes its report where asked.
    const auto r = external_validate(e, "sh -c 'test -d \"$1\" && echo ok > \"$2\"' runner {project} {report}");
    CHECK(r.status == ValidationResult::Status::Passed);
    CHECK(testsupport::read_text(out / "Gcd-1" / "rename.validation.log") == "ok\n");

    validate_manifest(m, "sh -c 'exit 0'");
    for (const auto& x : m.entries) CHECK(x.validation->status == ValidationResult::Status::Passed);
    validate_manifest(m, "sh -c 'exit 1'", 3);
    for (const auto& x : m.entries) CHECK(x.validation->status == ValidationResult::Status::Failed);
    CHECK_THROWS_AS(validate_manifest(m, "vmorph-no-such-runner"), RunnerNotFound);
}
