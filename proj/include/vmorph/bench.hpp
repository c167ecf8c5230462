#pragma once

// Benchmark plumbing: transformed variants per vulnerability record, the
// manifest describing them, model prompts, external validation hooks and
// reporting statistics.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vmorph/ast.hpp"
#include "vmorph/errors.hpp"
#include "vmorph/identifiers.hpp"
#include "vmorph/oracle.hpp"
#include "vmorph/rename.hpp"
#include "vmorph/span.hpp"

namespace vmorph {

namespace fs = std::filesystem;

// --- records and manifests ---------------------------------------------------

enum class VariantKind { RenameOnly, StructureOnly, Both };

inline constexpr VariantKind kAllVariants[] = {VariantKind::RenameOnly, VariantKind::StructureOnly, VariantKind::Both};

// "rename", "structure", "both".
const char* to_string(VariantKind v);
VariantKind variant_kind_from_string(std::string_view s);

struct VulnRecord {
    std::string id;  // project name and bug index, e.g. "Halo-1"
    fs::path project_root;
    fs::path buggy_file;  // relative to project_root; empty means every method of the project
    std::optional<LineRange> buggy_lines;
    std::optional<std::string> cwe;
    std::optional<fs::path> developer_patch;
};

// {"source_benchmark": ..., "records": [{"id", "project_root", "buggy_file",
// "buggy_lines": "A:B", "cwe"?, "developer_patch"?}, ...]}. Relative paths
// are taken from the file's directory.
struct RecordSet {
    std::string source_benchmark;
    std::vector<VulnRecord> records;
};

RecordSet load_records(const fs::path& path);

class GenerationFailure : public Error {
public:
    GenerationFailure(const std::string& id, VariantKind variant, const std::string& cause)
        : Error(id + " (" + to_string(variant) + "): " + cause), cause_(cause) {}
    const std::string& cause() const { return cause_; }

private:
    std::string cause_;
};

struct ValidationResult {
    enum class Status { Passed, Failed, Error };
    Status status = Status::Error;
    int exit_code = 0;
    std::string detail;
};

const char* to_string(ValidationResult::Status s);

struct ManifestEntry {
    VulnRecord record;
    VariantKind variant = VariantKind::RenameOnly;
    fs::path output_root;  // transformed copy of the project
    std::optional<fs::path> dictionary;  // rename variants
    fs::path report;                     // TransformReport JSON
    fs::path variant_buggy_file;         // relative to output_root; follows a renamed class
    std::string buggy_method;            // empty in whole-project mode
    // Lines of the variant file rendering the original buggy lines.
    std::optional<LineRange> variant_buggy_lines;
    // nullopt: the buggy function is outside the oracle subset and awaits an
    // external run.
    std::optional<EquivalenceVerdict> equivalence;
    std::vector<std::string> log;
    std::optional<std::string> failure;
    std::optional<ValidationResult> validation;
};

struct BenchmarkManifest {
    std::string source_benchmark;
    std::uint64_t seed = 0;
    std::vector<ManifestEntry> entries;

    // Paths are written relative to `base`, the manifest's directory.
    std::string to_json(const fs::path& base) const;
    static BenchmarkManifest from_json(std::string_view text, const fs::path& base);
    void save(const fs::path& path) const;
    static BenchmarkManifest load(const fs::path& path);
};

struct GenerateOptions {
    std::vector<VariantKind> variants{std::begin(kAllVariants), std::end(kAllVariants)};
    std::string source_benchmark;
    int jobs = 1;  // records processed concurrently
    int trials = 100;
    const StdlibIndex* stdlib = nullptr;  // default: StdlibIndex::from_environment()
};

// Writes, per record and variant, `out_dir/<id>/<variant>/` (the transformed
// project), `<variant>.report.json` and, for rename variants,
// `<variant>.dict.json`. Both applies the structural rules to the renamed
// project with the same dictionary as RenameOnly. A failing variant is kept
// in the manifest with its cause; the others still run.
BenchmarkManifest generate_variants(const std::vector<VulnRecord>& records, const SynonymLexicon& lexicon,
                                    const fs::path& out_dir, std::uint64_t seed, const GenerateOptions& options = {});

// --- prompts -----------------------------------------------------------------

enum class PromptFormat { CodexInsert, CodeT5Mask, CodeGenPrefix, PlbartMask, IncoderMask, TunedComment };

inline constexpr PromptFormat kAllPromptFormats[] = {PromptFormat::CodexInsert, PromptFormat::CodeT5Mask,
                                                      PromptFormat::CodeGenPrefix, PromptFormat::PlbartMask,
                                                      PromptFormat::IncoderMask, PromptFormat::TunedComment};

// "codex-insert", "codet5-mask", ...
const char* to_string(PromptFormat f);
PromptFormat prompt_format_from_string(std::string_view s);

struct PromptSpec {
    PromptFormat format = PromptFormat::CodexInsert;
    int max_window = 0;  // lines; 0 means no limit
};

struct PromptBundle {
    PromptFormat format = PromptFormat::CodexInsert;
    std::string prompt;  // codex-insert: the prefix
    std::string suffix;  // codex-insert only
    std::string mask_token;  // mask formats
    std::string masked;      // mask formats: the exact text the token replaced
    bool truncated = false;

    std::string to_json() const;
};

class SpanOutsideMethod : public LocatedError {
public:
    SpanOutsideMethod(Span method, const LineRange& lines)
        : LocatedError("span outside method", std::move(method), "lines " + to_string(lines)) {}
};

// Builds the model input for the method spanning its lines in `source`.
// Every line of the result ends with '\n'.
PromptBundle build_prompt(const PromptSpec& spec, std::string_view source, const ast::MethodDecl& method,
                          const LineRange& buggy_lines);

// The method whose lines cover `lines`, or nullptr.
const ast::MethodDecl* method_containing(const ast::SourceFile& file, const LineRange& lines);

// --- statistics --------------------------------------------------------------

class InsufficientSamples : public Error {
public:
    explicit InsufficientSamples(std::size_t n)
        : Error("margin of error needs at least 2 samples, got " + std::to_string(n)) {}
};

// Half-width of the Student-t confidence interval for the mean.
double margin_of_error(const std::vector<double>& samples, double confidence);

// --- external validation -----------------------------------------------------

class RunnerNotFound : public Error {
public:
    explicit RunnerNotFound(const std::string& runner) : Error("runner not found: " + runner) {}
};

// Runs `runner_cmd` through the shell with {project} replaced by the entry's
// output root and {report} by a log path next to it. Exit 0 is passed, 1 is
// failed, anything else an error carrying NonZeroExit(code).
ValidationResult external_validate(const ManifestEntry& entry, const std::string& runner_cmd);

// Validates every successfully generated entry and records the results.
// Entries run one at a time unless jobs > 1.
void validate_manifest(BenchmarkManifest& manifest, const std::string& runner_cmd, int jobs = 1);

}  // namespace vmorph
