#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "vmorph/bench.hpp"
#include "vmorph/parser.hpp"
#include "vmorph/rename.hpp"

namespace fs = std::filesystem;
using namespace vmorph;

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("cannot read " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TransformArgs {
    std::string mode = "all";
    std::string project;
    std::string records;
    std::string out;
    std::string lexicon;
    std::string manifest;
    std::uint64_t seed = 0;
    int jobs = 1;
    int trials = 100;
};

int run_transform(const TransformArgs& a) {
    GenerateOptions options;
    if (a.mode == "all") {
        options.variants.assign(std::begin(kAllVariants), std::end(kAllVariants));
    } else {
        options.variants = {variant_kind_from_string(a.mode)};
    }
    options.jobs = a.jobs;
    options.trials = a.trials;

    std::vector<VulnRecord> records;
    if (!a.records.empty()) {
        RecordSet set = load_records(a.records);
        options.source_benchmark = set.source_benchmark;
        records = std::move(set.records);
    } else {
        // Whole project as one record: every method is a target.
        VulnRecord r;
        const fs::path root = fs::absolute(a.project).lexically_normal();
        r.project_root = root;
        r.id = (root.has_filename() ? root.filename() : root.parent_path().filename()).string();
        options.source_benchmark = r.id;
        records.push_back(std::move(r));
    }

    const SynonymLexicon lexicon = a.lexicon.empty() ? SynonymLexicon::bundled() : SynonymLexicon::load(a.lexicon);
    const StdlibIndex stdlib = StdlibIndex::from_environment();
    options.stdlib = &stdlib;

    const BenchmarkManifest manifest = generate_variants(records, lexicon, a.out, a.seed, options);
    const fs::path manifest_path = a.manifest.empty() ? fs::path(a.out) / "manifest.json" : fs::path(a.manifest);
    manifest.save(manifest_path);

    std::size_t failed = 0, pending = 0, diverged = 0;
    for (const auto& e : manifest.entries) {
        if (e.failure) {
            ++failed;
            std::cerr << e.record.id << " (" << to_string(e.variant) << "): " << *e.failure << "\n";
        } else if (!e.equivalence) {
            ++pending;
        } else if (e.equivalence->verdict == Verdict::Diverged) {
            ++diverged;
            std::cerr << e.record.id << " (" << to_string(e.variant) << "): diverged\n";
        }
    }
    std::cout << manifest.entries.size() << " entries, " << failed << " failed, " << diverged << " diverged, "
              << pending << " external-pending -> " << manifest_path.string() << "\n";
    return failed == 0 && diverged == 0 ? 0 : 1;
}

int run_prompt(const std::string& format, const std::string& file, const std::string& lines, int max_window) {
    PromptSpec spec;
    spec.format = prompt_format_from_string(format);
    spec.max_window = max_window;
    const LineRange range = parse_line_range(lines);
    const std::string text = read_file(file);
    const ast::SourceFile src = parse(text, file);
    const ast::MethodDecl* method = method_containing(src, range);
    if (!method) {
        for (const auto* m : src.methods()) {
            if (m->span.overlaps_lines(range.first, range.last)) method = m;
        }
    }
    if (!method) throw Error("no method in " + file + " covers lines " + to_string(range));
    std::cout << build_prompt(spec, text, *method, range).to_json();
    return 0;
}

int run_recover(const std::string& dict, const std::string& patch) {
    std::cout << recover_patch(read_file(patch), RenameDictionary::load(dict));
    return 0;
}

int run_validate(const std::string& manifest_path, const std::string& runner, int jobs) {
    BenchmarkManifest manifest = BenchmarkManifest::load(manifest_path);
    validate_manifest(manifest, runner, jobs);
    manifest.save(manifest_path);
    int counts[3] = {0, 0, 0};
    for (const auto& e : manifest.entries) {
        if (!e.validation) continue;
        ++counts[static_cast<int>(e.validation->status)];
        std::cout << e.record.id << " " << to_string(e.variant) << " " << to_string(e.validation->status);
        if (!e.validation->detail.empty()) std::cout << " " << e.validation->detail;
        std::cout << "\n";
    }
    std::cout << counts[0] << " passed, " << counts[1] << " failed, " << counts[2] << " error\n";
    return counts[2] == 0 ? 0 : 1;
}

int run_moe(double confidence) {
    std::vector<double> samples;
    std::string token;
    while (std::cin >> token) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size()) throw Error("not a number: '" + token + "'");
        samples.push_back(v);
    }
    std::cout.precision(17);
    std::cout << margin_of_error(samples, confidence) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vmorph: semantics-preserving transformations for Java vulnerability benchmarks"};
    app.require_subcommand(1);

    TransformArgs targs;
    auto* transform = app.add_subcommand("transform", "Generate transformed variants and a manifest");
    transform->add_option("--mode", targs.mode, "rename, structure, both or all")
        ->check(CLI::IsMember({"rename", "structure", "both", "all"}));
    auto* project_opt = transform->add_option("--project", targs.project, "Project root (one whole-project record)");
    auto* records_opt = transform->add_option("--records", targs.records, "Record set JSON")->check(CLI::ExistingFile);
    project_opt->excludes(records_opt)->check(CLI::ExistingDirectory);
    transform->add_option("--out", targs.out, "Output directory")->required();
    transform->add_option("--lexicon", targs.lexicon, "Synonym lexicon TSV (default: bundled)")
        ->check(CLI::ExistingFile);
    transform->add_option("--seed", targs.seed, "Seed for renaming and equivalence trials");
    transform->add_option("--manifest", targs.manifest, "Manifest path (default: OUT/manifest.json)");
    transform->add_option("--jobs", targs.jobs, "Records processed concurrently")->check(CLI::PositiveNumber);
    transform->add_option("--trials", targs.trials, "Equivalence trials per method")->check(CLI::PositiveNumber);

    std::string format, file, lines;
    int max_window = 0;
    auto* prompt = app.add_subcommand("prompt", "Build a model prompt for buggy lines");
    prompt->add_option("--format", format, "Prompt format")->required();
    prompt->add_option("--file", file, "Java source file")->required()->check(CLI::ExistingFile);
    prompt->add_option("--lines", lines, "Buggy lines A:B")->required();
    prompt->add_option("--max-window", max_window, "Line budget, 0 for none")->check(CLI::NonNegativeNumber);

    std::string dict, patch;
    auto* recover = app.add_subcommand("recover", "Map a patch on renamed code back to original names");
    recover->add_option("--dict", dict, "Rename dictionary JSON")->required()->check(CLI::ExistingFile);
    recover->add_option("--patch", patch, "Patch file")->required()->check(CLI::ExistingFile);

    std::string manifest_path, runner;
    int validate_jobs = 1;
    auto* validate = app.add_subcommand("validate", "Run an external test command on every variant");
    validate->add_option("--manifest", manifest_path, "Manifest JSON")->required()->check(CLI::ExistingFile);
    validate->add_option("--runner", runner, "Command with {project} and {report} placeholders")->required();
    validate->add_option("--jobs", validate_jobs, "Concurrent runs")->check(CLI::PositiveNumber);

    double confidence = 0.95;
    auto* stats = app.add_subcommand("stats", "Reporting statistics");
    stats->require_subcommand(1);
    auto* moe = stats->add_subcommand("moe", "Margin of error of samples read from stdin");
    moe->add_option("--confidence", confidence, "Confidence level in (0,1)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*transform) {
            if (targs.project.empty() && targs.records.empty()) throw Error("transform needs --project or --records");
            return run_transform(targs);
        }
        if (*prompt) return run_prompt(format, file, lines, max_window);
        if (*recover) return run_recover(dict, patch);
        if (*validate) return run_validate(manifest_path, runner, validate_jobs);
        if (*moe) return run_moe(confidence);
    } catch (const std::exception& e) {
        std::cerr << "vmorph: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
