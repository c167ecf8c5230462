#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "vmorph/bench.hpp"
#include "vmorph/parser.hpp"
#include "vmorph/printer.hpp"
#include "vmorph/transform.hpp"

namespace vmorph {

namespace {

struct ProjectFile {
    fs::path rel;
    std::string text;
    std::optional<ast::SourceFile> ast;
};

struct Project {
    std::vector<ProjectFile> files;

    std::vector<ast::SourceFile> sources() const {
        std::vector<ast::SourceFile> out;
        for (const auto& f : files) {
            if (f.ast) out.push_back(*f.ast);
        }
        return out;
    }
};

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("cannot read " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write " + p.string());
    out << text;
}

bool is_java(const fs::path& p) { return p.extension() == ".java"; }

Project load_project(const fs::path& root, std::vector<std::string>& log) {
    if (!fs::is_directory(root)) throw Error("project root " + root.string() + " is not a directory");
    Project p;
    std::vector<fs::path> paths;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (e.is_regular_file()) paths.push_back(e.path().lexically_relative(root));
    }
    std::sort(paths.begin(), paths.end());
    for (const auto& rel : paths) {
        ProjectFile f{rel, read_file(root / rel), std::nullopt};
        if (is_java(rel)) {
            try {
                f.ast = parse(f.text, rel.generic_string());
            } catch (const Error& e) {
                log.push_back("copied verbatim: " + std::string(e.what()));
            }
        }
        p.files.push_back(std::move(f));
    }
    return p;
}

std::size_t offset_of(const std::string& text, Position pos) {
    std::size_t off = 0;
    for (int line = 1; line < pos.line; ++line) {
        off = text.find('\n', off);
        if (off == std::string::npos) throw Error("position past end of text");
        ++off;
    }
    return off + static_cast<std::size_t>(pos.col - 1);
}

Project renamed(const Project& p, const RenameDictionary& dict, const StdlibIndex& stdlib,
                std::vector<std::string>& log) {
    const RenameSites sites = rename_sites(p.sources(), dict, stdlib);
    Project out;
    for (const auto& f : p.files) {
        ProjectFile g = f;
        if (f.ast) {
            for (const auto& m : literal_mentions(*f.ast, dict)) {
                log.push_back("string literal mentions renamed '" + m.name + "' at " + to_string(m.span));
            }
            if (auto it = sites.find(f.ast->path); it != sites.end()) g.text = rename_text(f.text, it->second);
            g.rel = f.rel.parent_path() / suggested_filename(f.rel.filename().string(), dict);
            g.ast = parse(g.text, f.ast->path);
        }
        out.files.push_back(std::move(g));
    }
    return out;
}

// Methods to restructure: file index -> method indices.
using Targets = std::map<std::size_t, std::vector<std::size_t>>;

struct Structured {
    Project project;
    TransformReport report;
    std::optional<LineRange> buggy_lines;
};

Structured restructure(const Project& p, const Targets& targets, const SynonymLexicon& lexicon,
                       std::optional<LineRange> buggy) {
    Structured out{p, {}, buggy};
    for (const auto& [fi, methods] : targets) {
        ProjectFile& file = out.project.files[fi];
        const ast::SourceFile& src = *p.files[fi].ast;
        const auto decls = src.methods();
        struct Edit {
            std::size_t begin, end;
            std::string text;
        };
        std::vector<Edit> edits;
        for (std::size_t mi : methods) {
            const ast::MethodDecl& m = *decls[mi];
            TransformContext ctx = make_context(m, &src, &lexicon);
            auto [result, report] = apply_all(m, ctx);
            out.report.append(report);
            if (report.applied.empty()) continue;
            result.comments.clear();
            const std::size_t begin = offset_of(file.text, m.span.start);
            const std::size_t line_begin = begin - static_cast<std::size_t>(m.span.start.col - 1);
            std::string indent = file.text.substr(line_begin, begin - line_begin);
            if (indent.find_first_not_of(" \t") != std::string::npos) indent.clear();
            LineOrigins origins;
            std::string printed = print_method(result, indent, &origins);
            printed.erase(0, indent.size());
            edits.push_back({begin, offset_of(file.text, m.span.end), std::move(printed)});
            if (buggy && m.span.overlaps_lines(buggy->first, buggy->last)) {
                std::optional<LineRange> lines;
                for (std::size_t i = 0; i < origins.size(); ++i) {
                    if (!origins[i] || !origins[i]->overlaps_lines(buggy->first, buggy->last)) continue;
                    const int line = m.span.start.line + static_cast<int>(i);
                    if (!lines) lines = LineRange{line, line};
                    lines->first = std::min(lines->first, line);
                    lines->last = std::max(lines->last, line);
                }
                out.buggy_lines = lines;
            }
        }
        std::sort(edits.begin(), edits.end(), [](const Edit& a, const Edit& b) { return a.begin > b.begin; });
        for (const auto& e : edits) file.text.replace(e.begin, e.end - e.begin, e.text);
        if (!edits.empty()) file.ast = parse(file.text, src.path);
    }
    return out;
}

// Pairwise over the target methods, matched by position in their file.
std::optional<EquivalenceVerdict> compare(const Project& a, const Project& b, const Targets& targets,
                                          std::uint64_t seed, int trials, std::vector<std::string>& log) {
    std::optional<EquivalenceVerdict> total;
    for (const auto& [fi, methods] : targets) {
        const ast::SourceFile& fa = *a.files[fi].ast;
        const ast::SourceFile& fb = *b.files[fi].ast;
        const auto ma = fa.methods();
        const auto mb = fb.methods();
        for (std::size_t mi : methods) {
            const ast::MethodDecl& x = *ma[mi];
            const ast::MethodDecl& y = *mb[mi];
            EquivalenceVerdict v;
            try {
                v = check_equivalence({&x, &fa}, {&y, &fb}, trials, seed);
            } catch (const UnsupportedForEvaluation& e) {
                log.push_back("external-pending: " + fa.path + ": " + x.name + ": " + e.detail());
                continue;
            }
            if (!total) total = EquivalenceVerdict{Verdict::Equivalent, 0, 0, std::nullopt};
            total->trials += v.trials;
            total->inconclusive_trials += v.inconclusive_trials;
            if (v.verdict == Verdict::Diverged && total->verdict != Verdict::Diverged) {
                total->verdict = Verdict::Diverged;
                total->counterexample = v.counterexample;
                log.push_back("diverged: " + fa.path + ": " + x.name);
            } else if (v.verdict == Verdict::Inconclusive && total->verdict == Verdict::Equivalent) {
                total->verdict = Verdict::Inconclusive;
            }
        }
    }
    return total;
}

void write_project(const Project& p, const fs::path& root) {
    fs::remove_all(root);
    fs::create_directories(root);
    for (const auto& f : p.files) write_file(root / f.rel, f.text);
}

std::string safe_component(const std::string& id) {
    std::string out = id;
    for (auto& c : out) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.') c = '_';
    }
    return out.empty() ? "_" : out;
}

std::vector<ManifestEntry> process(const VulnRecord& record, const SynonymLexicon& lexicon, const fs::path& out_dir,
                                   std::uint64_t seed, const GenerateOptions& options, const StdlibIndex& stdlib) {
    std::vector<ManifestEntry> entries;
    const fs::path base = out_dir / safe_component(record.id);
    for (VariantKind v : options.variants) {
        ManifestEntry e;
        e.record = record;
        e.variant = v;
        e.output_root = base / to_string(v);
        e.report = base / (std::string(to_string(v)) + ".report.json");
        e.variant_buggy_file = record.buggy_file;
        e.variant_buggy_lines = record.buggy_lines;
        entries.push_back(std::move(e));
    }

    std::vector<std::string> setup_log;
    Project original;
    Targets targets;
    try {
        original = load_project(record.project_root, setup_log);
        if (record.buggy_file.empty()) {
            for (std::size_t fi = 0; fi < original.files.size(); ++fi) {
                if (!original.files[fi].ast) continue;
                const std::size_t n = original.files[fi].ast->methods().size();
                for (std::size_t mi = 0; mi < n; ++mi) targets[fi].push_back(mi);
            }
        } else {
            const auto it = std::find_if(original.files.begin(), original.files.end(),
                                         [&](const ProjectFile& f) { return f.rel == record.buggy_file.lexically_normal(); });
            if (it == original.files.end()) throw Error("buggy file " + record.buggy_file.generic_string() + " not found");
            if (!it->ast) throw Error("buggy file " + record.buggy_file.generic_string() + " does not parse");
            if (!record.buggy_lines) throw Error("record has a buggy file but no buggy lines");
            const auto methods = it->ast->methods();
            const ast::MethodDecl* m = method_containing(*it->ast, *record.buggy_lines);
            if (!m) throw Error("buggy lines " + to_string(*record.buggy_lines) + " are not inside one method");
            const std::size_t mi = static_cast<std::size_t>(std::find(methods.begin(), methods.end(), m) - methods.begin());
            targets[static_cast<std::size_t>(it - original.files.begin())].push_back(mi);
            for (auto& e : entries) e.buggy_method = m->name;
        }
    } catch (const std::exception& ex) {
        for (auto& e : entries) e.failure = GenerationFailure(record.id, e.variant, ex.what()).what();
        return entries;
    }

    // The plan is shared by both rename variants.
    std::optional<RenameDictionary> dict;
    std::optional<Project> renamed_project;
    std::vector<std::string> rename_log;
    std::optional<std::string> rename_error;
    auto ensure_renamed = [&]() {
        if (dict || rename_error) return;
        try {
            RenameOptions ro;
            ro.stdlib = &stdlib;
            const auto table = analyze_identifiers(original.sources(), stdlib);
            dict = build_rename_plan(table, lexicon, ro);
            renamed_project = renamed(original, *dict, stdlib, rename_log);
        } catch (const std::exception& ex) {
            rename_error = ex.what();
        }
    };

    for (auto& e : entries) {
        e.log = setup_log;
        try {
            const Project* result = &original;
            Structured structured;
            TransformReport report;
            if (e.variant != VariantKind::StructureOnly) {
                ensure_renamed();
                if (rename_error) throw Error(*rename_error);
                e.log.insert(e.log.end(), rename_log.begin(), rename_log.end());
                result = &*renamed_project;
                const fs::path dict_path = base / (std::string(to_string(e.variant)) + ".dict.json");
                fs::create_directories(base);
                dict->save(dict_path.string());
                e.dictionary = dict_path;
                if (!record.buggy_file.empty()) {
                    const auto idx = targets.begin()->first;
                    e.variant_buggy_file = renamed_project->files[idx].rel;
                }
            }
            if (e.variant != VariantKind::RenameOnly) {
                structured = restructure(*result, targets, lexicon, record.buggy_lines);
                report = structured.report;
                e.variant_buggy_lines = structured.buggy_lines;
                result = &structured.project;
            }
            e.equivalence = compare(original, *result, targets, seed, options.trials, e.log);
            write_project(*result, e.output_root);
            fs::create_directories(e.report.parent_path());
            std::ofstream(e.report, std::ios::binary) << report.to_json() << "\n";
        } catch (const std::exception& ex) {
            e.failure = GenerationFailure(record.id, e.variant, ex.what()).what();
        }
    }
    return entries;
}

}  // namespace

const ast::MethodDecl* method_containing(const ast::SourceFile& file, const LineRange& lines) {
    for (const auto* m : file.methods()) {
        if (m->span.start.line <= lines.first && lines.last <= m->span.end.line) return m;
    }
    return nullptr;
}

BenchmarkManifest generate_variants(const std::vector<VulnRecord>& records, const SynonymLexicon& lexicon,
                                    const fs::path& out_dir, std::uint64_t seed, const GenerateOptions& options) {
    const StdlibIndex fallback = options.stdlib ? StdlibIndex{} : StdlibIndex::from_environment();
    const StdlibIndex& stdlib = options.stdlib ? *options.stdlib : fallback;

    std::vector<std::vector<ManifestEntry>> per_record(records.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < records.size(); i = next++) {
            per_record[i] = process(records[i], lexicon, out_dir, seed, options, stdlib);
        }
    };
    const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(records.size())));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    BenchmarkManifest manifest;
    manifest.source_benchmark = options.source_benchmark;
    manifest.seed = seed;
    for (auto& entries : per_record) {
        for (auto& e : entries) manifest.entries.push_back(std::move(e));
    }
    return manifest;
}

}  // namespace vmorph
