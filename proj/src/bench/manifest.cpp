#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "vmorph/bench.hpp"

namespace vmorph {

using nlohmann::json;

const char* to_string(VariantKind v) {
    switch (v) {
        case VariantKind::RenameOnly: return "rename";
        case VariantKind::StructureOnly: return "structure";
        case VariantKind::Both: return "both";
    }
    return "";
}

VariantKind variant_kind_from_string(std::string_view s) {
    for (VariantKind v : kAllVariants) {
        if (s == to_string(v)) return v;
    }
    throw Error("unknown variant '" + std::string(s) + "'");
}

const char* to_string(ValidationResult::Status s) {
    switch (s) {
        case ValidationResult::Status::Passed: return "passed";
        case ValidationResult::Status::Failed: return "failed";
        case ValidationResult::Status::Error: return "error";
    }
    return "";
}

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("cannot read " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path absolute_under(const fs::path& base, const fs::path& p) {
    return (p.is_absolute() ? p : base / p).lexically_normal();
}

std::string relative_to(const fs::path& base, const fs::path& p) {
    const fs::path abs_base = fs::absolute(base).lexically_normal();
    const fs::path abs_p = fs::absolute(p).lexically_normal();
    return abs_p.lexically_relative(abs_base).generic_string();
}

ValidationResult::Status status_from_string(const std::string& s) {
    for (auto st : {ValidationResult::Status::Passed, ValidationResult::Status::Failed, ValidationResult::Status::Error}) {
        if (s == to_string(st)) return st;
    }
    throw Error("unknown validation status '" + s + "'");
}

VulnRecord record_from_json(const json& j, const fs::path& base) {
    VulnRecord r;
    r.id = j.at("id").get<std::string>();
    r.project_root = absolute_under(base, j.at("project_root").get<std::string>());
    if (j.contains("buggy_file") && !j["buggy_file"].is_null()) r.buggy_file = j["buggy_file"].get<std::string>();
    if (j.contains("buggy_lines") && !j["buggy_lines"].is_null()) {
        r.buggy_lines = parse_line_range(j["buggy_lines"].get<std::string>());
    }
    if (j.contains("cwe") && !j["cwe"].is_null()) r.cwe = j["cwe"].get<std::string>();
    if (j.contains("developer_patch") && !j["developer_patch"].is_null()) {
        r.developer_patch = absolute_under(base, j["developer_patch"].get<std::string>());
    }
    return r;
}

void record_to_json(const VulnRecord& r, const fs::path& base, json& j) {
    j["id"] = r.id;
    j["project_root"] = relative_to(base, r.project_root);
    j["buggy_file"] = r.buggy_file.generic_string();
    j["buggy_lines"] = r.buggy_lines ? json(to_string(*r.buggy_lines)) : json(nullptr);
    if (r.cwe) j["cwe"] = *r.cwe;
    if (r.developer_patch) j["developer_patch"] = relative_to(base, *r.developer_patch);
}

}  // namespace

RecordSet load_records(const fs::path& path) {
    const json j = json::parse(read_file(path));
    const fs::path base = fs::absolute(path).parent_path();
    RecordSet out;
    out.source_benchmark = j.value("source_benchmark", "");
    std::set<std::string> ids;
    for (const auto& r : j.at("records")) {
        out.records.push_back(record_from_json(r, base));
        if (!ids.insert(out.records.back().id).second) throw Error("duplicate record id '" + out.records.back().id + "'");
    }
    return out;
}

std::string BenchmarkManifest::to_json(const fs::path& base) const {
    json j;
    j["source_benchmark"] = source_benchmark;
    j["seed"] = seed;
    j["entries"] = json::array();
    for (const auto& e : entries) {
        json x;
        record_to_json(e.record, base, x);
        x["variant"] = to_string(e.variant);
        x["output_root"] = relative_to(base, e.output_root);
        x["dictionary"] = e.dictionary ? json(relative_to(base, *e.dictionary)) : json(nullptr);
        x["report"] = relative_to(base, e.report);
        x["variant_buggy_file"] = e.variant_buggy_file.generic_string();
        x["buggy_method"] = e.buggy_method;
        x["variant_buggy_lines"] = e.variant_buggy_lines ? json(to_string(*e.variant_buggy_lines)) : json(nullptr);
        x["equivalence"] = e.equivalence ? json::parse(e.equivalence->to_json()) : json("external-pending");
        x["log"] = e.log;
        if (e.failure) x["failure"] = *e.failure;
        if (e.validation) {
            x["validation"] = {{"status", to_string(e.validation->status)},
                               {"exit_code", e.validation->exit_code},
                               {"detail", e.validation->detail}};
        }
        j["entries"].push_back(std::move(x));
    }
    return j.dump(2) + "\n";
}

BenchmarkManifest BenchmarkManifest::from_json(std::string_view text, const fs::path& base) {
    const json j = json::parse(text);
    BenchmarkManifest m;
    m.source_benchmark = j.value("source_benchmark", "");
    m.seed = j.value("seed", std::uint64_t{0});
    for (const auto& x : j.at("entries")) {
        ManifestEntry e;
        e.record = record_from_json(x, base);
        e.variant = variant_kind_from_string(x.at("variant").get<std::string>());
        e.output_root = absolute_under(base, x.at("output_root").get<std::string>());
        if (!x.at("dictionary").is_null()) e.dictionary = absolute_under(base, x["dictionary"].get<std::string>());
        e.report = absolute_under(base, x.at("report").get<std::string>());
        e.variant_buggy_file = x.value("variant_buggy_file", "");
        e.buggy_method = x.value("buggy_method", "");
        if (x.contains("variant_buggy_lines") && !x["variant_buggy_lines"].is_null()) {
            e.variant_buggy_lines = parse_line_range(x["variant_buggy_lines"].get<std::string>());
        }
        if (x.at("equivalence").is_object()) e.equivalence = EquivalenceVerdict::from_json(x["equivalence"].dump());
        e.log = x.value("log", std::vector<std::string>{});
        if (x.contains("failure")) e.failure = x["failure"].get<std::string>();
        if (x.contains("validation")) {
            const auto& v = x["validation"];
            e.validation = ValidationResult{status_from_string(v.at("status").get<std::string>()),
                                            v.at("exit_code").get<int>(), v.value("detail", "")};
        }
        m.entries.push_back(std::move(e));
    }
    return m;
}

void BenchmarkManifest::save(const fs::path& path) const {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << to_json(fs::absolute(path).parent_path());
}

BenchmarkManifest BenchmarkManifest::load(const fs::path& path) {
    return from_json(read_file(path), fs::absolute(path).parent_path());
}

}  // namespace vmorph
