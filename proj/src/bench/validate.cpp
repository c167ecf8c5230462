#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "vmorph/bench.hpp"

namespace vmorph {

namespace {

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') {
            out += "'\\''";
        } else {
            out += c;
        }
    }
    return out + "'";
}

std::string replace_all(std::string text, const std::string& from, const std::string& to) {
    for (std::size_t pos = text.find(from); pos != std::string::npos; pos = text.find(from, pos + to.size())) {
        text.replace(pos, from.size(), to);
    }
    return text;
}

bool executable(const fs::path& p) { return fs::is_regular_file(p) && ::access(p.c_str(), X_OK) == 0; }

void require_runner(const std::string& runner_cmd) {
    std::istringstream in(runner_cmd);
    std::string program;
    in >> program;
    if (program.empty()) throw RunnerNotFound("(empty command)");
    if (program.find('/') != std::string::npos) {
        if (!executable(program)) throw RunnerNotFound(program);
        return;
    }
    const char* path = std::getenv("PATH");
    std::istringstream dirs(path ? path : "");
    for (std::string dir; std::getline(dirs, dir, ':');) {
        if (executable(fs::path(dir.empty() ? "." : dir) / program)) return;
    }
    throw RunnerNotFound(program);
}

fs::path report_path(const ManifestEntry& e) {
    return e.output_root.parent_path() / (std::string(to_string(e.variant)) + ".validation.log");
}

}  // namespace

ValidationResult external_validate(const ManifestEntry& entry, const std::string& runner_cmd) {
    require_runner(runner_cmd);
    std::string cmd = replace_all(runner_cmd, "{project}", shell_quote(fs::absolute(entry.output_root).string()));
    cmd = replace_all(cmd, "{report}", shell_quote(fs::absolute(report_path(entry)).string()));
    const int raw = std::system(cmd.c_str());
    if (raw == -1) throw Error("could not start shell for: " + cmd);
    if (!WIFEXITED(raw)) return {ValidationResult::Status::Error, -1, "terminated by a signal"};
    const int code = WEXITSTATUS(raw);
    if (code == 127) throw RunnerNotFound(runner_cmd);
    if (code == 0) return {ValidationResult::Status::Passed, 0, ""};
    if (code == 1) return {ValidationResult::Status::Failed, 1, ""};
    return {ValidationResult::Status::Error, code, "NonZeroExit(" + std::to_string(code) + ")"};
}

void validate_manifest(BenchmarkManifest& manifest, const std::string& runner_cmd, int jobs) {
    require_runner(runner_cmd);
    std::vector<ManifestEntry*> todo;
    for (auto& e : manifest.entries) {
        if (!e.failure) todo.push_back(&e);
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < todo.size(); i = next++) {
            try {
                todo[i]->validation = external_validate(*todo[i], runner_cmd);
            } catch (const std::exception& ex) {
                todo[i]->validation = ValidationResult{ValidationResult::Status::Error, -1, ex.what()};
            }
        }
    };
    const int n = std::max(1, std::min<int>(jobs, static_cast<int>(todo.size())));
    if (n == 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    for (int j = 0; j < n; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

}  // namespace vmorph
