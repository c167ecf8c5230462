#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "vmorph/ast.hpp"
#include "vmorph/parser.hpp"

namespace testsupport {

inline std::filesystem::path fixture_dir() { return VMORPH_FIXTURE_DIR; }
inline std::filesystem::path data_dir() { return VMORPH_DATA_DIR; }

inline std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
    std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    out << text;
}

// Every *.java file under `dir`, sorted.
inline std::vector<std::filesystem::path> java_files(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().extension() == ".java") out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline vmorph::ast::SourceFile parse_file(const std::filesystem::path& p) {
    return vmorph::parse(read_text(p), p.generic_string());
}

inline std::vector<vmorph::ast::SourceFile> parse_tree(const std::filesystem::path& dir) {
    std::vector<vmorph::ast::SourceFile> out;
    for (const auto& p : java_files(dir)) out.push_back(parse_file(p));
    return out;
}

// Test-local fresh scratch directory under the build tree.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto p = std::filesystem::current_path() / "scratch" / name;
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace testsupport
