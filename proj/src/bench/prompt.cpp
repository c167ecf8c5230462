#include "json.hpp"
#include "vmorph/bench.hpp"

namespace vmorph {

const char* to_string(PromptFormat f) {
    switch (f) {
        case PromptFormat::CodexInsert: return "codex-insert";
        case PromptFormat::CodeT5Mask: return "codet5-mask";
        case PromptFormat::CodeGenPrefix: return "codegen-prefix";
        case PromptFormat::PlbartMask: return "plbart-mask";
        case PromptFormat::IncoderMask: return "incoder-mask";
        case PromptFormat::TunedComment: return "tuned-comment";
    }
    return "";
}

PromptFormat prompt_format_from_string(std::string_view s) {
    for (PromptFormat f : kAllPromptFormats) {
        if (s == to_string(f)) return f;
    }
    throw Error("unknown prompt format '" + std::string(s) + "'");
}

std::string PromptBundle::to_json() const {
    nlohmann::json j;
    j["format"] = vmorph::to_string(format);
    j["prompt"] = prompt;
    if (format == PromptFormat::CodexInsert) j["suffix"] = suffix;
    if (!mask_token.empty()) {
        j["mask_token"] = mask_token;
        j["masked"] = masked;
    }
    j["truncated"] = truncated;
    return j.dump(2) + "\n";
}

namespace {

using Lines = std::vector<std::string>;

Lines split_lines(std::string_view text) {
    Lines out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            if (pos < text.size()) out.emplace_back(text.substr(pos));
            break;
        }
        out.emplace_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return out;
}

std::string leading_ws(const std::string& line) { return line.substr(0, line.find_first_not_of(" \t")); }

// `line` without up to `indent.size()` leading whitespace characters.
std::string dedent(const std::string& line, const std::string& indent) {
    std::size_t n = 0;
    while (n < indent.size() && n < line.size() && (line[n] == ' ' || line[n] == '\t')) ++n;
    return line.substr(n);
}

std::string join(const Lines& lines) {
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
}

const char* mask_token(PromptFormat f) {
    switch (f) {
        case PromptFormat::CodeT5Mask: return "<extra_id_0>";
        case PromptFormat::PlbartMask:
        case PromptFormat::IncoderMask: return "<mask>";
        default: return "";
    }
}

}  // namespace

PromptBundle build_prompt(const PromptSpec& spec, std::string_view source, const ast::MethodDecl& method,
                          const LineRange& buggy_lines) {
    const int ms = method.span.start.line;
    const int me = method.span.end.line;
    if (buggy_lines.first < ms || buggy_lines.last > me || buggy_lines.first > buggy_lines.last) {
        throw SpanOutsideMethod(method.span, buggy_lines);
    }
    const Lines all = split_lines(source);
    if (me > static_cast<int>(all.size())) throw Error("method extends past the end of the source text");
    auto slice = [&](int first, int last) {
        Lines out;
        for (int i = first; i <= last; ++i) out.push_back(all[static_cast<std::size_t>(i - 1)]);
        return out;
    };
    Lines before = slice(ms, buggy_lines.first - 1);
    const Lines bug = slice(buggy_lines.first, buggy_lines.last);
    Lines after = slice(buggy_lines.last + 1, me);
    const std::string indent = leading_ws(bug.front());

    PromptBundle out;
    out.format = spec.format;
    Lines region;
    switch (spec.format) {
        case PromptFormat::CodexInsert:
            region.push_back(indent + "/* BUG:");
            for (const auto& l : bug) region.push_back(indent + " * " + dedent(l, indent));
            region.push_back(indent + " * FIXED:");
            region.push_back(indent + " */");
            break;
        case PromptFormat::CodeT5Mask:
        case PromptFormat::PlbartMask:
        case PromptFormat::IncoderMask: {
            out.mask_token = mask_token(spec.format);
            region.push_back(indent + out.mask_token);
            out.masked = dedent(bug.front(), indent);
            for (std::size_t i = 1; i < bug.size(); ++i) out.masked += "\n" + bug[i];
            break;
        }
        case PromptFormat::CodeGenPrefix: after.clear(); break;
        case PromptFormat::TunedComment:
            for (const auto& l : bug) {
                const std::string ws = leading_ws(l);
                const std::string code = l.substr(ws.size());
                region.push_back(ws + "// buggy line:" + (code.empty() ? "" : " " + code));
            }
            break;
    }

    // Keep the region and an even share of context on each side; a side
    // that runs out gives its share to the other.
    const std::size_t total = before.size() + region.size() + after.size();
    if (spec.max_window > 0 && total > static_cast<std::size_t>(spec.max_window)) {
        out.truncated = true;
        const std::size_t budget =
            static_cast<std::size_t>(spec.max_window) > region.size() ? spec.max_window - region.size() : 0;
        std::size_t keep_before = std::min(before.size(), budget / 2 + budget % 2);
        std::size_t keep_after = std::min(after.size(), budget - keep_before);
        keep_before = std::min(before.size(), budget - keep_after);
        before.erase(before.begin(), before.end() - static_cast<std::ptrdiff_t>(keep_before));
        after.resize(keep_after);
    }

    if (spec.format == PromptFormat::CodexInsert) {
        out.prompt = join(before) + join(region);
        out.suffix = join(after);
    } else {
        out.prompt = join(before) + join(region) + join(after);
    }
    return out;
}

}  // namespace vmorph
