#pragma once

#include <compare>
#include <string>

namespace vmorph {

struct Position {
    int line = 1;
    int col = 1;

    auto operator<=>(const Position&) const = default;
};

// Source range with 1-based lines and columns. `end` is exclusive: it names
// the column just past the last character of the range.
struct Span {
    std::string file;
    Position start;
    Position end;

    bool contains(const Span& other) const {
        return other.start >= start && other.end <= end;
    }
    bool overlaps_lines(int first, int last) const {
        return start.line <= last && end.line >= first;
    }
    bool empty() const { return start == end; }

    auto operator<=>(const Span&) const = default;
};

inline Span join(const Span& a, const Span& b) {
    return Span{a.file, a.start < b.start ? a.start : b.start, a.end > b.end ? a.end : b.end};
}

std::string to_string(const Span& span);

// Inclusive 1-based line range, the unit used for buggy-line annotations.
struct LineRange {
    int first = 1;
    int last = 1;

    int size() const { return last - first + 1; }
    bool contains(int line) const { return line >= first && line <= last; }
    auto operator<=>(const LineRange&) const = default;
};

// Parses "A:B" (or a single "A"). Throws std::invalid_argument on bad input.
LineRange parse_line_range(const std::string& text);
std::string to_string(const LineRange& range);

}  // namespace vmorph
