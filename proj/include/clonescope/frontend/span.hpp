#pragma once

#include <string>

namespace clonescope {

/// 1-based, inclusive source range. `end_col` is the column of the last
/// character covered, so a one-character token has start_col == end_col.
struct SourceSpan {
    int start_line = 1;
    int start_col = 1;
    int end_line = 1;
    int end_col = 1;

    bool operator==(const SourceSpan&) const = default;

    bool contains(const SourceSpan& inner) const noexcept {
        auto before = [](int l1, int c1, int l2, int c2) { return l1 < l2 || (l1 == l2 && c1 <= c2); };
        return before(start_line, start_col, inner.start_line, inner.start_col) &&
               before(inner.end_line, inner.end_col, end_line, end_col);
    }

    bool valid() const noexcept {
        return start_line <= end_line && (start_line != end_line || start_col <= end_col);
    }

    static SourceSpan cover(const SourceSpan& first, const SourceSpan& last) noexcept {
        return {first.start_line, first.start_col, last.end_line, last.end_col};
    }

    std::string to_string() const {
        return std::to_string(start_line) + ":" + std::to_string(start_col) + "-" +
               std::to_string(end_line) + ":" + std::to_string(end_col);
    }
};

}  // namespace clonescope
