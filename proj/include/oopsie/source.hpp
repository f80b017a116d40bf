#pragma once

#include <string>

namespace oopsie {

// Location of a construct in an analyzed source file (1-based line/column).
struct SourceSpan {
    std::string file;
    int line = 0;
    int column = 0;

    friend bool operator==(const SourceSpan& a, const SourceSpan& b) {
        return a.file == b.file && a.line == b.line && a.column == b.column;
    }
};

} // namespace oopsie
