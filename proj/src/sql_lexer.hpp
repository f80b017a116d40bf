#pragma once

// Token scanner shared by the DDL loader and the SQL statement parser.
// SQL string literals use single quotes with '' as the escape; `--`
// comments run to end of line.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace oopsie::sqllex {

enum class TokKind {
    Ident,
    Number,   // integer or decimal literal
    String,   // contents without quotes, '' unescaped
    Punct,    // one of ( ) , ; * ? . = plus <> <= >= < > + - /
    End,
};

struct Token {
    TokKind kind = TokKind::End;
    std::string text;      // identifier text as written / literal / punct
    std::size_t position = 0;
};

inline bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

inline bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Returns tokens plus a trailing End token. On an unterminated string or a
// stray character the caller sees a Punct token with the offending char so
// it can report a syntax error at that position.
inline std::vector<Token> scan(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '-' && i + 1 < n && text[i + 1] == '-') {
            while (i < n && text[i] != '\n') ++i;
            continue;
        }
        if (is_ident_start(c)) {
            std::size_t start = i;
            while (i < n && is_ident_char(text[i])) ++i;
            out.push_back({TokKind::Ident, std::string(text.substr(start, i - start)), start});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i;
            while (i < n && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.')) ++i;
            out.push_back({TokKind::Number, std::string(text.substr(start, i - start)), start});
            continue;
        }
        if (c == '\'') {
            std::size_t start = i;
            ++i;
            std::string value;
            bool closed = false;
            while (i < n) {
                if (text[i] == '\'') {
                    if (i + 1 < n && text[i + 1] == '\'') {
                        value.push_back('\'');
                        i += 2;
                        continue;
                    }
                    ++i;
                    closed = true;
                    break;
                }
                value.push_back(text[i]);
                ++i;
            }
            if (!closed) {
                out.push_back({TokKind::Punct, "'", start});
                continue;
            }
            out.push_back({TokKind::String, std::move(value), start});
            continue;
        }
        // two-character comparison operators
        if ((c == '<' && i + 1 < n && (text[i + 1] == '=' || text[i + 1] == '>')) ||
            (c == '>' && i + 1 < n && text[i + 1] == '=')) {
            out.push_back({TokKind::Punct, std::string(text.substr(i, 2)), i});
            i += 2;
            continue;
        }
        out.push_back({TokKind::Punct, std::string(1, c), i});
        ++i;
    }
    out.push_back({TokKind::End, "", n});
    return out;
}

// Number of `?` tokens outside string literals; tolerant of any input.
inline int count_placeholders(std::string_view text) {
    int count = 0;
    bool in_string = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_string) {
            if (c == '\'') {
                if (i + 1 < text.size() && text[i + 1] == '\'') {
                    ++i;
                } else {
                    in_string = false;
                }
            }
            continue;
        }
        if (c == '\'') {
            in_string = true;
        } else if (c == '?') {
            ++count;
        }
    }
    return count;
}

} // namespace oopsie::sqllex
