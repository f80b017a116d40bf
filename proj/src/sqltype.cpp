#include "oopsie/sqltype.hpp"

#include <cctype>

namespace oopsie {

namespace {

[[noreturn]] void fail_anno(std::size_t pos, const std::string& what) {
    throw AnnotationError(AnnotationError::Kind::Syntax, pos,
                          "annotation syntax error at offset " + std::to_string(pos) + ": " + what);
}

class AnnotationParser {
public:
    explicit AnnotationParser(std::string_view text) : text_(text) {}

    SqlQualifier parse() {
        skip_ws();
        expect('@');
        expect_word("Sql");
        skip_ws();
        expect('(');
        QuerySignature sig;
        skip_ws();
        if (peek_word("in")) {
            parse_in_list(sig);
            skip_ws();
            expect(',');
            skip_ws();
        }
        parse_out_list(sig);
        skip_ws();
        expect(')');
        skip_ws();
        if (pos_ != text_.size()) fail_anno(pos_, "trailing characters");
        return SqlQualifier::sql(std::move(sig));
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    void expect(char c) {
        if (pos_ >= text_.size() || text_[pos_] != c)
            fail_anno(pos_, std::string("expected '") + c + "'");
        ++pos_;
    }

    void expect_word(std::string_view word) {
        if (text_.compare(pos_, word.size(), word) != 0)
            fail_anno(pos_, "expected '" + std::string(word) + "'");
        pos_ += word.size();
    }

    bool peek_word(std::string_view word) const {
        if (text_.compare(pos_, word.size(), word) != 0) return false;
        std::size_t after = pos_ + word.size();
        return after >= text_.size() ||
               !std::isalnum(static_cast<unsigned char>(text_[after]));
    }

    void parse_in_list(QuerySignature& sig) {
        expect_word("in");
        skip_ws();
        expect('=');
        skip_ws();
        expect('{');
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '}') {
            ++pos_;
            return;
        }
        while (true) {
            std::string entry = parse_quoted();
            sig.in.push_back(parse_in_type(entry));
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == ',') {
                ++pos_;
                skip_ws();
                continue;
            }
            break;
        }
        expect('}');
    }

    void parse_out_list(QuerySignature& sig) {
        expect_word("out");
        skip_ws();
        expect('=');
        skip_ws();
        expect('{');
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '}') {
            ++pos_;
            return;
        }
        while (true) {
            std::size_t entry_pos = pos_;
            std::string entry = parse_quoted();
            sig.out.push_back(parse_out_type(entry, entry_pos));
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == ',') {
                ++pos_;
                skip_ws();
                continue;
            }
            break;
        }
        expect('}');
    }

    std::string parse_quoted() {
        expect('"');
        std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != '"') ++pos_;
        if (pos_ >= text_.size()) fail_anno(start, "unterminated string");
        std::string value(text_.substr(start, pos_ - start));
        ++pos_;
        return value;
    }

    SqlScalarType parse_in_type(const std::string& entry) const {
        return resolve_kind(trim(entry));
    }

    OutColumn parse_out_type(const std::string& entry, std::size_t entry_pos) const {
        std::string body = trim(entry);
        std::size_t space = body.find(' ');
        OutColumn out;
        if (space == std::string::npos) {
            out.type = resolve_kind(body);
        } else {
            out.type = resolve_kind(trim(body.substr(0, space)));
            out.name = trim(body.substr(space + 1));
            if (out.name.find(' ') != std::string::npos)
                fail_anno(entry_pos, "out entry has more than one identifier");
        }
        return out;
    }

    SqlScalarType resolve_kind(const std::string& token) const {
        std::optional<SqlKind> kind = sql_kind_from_token(token);
        if (!kind) {
            AnnotationError e(AnnotationError::Kind::UnknownType, pos_,
                              "unknown SQL type '" + token + "'");
            e.token = token;
            throw e;
        }
        return make_sql_type(*kind);
    }

    static std::string trim(std::string s) {
        std::size_t a = s.find_first_not_of(' ');
        std::size_t b = s.find_last_not_of(' ');
        if (a == std::string::npos) return "";
        return s.substr(a, b - a + 1);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

bool out_prefix(const QuerySignature& longer, const QuerySignature& prefix) {
    if (prefix.out.size() > longer.out.size()) return false;
    for (std::size_t i = 0; i < prefix.out.size(); ++i) {
        if (!ident_equal(prefix.out[i].name, longer.out[i].name)) return false;
        if (!(prefix.out[i].type == longer.out[i].type)) return false;
    }
    return true;
}

bool in_equal(const QuerySignature& a, const QuerySignature& b) {
    if (a.in.size() != b.in.size()) return false;
    for (std::size_t i = 0; i < a.in.size(); ++i) {
        if (!(a.in[i] == b.in[i])) return false;
    }
    return true;
}

} // namespace

SqlQualifier parse_sql_annotation(std::string_view text) {
    return AnnotationParser(text).parse();
}

std::string render_qualifier(const SqlQualifier& q) {
    switch (q.kind) {
    case SqlQualifier::Kind::Unknown: return "@SqlUnknown";
    case SqlQualifier::Kind::Unsupported: return "@SqlUnsupported";
    case SqlQualifier::Kind::Bottom: return "@SqlBottom";
    case SqlQualifier::Kind::Sql: break;
    }
    std::string out = "@Sql(";
    if (!q.sig.in.empty()) {
        out += "in = {";
        for (std::size_t i = 0; i < q.sig.in.size(); ++i) {
            if (i) out += ", ";
            out += "\"";
            out += to_string(q.sig.in[i].kind);
            out += "\"";
        }
        out += "}, ";
    }
    out += "out = {";
    for (std::size_t i = 0; i < q.sig.out.size(); ++i) {
        if (i) out += ", ";
        out += "\"";
        out += to_string(q.sig.out[i].type.kind);
        if (!q.sig.out[i].name.empty()) {
            out += " ";
            out += q.sig.out[i].name;
        }
        out += "\"";
    }
    out += "})";
    return out;
}

bool is_subtype(const SqlQualifier& a, const SqlQualifier& b) {
    using Kind = SqlQualifier::Kind;
    if (a.kind == Kind::Bottom) return true;
    if (b.kind == Kind::Unknown) return true;
    if (a.kind == Kind::Unsupported && b.kind == Kind::Unsupported) return true;
    if (a.kind == Kind::Sql && b.kind == Kind::Sql)
        return in_equal(a.sig, b.sig) && out_prefix(a.sig, b.sig);
    return false;
}

SqlQualifier lub(const SqlQualifier& a, const SqlQualifier& b) {
    using Kind = SqlQualifier::Kind;
    if (a.kind == Kind::Bottom) return b;
    if (b.kind == Kind::Bottom) return a;
    if (a.kind == Kind::Unknown || b.kind == Kind::Unknown) return SqlQualifier::unknown();
    if (a.kind == Kind::Unsupported && b.kind == Kind::Unsupported)
        return SqlQualifier::unsupported();
    if (a.kind == Kind::Unsupported || b.kind == Kind::Unsupported)
        return SqlQualifier::unknown();
    // both Sql
    if (!in_equal(a.sig, b.sig)) return SqlQualifier::unknown();
    QuerySignature merged;
    merged.in = a.sig.in;
    for (std::size_t i = 0; i < a.sig.out.size() && i < b.sig.out.size(); ++i) {
        if (!ident_equal(a.sig.out[i].name, b.sig.out[i].name)) break;
        if (!(a.sig.out[i].type == b.sig.out[i].type)) break;
        merged.out.push_back(a.sig.out[i]);
    }
    return SqlQualifier::sql(std::move(merged));
}

} // namespace oopsie
