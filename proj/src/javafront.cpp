#include "oopsie/javafront.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace oopsie {

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class JTok { Ident, IntLit, StringLit, Punct, End };

struct JToken {
    JTok kind = JTok::End;
    std::string text;
    long long int_value = 0;
    int line = 1, column = 1;
    std::size_t offset = 0;
};

class JavaLexer {
public:
    JavaLexer(std::string_view src, const std::string& file) : src_(src), file_(file) {}

    std::vector<JToken> run() {
        std::vector<JToken> out;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
                continue;
            }
            if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
                continue;
            }
            if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
                bump();
                bump();
                while (pos_ + 1 < src_.size() && !(src_[pos_] == '*' && src_[pos_ + 1] == '/')) {
                    if (src_[pos_] == '\n') {
                        ++line_;
                        col_ = 1;
                        ++pos_;
                    } else {
                        bump();
                    }
                }
                if (pos_ + 1 >= src_.size())
                    throw JavaParseError({file_, line_, col_}, "unterminated block comment");
                bump();
                bump();
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
                JToken t = start_token(JTok::Ident);
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                        src_[pos_] == '_' || src_[pos_] == '$')) {
                    t.text.push_back(src_[pos_]);
                    bump();
                }
                out.push_back(std::move(t));
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                JToken t = start_token(JTok::IntLit);
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    t.text.push_back(src_[pos_]);
                    bump();
                }
                if (pos_ < src_.size() && (src_[pos_] == 'L' || src_[pos_] == 'l')) bump();
                t.int_value = std::stoll(t.text);
                out.push_back(std::move(t));
                continue;
            }
            if (c == '"') {
                JToken t = start_token(JTok::StringLit);
                bump();
                bool closed = false;
                while (pos_ < src_.size()) {
                    char d = src_[pos_];
                    if (d == '"') {
                        bump();
                        closed = true;
                        break;
                    }
                    if (d == '\n')
                        throw JavaParseError({file_, t.line, t.column}, "unterminated string literal");
                    if (d == '\\' && pos_ + 1 < src_.size()) {
                        char e = src_[pos_ + 1];
                        bump();
                        bump();
                        switch (e) {
                        case 'n': t.text.push_back('\n'); break;
                        case 't': t.text.push_back('\t'); break;
                        case 'r': t.text.push_back('\r'); break;
                        case '\\': t.text.push_back('\\'); break;
                        case '"': t.text.push_back('"'); break;
                        case '\'': t.text.push_back('\''); break;
                        default: t.text.push_back(e); break;
                        }
                        continue;
                    }
                    t.text.push_back(d);
                    bump();
                }
                if (!closed)
                    throw JavaParseError({file_, t.line, t.column}, "unterminated string literal");
                out.push_back(std::move(t));
                continue;
            }
            // multi-character operators first
            static const char* kTwoChar[] = {"++", "--", "+=", "==", "!=", "<=", ">=", "&&", "||"};
            bool matched = false;
            for (const char* op : kTwoChar) {
                if (src_.compare(pos_, 2, op) == 0) {
                    JToken t = start_token(JTok::Punct);
                    t.text = op;
                    bump();
                    bump();
                    out.push_back(std::move(t));
                    matched = true;
                    break;
                }
            }
            if (matched) continue;
            JToken t = start_token(JTok::Punct);
            t.text = std::string(1, c);
            bump();
            out.push_back(std::move(t));
        }
        JToken end;
        end.kind = JTok::End;
        end.line = line_;
        end.column = col_;
        end.offset = pos_;
        out.push_back(std::move(end));
        return out;
    }

private:
    JToken start_token(JTok kind) {
        JToken t;
        t.kind = kind;
        t.line = line_;
        t.column = col_;
        t.offset = pos_;
        return t;
    }

    void bump() {
        ++pos_;
        ++col_;
    }

    std::string_view src_;
    const std::string& file_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

const std::map<std::string_view, JavaType> kTypeNames = {
    {"int", JavaType::Int},
    {"long", JavaType::Long},
    {"short", JavaType::Short},
    {"float", JavaType::Float},
    {"double", JavaType::Double},
    {"boolean", JavaType::Boolean},
    {"String", JavaType::String},
    {"Connection", JavaType::Connection},
    {"Statement", JavaType::Statement},
    {"PreparedStatement", JavaType::PreparedStatement},
    {"ResultSet", JavaType::ResultSet},
    {"Date", JavaType::Date},
    {"Time", JavaType::Time},
    {"Timestamp", JavaType::Timestamp},
    {"BigDecimal", JavaType::BigDecimal},
    {"void", JavaType::Void},
};

const std::set<std::string, std::less<>> kRejectedStatements = {
    "for", "switch", "try", "do", "break", "continue", "throw", "synchronized",
};

// Signals a construct outside the subset; caught at method granularity.
struct SubsetSignal {
    std::string construct;
    SourceSpan span;
};

class JavaParser {
public:
    JavaParser(std::string_view src, std::string file)
        : src_(src), file_(std::move(file)), toks_(JavaLexer(src, file_).run()) {}

    Ast parse() {
        Ast ast;
        ast.file = file_;
        while (!at_end()) {
            skip_modifiers();
            if (is_keyword("class")) {
                ast.classes.push_back(parse_class(ast));
            } else {
                throw JavaParseError(span(), "expected class declaration, got '" + cur().text + "'");
            }
        }
        return ast;
    }

private:
    const JToken& cur() const { return toks_[pos_]; }
    const JToken& peek(std::size_t n = 1) const {
        return toks_[std::min(pos_ + n, toks_.size() - 1)];
    }
    bool at_end() const { return cur().kind == JTok::End; }
    void advance() { ++pos_; }

    SourceSpan span() const { return {file_, cur().line, cur().column}; }
    SourceSpan span_of(const JToken& t) const { return {file_, t.line, t.column}; }

    bool is_keyword(std::string_view kw) const {
        return cur().kind == JTok::Ident && cur().text == kw;
    }

    bool is_punct(std::string_view p) const {
        return cur().kind == JTok::Punct && cur().text == p;
    }

    void expect_punct(std::string_view p) {
        if (!is_punct(p))
            throw JavaParseError(span(), "expected '" + std::string(p) + "', got '" + cur().text + "'");
        advance();
    }

    std::string expect_ident(const char* what) {
        if (cur().kind != JTok::Ident)
            throw JavaParseError(span(), std::string("expected ") + what + ", got '" + cur().text + "'");
        std::string name = cur().text;
        advance();
        return name;
    }

    void skip_modifiers() {
        while (cur().kind == JTok::Ident &&
               (cur().text == "public" || cur().text == "private" || cur().text == "protected" ||
                cur().text == "static" || cur().text == "final" || cur().text == "abstract")) {
            advance();
        }
    }

    // Captures `@Name` or `@Name( ... )` with balanced parentheses as raw text.
    std::optional<AnnotationDecl> parse_annotation() {
        if (!is_punct("@")) return std::nullopt;
        SourceSpan at = span();
        std::size_t start = cur().offset;
        advance();
        std::string name = expect_ident("annotation name");
        std::size_t end = toks_[pos_ - 1].offset + name.size();
        if (is_punct("(")) {
            int depth = 0;
            do {
                if (is_punct("(")) ++depth;
                if (is_punct(")")) --depth;
                if (at_end()) throw JavaParseError(at, "unterminated annotation");
                end = cur().offset + cur().text.size();
                advance();
            } while (depth > 0);
        }
        if (name != "Sql") return std::nullopt;  // other annotations are tolerated and dropped
        AnnotationDecl decl;
        decl.raw = std::string(src_.substr(start, end - start));
        decl.span = at;
        return decl;
    }

    ClassDecl parse_class(Ast& ast) {
        ClassDecl cls;
        cls.span = span();
        advance();  // class
        cls.name = expect_ident("class name");
        expect_punct("{");
        while (!is_punct("}")) {
            if (at_end()) throw JavaParseError(span(), "unterminated class body");
            parse_member(ast, cls);
        }
        advance();  // }
        return cls;
    }

    void parse_member(Ast& ast, ClassDecl& cls) {
        std::optional<AnnotationDecl> return_anno;
        while (is_punct("@")) {
            auto a = parse_annotation();
            if (a) return_anno = std::move(a);
        }
        skip_modifiers();

        // method: Type Ident ( ... ) { ... }
        if (cur().kind == JTok::Ident && peek().kind == JTok::Ident &&
            peek(2).kind == JTok::Punct && peek(2).text == "(") {
            cls.methods.push_back(parse_method(ast, std::move(return_anno)));
            return;
        }
        // anything else (fields, initializers, nested types) is outside the subset
        SubsetViolation v;
        v.construct = "class member that is not a method";
        v.span = span();
        ast.violations.push_back(v);
        skip_member();
    }

    void skip_member() {
        // consume tokens up to the next ';' at depth 0 or a balanced '{...}'
        int depth = 0;
        while (!at_end()) {
            if (is_punct("{")) ++depth;
            if (is_punct("}")) {
                if (depth == 0) return;  // leave the class brace for the caller
                --depth;
                advance();
                if (depth == 0) return;
                continue;
            }
            if (is_punct(";") && depth == 0) {
                advance();
                return;
            }
            advance();
        }
    }

    Method parse_method(Ast& ast, std::optional<AnnotationDecl> return_anno) {
        Method m;
        m.span = span();
        m.return_annotation = std::move(return_anno);
        m.return_type_text = cur().text;
        auto rt = kTypeNames.find(cur().text);
        m.return_type = rt == kTypeNames.end() ? JavaType::Other : rt->second;
        advance();
        m.name = expect_ident("method name");
        expect_punct("(");
        slots_.clear();
        scopes_.clear();
        scopes_.emplace_back();
        if (!is_punct(")")) {
            while (true) {
                Param p;
                while (is_punct("@")) {
                    auto a = parse_annotation();
                    if (a) p.annotation = std::move(a);
                }
                SourceSpan type_span = span();
                p.type_text = expect_ident("parameter type");
                auto it = kTypeNames.find(p.type_text);
                p.type = it == kTypeNames.end() ? JavaType::Other : it->second;
                p.name = expect_ident("parameter name");
                declare(p.name, p.type, p.type_text, true, type_span);
                m.params.push_back(std::move(p));
                if (is_punct(",")) {
                    advance();
                    continue;
                }
                break;
            }
        }
        expect_punct(")");
        if (is_keyword("throws")) {
            advance();
            while (true) {
                expect_ident("exception type");
                while (is_punct(".")) {
                    advance();
                    expect_ident("exception type");
                }
                if (is_punct(",")) {
                    advance();
                    continue;
                }
                break;
            }
        }
        std::size_t body_open = pos_;  // position of '{'
        expect_punct("{");
        try {
            m.body = parse_statements();
            expect_punct("}");
        } catch (const SubsetSignal& sig) {
            SubsetViolation v;
            v.construct = sig.construct;
            v.method = m.name;
            v.span = sig.span;
            ast.violations.push_back(v);
            m.analyzable = false;
            m.body.clear();
            pos_ = body_open;
            skip_balanced_braces();
        }
        m.slots = slots_;
        return m;
    }

    // Skips over a balanced `{ ... }` starting at the current '{'.
    void skip_balanced_braces() {
        int depth = 0;
        do {
            if (at_end()) throw JavaParseError(span(), "unterminated method body");
            if (is_punct("{")) ++depth;
            if (is_punct("}")) --depth;
            advance();
        } while (depth > 0);
    }

    [[noreturn]] void reject(std::string construct, SourceSpan at) {
        throw SubsetSignal{std::move(construct), std::move(at)};
    }

    // --- scoping -----------------------------------------------------------

    int declare(const std::string& name, JavaType type, std::string type_text, bool is_param,
                SourceSpan at) {
        VarSlot slot;
        slot.name = name;
        slot.type = type;
        slot.type_text = std::move(type_text);
        slot.is_param = is_param;
        slot.span = at;
        slots_.push_back(std::move(slot));
        int id = static_cast<int>(slots_.size()) - 1;
        scopes_.back()[name] = id;
        return id;
    }

    int lookup(const std::string& name) const {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            auto found = it->find(name);
            if (found != it->end()) return found->second;
        }
        return -1;
    }

    // --- statements ---------------------------------------------------------

    std::vector<StmtPtr> parse_statements() {
        std::vector<StmtPtr> out;
        bool terminated = false;
        while (!is_punct("}")) {
            if (at_end()) throw JavaParseError(span(), "unterminated block");
            if (is_punct(";")) {
                advance();
                continue;
            }
            if (terminated) reject("unreachable code", span());
            StmtPtr stmt = parse_statement();
            if (stmt) {
                terminated = stmt->kind == Stmt::Kind::Return;
                out.push_back(std::move(stmt));
            }
        }
        return out;
    }

    std::vector<StmtPtr> parse_block_or_single() {
        if (is_punct("{")) {
            advance();
            scopes_.emplace_back();
            auto body = parse_statements();
            scopes_.pop_back();
            expect_punct("}");
            return body;
        }
        std::vector<StmtPtr> body;
        StmtPtr stmt = parse_statement();
        if (stmt) body.push_back(std::move(stmt));
        return body;
    }

    StmtPtr parse_statement() {
        SourceSpan at = span();
        if (cur().kind == JTok::Ident) {
            const std::string& word = cur().text;
            if (kRejectedStatements.count(word)) reject(word, at);
            if (word == "if") return parse_if();
            if (word == "while") return parse_while();
            if (word == "return") return parse_return();
            if (word == "new") reject("new", at);
        }
        if (is_punct("{")) {
            // bare block: keep statements, scope is local to it
            advance();
            scopes_.emplace_back();
            auto inner = parse_statements();
            scopes_.pop_back();
            expect_punct("}");
            if (inner.empty()) return nullptr;
            if (inner.size() == 1) return std::move(inner[0]);
            // fold multi-statement bare blocks into an if(true)-free form is
            // not possible; reject to keep block structure explicit
            reject("bare block with multiple statements", at);
        }

        // declaration? Type Ident [= expr] ;  (includes var and custom types)
        if (cur().kind == JTok::Ident && peek().kind == JTok::Ident) {
            return parse_local_decl();
        }
        if (cur().kind == JTok::Ident && peek().kind == JTok::Punct && peek().text == "<")
            reject("generics", at);

        // assignment / compound assignment
        if (cur().kind == JTok::Ident && peek().kind == JTok::Punct &&
            (peek().text == "=" || peek().text == "+=")) {
            std::string name = cur().text;
            int slot = lookup(name);
            if (slot < 0) reject("assignment to unresolved identifier '" + name + "'", at);
            bool compound = peek().text == "+=";
            advance();
            advance();
            auto stmt = std::make_unique<Stmt>();
            stmt->kind = compound ? Stmt::Kind::CompoundAdd : Stmt::Kind::Assign;
            stmt->span = at;
            stmt->slot = slot;
            stmt->expr = parse_expr();
            expect_punct(";");
            return stmt;
        }

        // expression statement (calls, ++/--)
        auto stmt = std::make_unique<Stmt>();
        stmt->kind = Stmt::Kind::ExprStmt;
        stmt->span = at;
        stmt->expr = parse_expr();
        expect_punct(";");
        return stmt;
    }

    StmtPtr parse_local_decl() {
        SourceSpan at = span();
        std::string type_text = cur().text;
        advance();
        std::string name = expect_ident("variable name");
        JavaType type;
        if (type_text == "var") {
            type = JavaType::Other;  // refined from the initializer below
        } else {
            auto it = kTypeNames.find(type_text);
            if (it == kTypeNames.end()) {
                type = JavaType::Other;
            } else if (it->second == JavaType::Void) {
                reject("void local", at);
            } else {
                type = it->second;
            }
        }
        auto stmt = std::make_unique<Stmt>();
        stmt->kind = Stmt::Kind::LocalDecl;
        stmt->span = at;
        if (is_punct("=")) {
            advance();
            stmt->expr = parse_expr();
            if (type_text == "var") type = var_initializer_type(*stmt->expr);
        }
        stmt->slot = declare(name, type, type_text, false, at);
        expect_punct(";");
        return stmt;
    }

    JavaType var_initializer_type(const Expr& init) const {
        switch (init.kind) {
        case Expr::Kind::StringLit: return JavaType::String;
        case Expr::Kind::IntLit: return JavaType::Int;
        case Expr::Kind::BoolLit: return JavaType::Boolean;
        default: return init.static_type;
        }
    }

    StmtPtr parse_if() {
        auto stmt = std::make_unique<Stmt>();
        stmt->kind = Stmt::Kind::If;
        stmt->span = span();
        advance();  // if
        expect_punct("(");
        stmt->expr = parse_expr();
        expect_punct(")");
        stmt->then_body = parse_block_or_single();
        if (is_keyword("else")) {
            advance();
            stmt->has_else = true;
            stmt->else_body = parse_block_or_single();
        }
        return stmt;
    }

    StmtPtr parse_while() {
        auto stmt = std::make_unique<Stmt>();
        stmt->kind = Stmt::Kind::While;
        stmt->span = span();
        advance();  // while
        expect_punct("(");
        stmt->expr = parse_expr();
        expect_punct(")");
        stmt->loop_body = parse_block_or_single();
        return stmt;
    }

    StmtPtr parse_return() {
        auto stmt = std::make_unique<Stmt>();
        stmt->kind = Stmt::Kind::Return;
        stmt->span = span();
        advance();  // return
        if (!is_punct(";")) stmt->expr = parse_expr();
        expect_punct(";");
        return stmt;
    }

    // --- expressions ---------------------------------------------------------

    ExprPtr parse_expr() { return parse_or(); }

    ExprPtr make_binary(Expr::BinOp op, ExprPtr lhs, ExprPtr rhs) {
        auto node = std::make_unique<Expr>();
        node->kind = Expr::Kind::Binary;
        node->bin_op = op;
        node->span = lhs->span;
        node->lhs = std::move(lhs);
        node->rhs = std::move(rhs);
        switch (op) {
        case Expr::BinOp::Add:
            node->static_type = node->lhs->static_type == JavaType::String ||
                                        node->rhs->static_type == JavaType::String
                                    ? JavaType::String
                                    : JavaType::Int;
            break;
        case Expr::BinOp::Sub:
            node->static_type = JavaType::Int;
            break;
        default:
            node->static_type = JavaType::Boolean;
            break;
        }
        return node;
    }

    ExprPtr parse_or() {
        auto lhs = parse_and();
        while (is_punct("||")) {
            advance();
            lhs = make_binary(Expr::BinOp::OrOr, std::move(lhs), parse_and());
        }
        return lhs;
    }

    ExprPtr parse_and() {
        auto lhs = parse_equality();
        while (is_punct("&&")) {
            advance();
            lhs = make_binary(Expr::BinOp::AndAnd, std::move(lhs), parse_equality());
        }
        return lhs;
    }

    ExprPtr parse_equality() {
        auto lhs = parse_relational();
        while (is_punct("==") || is_punct("!=")) {
            Expr::BinOp op = cur().text == "==" ? Expr::BinOp::Eq : Expr::BinOp::Ne;
            advance();
            lhs = make_binary(op, std::move(lhs), parse_relational());
        }
        return lhs;
    }

    ExprPtr parse_relational() {
        auto lhs = parse_additive();
        while (is_punct("<") || is_punct("<=") || is_punct(">") || is_punct(">=")) {
            Expr::BinOp op;
            if (cur().text == "<") op = Expr::BinOp::Lt;
            else if (cur().text == "<=") op = Expr::BinOp::Le;
            else if (cur().text == ">") op = Expr::BinOp::Gt;
            else op = Expr::BinOp::Ge;
            advance();
            lhs = make_binary(op, std::move(lhs), parse_additive());
        }
        return lhs;
    }

    ExprPtr parse_additive() {
        auto lhs = parse_unary();
        while (is_punct("+") || is_punct("-")) {
            Expr::BinOp op = cur().text == "+" ? Expr::BinOp::Add : Expr::BinOp::Sub;
            advance();
            lhs = make_binary(op, std::move(lhs), parse_unary());
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        SourceSpan at = span();
        if (is_punct("!")) {
            advance();
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::Unary;
            node->un_op = Expr::UnOp::Not;
            node->span = at;
            node->lhs = parse_unary();
            node->static_type = JavaType::Boolean;
            return node;
        }
        if (is_punct("-")) {
            advance();
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::Unary;
            node->un_op = Expr::UnOp::Neg;
            node->span = at;
            node->lhs = parse_unary();
            node->static_type = JavaType::Int;
            return node;
        }
        if (is_punct("++") || is_punct("--")) {
            Expr::UnOp op = cur().text == "++" ? Expr::UnOp::PreInc : Expr::UnOp::PreDec;
            advance();
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::Unary;
            node->un_op = op;
            node->span = at;
            node->lhs = parse_primary();
            if (node->lhs->kind != Expr::Kind::VarRef)
                reject("increment of a non-variable", at);
            node->static_type = JavaType::Int;
            return node;
        }
        auto node = parse_primary();
        if (is_punct("++") || is_punct("--")) {
            Expr::UnOp op = cur().text == "++" ? Expr::UnOp::PostInc : Expr::UnOp::PostDec;
            SourceSpan op_at = span();
            advance();
            if (node->kind != Expr::Kind::VarRef) reject("increment of a non-variable", op_at);
            auto outer = std::make_unique<Expr>();
            outer->kind = Expr::Kind::Unary;
            outer->un_op = op;
            outer->span = node->span;
            outer->lhs = std::move(node);
            outer->static_type = JavaType::Int;
            return outer;
        }
        return node;
    }

    ExprPtr parse_primary() {
        SourceSpan at = span();
        if (cur().kind == JTok::StringLit) {
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::StringLit;
            node->span = at;
            node->str_value = cur().text;
            node->static_type = JavaType::String;
            advance();
            return node;
        }
        if (cur().kind == JTok::IntLit) {
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::IntLit;
            node->span = at;
            node->int_value = cur().int_value;
            node->static_type = JavaType::Int;
            advance();
            return node;
        }
        if (is_punct("(")) {
            advance();
            auto node = parse_expr();
            expect_punct(")");
            return node;
        }
        if (cur().kind != JTok::Ident)
            throw JavaParseError(at, "expected expression, got '" + cur().text + "'");

        const std::string word = cur().text;
        if (word == "true" || word == "false") {
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::BoolLit;
            node->span = at;
            node->bool_value = word == "true";
            node->static_type = JavaType::Boolean;
            advance();
            return node;
        }
        if (word == "null") {
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::NullLit;
            node->span = at;
            node->static_type = JavaType::Other;
            advance();
            return node;
        }
        if (word == "new") reject("new", at);
        advance();

        // call on a receiver: ident.method(args)
        if (is_punct(".")) {
            advance();
            std::string method = expect_ident("method name");
            if (!is_punct("(")) reject("field access", at);
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::Call;
            node->span = at;
            node->has_receiver = true;
            node->recv_name = word;
            node->recv_slot = lookup(word);
            node->method = std::move(method);
            parse_args(*node);
            JavaType recv_type =
                node->recv_slot >= 0 ? slots_[node->recv_slot].type : JavaType::Other;
            node->static_type = classify_call(recv_type, node->method).result_type;
            if (is_punct(".")) reject("chained call", span());
            return node;
        }
        // unqualified call: method(args)
        if (is_punct("(")) {
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::Call;
            node->span = at;
            node->has_receiver = false;
            node->method = word;
            parse_args(*node);
            node->static_type = JavaType::Other;
            if (is_punct(".")) reject("chained call", span());
            return node;
        }
        // plain variable reference
        int slot = lookup(word);
        if (slot < 0) reject("unresolved identifier '" + word + "'", at);
        auto node = std::make_unique<Expr>();
        node->kind = Expr::Kind::VarRef;
        node->span = at;
        node->slot = slot;
        node->static_type = slots_[slot].type;
        return node;
    }

    void parse_args(Expr& call) {
        expect_punct("(");
        if (!is_punct(")")) {
            while (true) {
                call.args.push_back(parse_expr());
                if (is_punct(",")) {
                    advance();
                    continue;
                }
                break;
            }
        }
        expect_punct(")");
    }

    std::string_view src_;
    std::string file_;
    std::vector<JToken> toks_;
    std::size_t pos_ = 0;

    std::vector<VarSlot> slots_;
    std::vector<std::map<std::string, int>> scopes_;
};

// ---------------------------------------------------------------------------
// Renderer

class JavaRenderer {
public:
    explicit JavaRenderer(const Ast& ast) : ast_(ast) {}

    std::string run() {
        for (const ClassDecl& cls : ast_.classes) {
            out_ << "class " << cls.name << " {\n";
            for (const Method& m : cls.methods) render_method(m);
            out_ << "}\n";
        }
        return out_.str();
    }

private:
    void render_method(const Method& m) {
        method_ = &m;
        out_ << "    ";
        if (m.return_annotation) out_ << m.return_annotation->raw << " ";
        out_ << m.return_type_text << " " << m.name << "(";
        for (std::size_t i = 0; i < m.params.size(); ++i) {
            if (i) out_ << ", ";
            if (m.params[i].annotation) out_ << m.params[i].annotation->raw << " ";
            out_ << m.params[i].type_text << " " << m.params[i].name;
        }
        out_ << ") {\n";
        render_stmts(m.body, 2);
        out_ << "    }\n";
    }

    void render_stmts(const std::vector<StmtPtr>& stmts, int indent) {
        for (const StmtPtr& s : stmts) render_stmt(*s, indent);
    }

    void pad(int indent) {
        for (int i = 0; i < indent; ++i) out_ << "    ";
    }

    void render_stmt(const Stmt& s, int indent) {
        pad(indent);
        switch (s.kind) {
        case Stmt::Kind::LocalDecl:
            out_ << method_->slots[s.slot].type_text << " " << method_->slots[s.slot].name;
            if (s.expr) out_ << " = " << render_expr(*s.expr);
            out_ << ";\n";
            break;
        case Stmt::Kind::Assign:
            out_ << method_->slots[s.slot].name << " = " << render_expr(*s.expr) << ";\n";
            break;
        case Stmt::Kind::CompoundAdd:
            out_ << method_->slots[s.slot].name << " += " << render_expr(*s.expr) << ";\n";
            break;
        case Stmt::Kind::ExprStmt:
            out_ << render_expr(*s.expr) << ";\n";
            break;
        case Stmt::Kind::Return:
            out_ << "return";
            if (s.expr) out_ << " " << render_expr(*s.expr);
            out_ << ";\n";
            break;
        case Stmt::Kind::If:
            out_ << "if (" << render_expr(*s.expr) << ") {\n";
            render_stmts(s.then_body, indent + 1);
            pad(indent);
            if (s.has_else) {
                out_ << "} else {\n";
                render_stmts(s.else_body, indent + 1);
                pad(indent);
            }
            out_ << "}\n";
            break;
        case Stmt::Kind::While:
            out_ << "while (" << render_expr(*s.expr) << ") {\n";
            render_stmts(s.loop_body, indent + 1);
            pad(indent);
            out_ << "}\n";
            break;
        }
    }

    std::string render_expr(const Expr& e) {
        switch (e.kind) {
        case Expr::Kind::StringLit: {
            std::string out = "\"";
            for (char c : e.str_value) {
                switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                case '\r': out += "\\r"; break;
                default: out.push_back(c);
                }
            }
            return out + "\"";
        }
        case Expr::Kind::IntLit: return std::to_string(e.int_value);
        case Expr::Kind::BoolLit: return e.bool_value ? "true" : "false";
        case Expr::Kind::NullLit: return "null";
        case Expr::Kind::VarRef: return method_->slots[e.slot].name;
        case Expr::Kind::Unary:
            switch (e.un_op) {
            case Expr::UnOp::PreInc: return "++" + render_expr(*e.lhs);
            case Expr::UnOp::PreDec: return "--" + render_expr(*e.lhs);
            case Expr::UnOp::PostInc: return render_expr(*e.lhs) + "++";
            case Expr::UnOp::PostDec: return render_expr(*e.lhs) + "--";
            case Expr::UnOp::Not: return "!" + maybe_paren(*e.lhs);
            case Expr::UnOp::Neg: return "-" + maybe_paren(*e.lhs);
            }
            return "";
        case Expr::Kind::Binary: {
            const char* op = "";
            switch (e.bin_op) {
            case Expr::BinOp::Add: op = "+"; break;
            case Expr::BinOp::Sub: op = "-"; break;
            case Expr::BinOp::Eq: op = "=="; break;
            case Expr::BinOp::Ne: op = "!="; break;
            case Expr::BinOp::Lt: op = "<"; break;
            case Expr::BinOp::Le: op = "<="; break;
            case Expr::BinOp::Gt: op = ">"; break;
            case Expr::BinOp::Ge: op = ">="; break;
            case Expr::BinOp::AndAnd: op = "&&"; break;
            case Expr::BinOp::OrOr: op = "||"; break;
            }
            return maybe_paren(*e.lhs) + " " + op + " " + maybe_paren(*e.rhs);
        }
        case Expr::Kind::Call: {
            std::string out;
            if (e.has_receiver) out = e.recv_name + ".";
            out += e.method + "(";
            for (std::size_t i = 0; i < e.args.size(); ++i) {
                if (i) out += ", ";
                out += render_expr(*e.args[i]);
            }
            return out + ")";
        }
        }
        return "";
    }

    std::string maybe_paren(const Expr& e) {
        std::string inner = render_expr(e);
        if (e.kind == Expr::Kind::Binary) return "(" + inner + ")";
        return inner;
    }

    const Ast& ast_;
    const Method* method_ = nullptr;
    std::ostringstream out_;
};

// ---------------------------------------------------------------------------
// Counting helpers

void count_stmts(const std::vector<StmtPtr>& stmts, int& n) {
    for (const StmtPtr& s : stmts) {
        ++n;
        count_stmts(s->then_body, n);
        count_stmts(s->else_body, n);
        count_stmts(s->loop_body, n);
    }
}

void count_api_calls(const Expr& e, const Method& m, int& n) {
    if (e.kind == Expr::Kind::Call && e.has_receiver) {
        JavaType recv = e.recv_slot >= 0 ? m.slots[e.recv_slot].type : JavaType::Other;
        if (!classify_call(recv, e.method).is_other()) ++n;
    }
    if (e.lhs) count_api_calls(*e.lhs, m, n);
    if (e.rhs) count_api_calls(*e.rhs, m, n);
    for (const ExprPtr& a : e.args) count_api_calls(*a, m, n);
}

void count_api_calls(const std::vector<StmtPtr>& stmts, const Method& m, int& n) {
    for (const StmtPtr& s : stmts) {
        if (s->expr) count_api_calls(*s->expr, m, n);
        count_api_calls(s->then_body, m, n);
        count_api_calls(s->else_body, m, n);
        count_api_calls(s->loop_body, m, n);
    }
}

// ---------------------------------------------------------------------------
// CFG construction

class CfgBuilder {
public:
    explicit CfgBuilder(const Method& method) : method_(method) {}

    Cfg run() {
        cfg_.entry = new_block();
        has_return_ = false;
        pending_exit_edges_.clear();
        int end = build_list(method_.body, cfg_.entry);
        if (has_return_) {
            int exit = new_block();
            for (int from : pending_exit_edges_) add_edge(from, exit);
            if (end >= 0) add_edge(end, exit);
            cfg_.exit = exit;
        } else {
            cfg_.exit = end >= 0 ? end : cfg_.entry;
        }
        prune_unreachable();
        build_preds();
        return std::move(cfg_);
    }

private:
    int new_block() {
        cfg_.blocks.emplace_back();
        return static_cast<int>(cfg_.blocks.size()) - 1;
    }

    void add_edge(int from, int to) { cfg_.blocks[from].succs.push_back(to); }

    // Returns the open block at the end of the list, or -1 if control never
    // falls through (the list ended with a return).
    int build_list(const std::vector<StmtPtr>& stmts, int cur) {
        for (const StmtPtr& s : stmts) {
            if (cur < 0) return -1;  // parser rejects unreachable code; defensive
            switch (s->kind) {
            case Stmt::Kind::LocalDecl:
            case Stmt::Kind::Assign:
            case Stmt::Kind::CompoundAdd:
            case Stmt::Kind::ExprStmt:
                cfg_.blocks[cur].stmts.push_back(s.get());
                break;
            case Stmt::Kind::Return:
                cfg_.blocks[cur].stmts.push_back(s.get());
                pending_exit_edges_.push_back(cur);
                has_return_ = true;
                cur = -1;
                break;
            case Stmt::Kind::If: {
                cfg_.blocks[cur].guard = s->expr.get();
                int then_entry = new_block();
                add_edge(cur, then_entry);
                int then_end = build_list(s->then_body, then_entry);
                int join = new_block();
                if (s->has_else) {
                    int else_entry = new_block();
                    add_edge(cur, else_entry);
                    int else_end = build_list(s->else_body, else_entry);
                    if (else_end >= 0) add_edge(else_end, join);
                } else {
                    add_edge(cur, join);
                }
                if (then_end >= 0) add_edge(then_end, join);
                cur = join;
                break;
            }
            case Stmt::Kind::While: {
                int guard = new_block();
                add_edge(cur, guard);
                cfg_.blocks[guard].guard = s->expr.get();
                int body_entry = new_block();
                add_edge(guard, body_entry);
                int body_end = build_list(s->loop_body, body_entry);
                if (body_end >= 0) add_edge(body_end, guard);
                int after = new_block();
                add_edge(guard, after);
                cur = after;
                break;
            }
            }
        }
        return cur;
    }

    void prune_unreachable() {
        std::vector<bool> reachable(cfg_.blocks.size(), false);
        std::vector<int> work{cfg_.entry};
        reachable[cfg_.entry] = true;
        while (!work.empty()) {
            int b = work.back();
            work.pop_back();
            for (int s : cfg_.blocks[b].succs) {
                if (!reachable[s]) {
                    reachable[s] = true;
                    work.push_back(s);
                }
            }
        }
        if (std::all_of(reachable.begin(), reachable.end(), [](bool r) { return r; })) return;

        std::vector<int> remap(cfg_.blocks.size(), -1);
        std::vector<Cfg::Block> kept;
        for (std::size_t i = 0; i < cfg_.blocks.size(); ++i) {
            if (reachable[i]) {
                remap[i] = static_cast<int>(kept.size());
                kept.push_back(std::move(cfg_.blocks[i]));
            }
        }
        for (Cfg::Block& b : kept) {
            for (int& s : b.succs) s = remap[s];
        }
        cfg_.blocks = std::move(kept);
        cfg_.entry = remap[cfg_.entry];
        cfg_.exit = remap[cfg_.exit];
    }

    void build_preds() {
        for (std::size_t i = 0; i < cfg_.blocks.size(); ++i) {
            for (int s : cfg_.blocks[i].succs) {
                cfg_.blocks[s].preds.push_back(static_cast<int>(i));
            }
        }
    }

    const Method& method_;
    Cfg cfg_;
    bool has_return_ = false;
    std::vector<int> pending_exit_edges_;
};

JavaType accessor_result_type(JavaAccessor a) {
    switch (a) {
    case JavaAccessor::Int: return JavaType::Int;
    case JavaAccessor::Long: return JavaType::Long;
    case JavaAccessor::Short: return JavaType::Short;
    case JavaAccessor::Float: return JavaType::Float;
    case JavaAccessor::Double: return JavaType::Double;
    case JavaAccessor::Boolean: return JavaType::Boolean;
    case JavaAccessor::String: return JavaType::String;
    case JavaAccessor::Date: return JavaType::Date;
    case JavaAccessor::Time: return JavaType::Time;
    case JavaAccessor::Timestamp: return JavaType::Timestamp;
    case JavaAccessor::BigDecimal: return JavaType::BigDecimal;
    }
    return JavaType::Other;
}

std::optional<JavaAccessor> accessor_from_method(std::string_view method, std::string_view prefix) {
    if (method.size() <= prefix.size() || method.substr(0, prefix.size()) != prefix)
        return std::nullopt;
    std::string_view suffix = method.substr(prefix.size());
    constexpr JavaAccessor kAll[] = {
        JavaAccessor::Int,    JavaAccessor::Long,      JavaAccessor::Short,
        JavaAccessor::Float,  JavaAccessor::Double,    JavaAccessor::Boolean,
        JavaAccessor::String, JavaAccessor::Date,      JavaAccessor::Time,
        JavaAccessor::Timestamp, JavaAccessor::BigDecimal,
    };
    for (JavaAccessor a : kAll) {
        if (accessor_method_suffix(a) == suffix) return a;
    }
    return std::nullopt;
}

} // namespace

std::string_view java_type_name(JavaType t) {
    switch (t) {
    case JavaType::Int: return "int";
    case JavaType::Long: return "long";
    case JavaType::Short: return "short";
    case JavaType::Float: return "float";
    case JavaType::Double: return "double";
    case JavaType::Boolean: return "boolean";
    case JavaType::String: return "String";
    case JavaType::Connection: return "Connection";
    case JavaType::Statement: return "Statement";
    case JavaType::PreparedStatement: return "PreparedStatement";
    case JavaType::ResultSet: return "ResultSet";
    case JavaType::Date: return "Date";
    case JavaType::Time: return "Time";
    case JavaType::Timestamp: return "Timestamp";
    case JavaType::BigDecimal: return "BigDecimal";
    case JavaType::Void: return "void";
    case JavaType::Other: return "Object";
    }
    return "?";
}

bool is_api_type(JavaType t) {
    return t == JavaType::Statement || t == JavaType::PreparedStatement ||
           t == JavaType::ResultSet;
}

bool is_tracked_value_type(JavaType t) {
    return t == JavaType::String || t == JavaType::Int;
}

int Ast::statement_count() const {
    int n = 0;
    for (const ClassDecl& cls : classes) {
        for (const Method& m : cls.methods) count_stmts(m.body, n);
    }
    return n;
}

int Ast::api_call_count() const {
    int n = 0;
    for (const ClassDecl& cls : classes) {
        for (const Method& m : cls.methods) count_api_calls(m.body, m, n);
    }
    return n;
}

Ast parse_java(std::string_view source, std::string file) {
    return JavaParser(source, std::move(file)).parse();
}

std::string render_java(const Ast& ast) {
    return JavaRenderer(ast).run();
}

ApiCallInfo classify_call(JavaType receiver, std::string_view method) {
    ApiCallInfo info;
    switch (receiver) {
    case JavaType::Connection:
        if (method == "createStatement") {
            info.result_type = JavaType::Statement;
        } else if (method == "prepareStatement") {
            info.creates_sql_statement = true;
            info.sql_arg_index = 0;
            info.result_type = JavaType::PreparedStatement;
        }
        break;
    case JavaType::Statement:
        if (method == "executeQuery") {
            info.creates_sql_statement = true;
            info.sql_arg_index = 0;
            info.retrieves_result_set = true;
            info.result_type = JavaType::ResultSet;
        } else if (method == "executeUpdate" || method == "executeLargeUpdate") {
            info.executes_with_sql = true;
            info.sql_arg_index = 0;
            info.result_type = method == "executeUpdate" ? JavaType::Int : JavaType::Long;
        } else if (method == "execute") {
            info.executes_with_sql = true;
            info.sql_arg_index = 0;
            info.result_type = JavaType::Boolean;
        } else if (method == "getResultSet") {
            info.retrieves_result_set = true;
            info.result_type = JavaType::ResultSet;
        }
        break;
    case JavaType::PreparedStatement:
        if (method == "executeQuery") {
            info.retrieves_result_set = true;
            info.result_type = JavaType::ResultSet;
        } else if (method == "executeUpdate") {
            info.result_type = JavaType::Int;
        } else if (method == "execute") {
            info.result_type = JavaType::Boolean;
        } else if (auto a = accessor_from_method(method, "set")) {
            info.setter = a;
            info.result_type = JavaType::Void;
        }
        break;
    case JavaType::ResultSet:
        if (method == "next") {
            info.cursor_next = true;
            info.result_type = JavaType::Boolean;
        } else if (auto a = accessor_from_method(method, "get")) {
            info.getter = a;
            info.result_type = accessor_result_type(*a);
        }
        break;
    default:
        break;
    }
    return info;
}

Cfg build_cfg(const Method& method) {
    return CfgBuilder(method).run();
}

} // namespace oopsie
