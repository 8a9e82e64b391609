#include "codenet/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace codenet {

namespace {

constexpr std::array<std::string_view, 44> kKeywords{
    "_Alignas", "_Alignof",  "_Atomic",   "_Bool",    "_Complex",       "_Generic",
    "_Imaginary", "_Noreturn", "_Static_assert", "_Thread_local", "auto", "break",
    "case",     "char",      "const",     "continue", "default",        "do",
    "double",   "else",      "enum",      "extern",   "float",          "for",
    "goto",     "if",        "inline",    "int",      "long",           "register",
    "restrict", "return",    "short",     "signed",   "sizeof",         "static",
    "struct",   "switch",    "typedef",   "union",    "unsigned",       "void",
    "volatile", "while"};
static_assert(std::is_sorted(kKeywords.begin(), kKeywords.end()));

// Longest first so the first match is the maximal munch.
constexpr std::string_view kOperators[] = {
    "<<=", ">>=", "...", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=", "&&",
    "||",  "+=",  "-=",  "*=", "/=", "%=", "&=", "^=", "|=", "+",  "-",  "*",  "/",
    "%",   "=",   "<",   ">",  "!",  "~",  "&",  "|",  "^",  "?",  ":",  "."};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_punctuation(char c) {
    return c == '(' || c == ')' || c == '{' || c == '}' || c == ';' || c == ',' || c == '[' || c == ']';
}

std::size_t utf8_length(unsigned char lead) {
    if (lead >= 0xF0) return 4;
    if (lead >= 0xE0) return 3;
    if (lead >= 0xC0) return 2;
    return 1;
}

class Lexer {
public:
    Lexer(std::string_view code, Diagnostics* diag) : code_(code), diag_(diag) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        bool line_start = true;
        while (pos_ < code_.size()) {
            const char c = code_[pos_];
            if (c == '\n') {
                line_start = true;
                ++pos_;
                continue;
            }
            if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
                ++pos_;
                continue;
            }
            if (skip_comment()) continue;
            const std::size_t start = pos_;
            if (c == '#' && line_start) {
                directive();
                out.push_back(make(TokenKind::Other, start));
            } else {
                out.push_back(make(lex_one(), start));
            }
            line_start = false;
        }
        return out;
    }

private:
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < code_.size() ? code_[pos_ + ahead] : '\0';
    }

    Token make(TokenKind kind, std::size_t start) const {
        return Token{kind, std::string(code_.substr(start, pos_ - start)), start};
    }

    bool skip_comment() {
        if (peek() != '/') return false;
        if (peek(1) == '*') {
            const std::size_t close = code_.find("*/", pos_ + 2);
            if (close == std::string_view::npos) {
                report_at(diag_, "lexer", pos_, "unterminated block comment");
                pos_ = code_.size();
            } else {
                pos_ = close + 2;
            }
            return true;
        }
        if (peek(1) == '/') {
            while (pos_ < code_.size() && code_[pos_] != '\n') {
                if (code_[pos_] == '\\' && peek(1) == '\n') ++pos_;
                ++pos_;
            }
            return true;
        }
        return false;
    }

    // A directive runs to end of line (with continuations) or up to a comment.
    void directive() {
        std::size_t last = pos_;
        while (pos_ < code_.size() && code_[pos_] != '\n') {
            if (code_[pos_] == '/' && (peek(1) == '*' || peek(1) == '/')) break;
            if (code_[pos_] == '\\' && (peek(1) == '\n' || (peek(1) == '\r' && peek(2) == '\n'))) {
                pos_ += peek(1) == '\r' ? 3 : 2;
                continue;
            }
            if (code_[pos_] != ' ' && code_[pos_] != '\t' && code_[pos_] != '\r') last = pos_;
            ++pos_;
        }
        pos_ = last + 1;
    }

    TokenKind lex_one() {
        const char c = peek();
        if (is_ident_start(c)) {
            const std::size_t start = pos_;
            while (is_ident_char(peek())) ++pos_;
            const std::string_view word = code_.substr(start, pos_ - start);
            if ((peek() == '"' || peek() == '\'') &&
                (word == "L" || word == "u" || word == "U" || word == "u8")) {
                quoted(peek());
                return TokenKind::Literal;
            }
            return is_keyword(word) ? TokenKind::Keyword : TokenKind::Name;
        }
        if (is_digit(c) || (c == '.' && is_digit(peek(1)))) {
            number();
            return TokenKind::Literal;
        }
        if (c == '"' || c == '\'') {
            quoted(c);
            return TokenKind::Literal;
        }
        if (is_punctuation(c)) {
            ++pos_;
            return TokenKind::Punctuation;
        }
        const std::string_view rest = code_.substr(pos_);
        for (std::string_view op : kOperators) {
            if (rest.starts_with(op)) {
                pos_ += op.size();
                return TokenKind::Operator;
            }
        }
        pos_ += std::min(utf8_length(static_cast<unsigned char>(c)), code_.size() - pos_);
        return TokenKind::Other;
    }

    // pp-number: digits, letters, '_', '.', and a sign directly after e/E/p/P.
    void number() {
        ++pos_;
        while (pos_ < code_.size()) {
            const char c = code_[pos_];
            if ((c == '+' || c == '-') &&
                (code_[pos_ - 1] == 'e' || code_[pos_ - 1] == 'E' || code_[pos_ - 1] == 'p' ||
                 code_[pos_ - 1] == 'P')) {
                ++pos_;
            } else if (is_ident_char(c) || c == '.') {
                ++pos_;
            } else {
                break;
            }
        }
    }

    void quoted(char quote) {
        const std::size_t start = pos_;
        ++pos_;
        while (pos_ < code_.size()) {
            const char c = code_[pos_];
            if (c == quote) {
                ++pos_;
                return;
            }
            if (c == '\n') break;
            if (c == '\\' && pos_ + 1 < code_.size()) {
                pos_ += 2;
                continue;
            }
            ++pos_;
        }
        while (pos_ > start + 1 && code_[pos_ - 1] == '\r') --pos_;
        report_at(diag_, "lexer", start, "unterminated literal runs to end of line");
    }

    std::string_view code_;
    Diagnostics* diag_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string_view to_string(TokenKind kind) noexcept {
    switch (kind) {
        case TokenKind::Keyword: return "Keyword";
        case TokenKind::Name: return "Name";
        case TokenKind::Operator: return "Operator";
        case TokenKind::Punctuation: return "Punctuation";
        case TokenKind::Literal: return "Literal";
        case TokenKind::Other: return "Other";
    }
    return "Other";
}

std::optional<TokenKind> token_kind_from_string(std::string_view text) noexcept {
    for (auto kind : {TokenKind::Keyword, TokenKind::Name, TokenKind::Operator, TokenKind::Punctuation,
                      TokenKind::Literal, TokenKind::Other})
        if (to_string(kind) == text) return kind;
    return std::nullopt;
}

bool is_keyword(std::string_view word) noexcept {
    return std::binary_search(kKeywords.begin(), kKeywords.end(), word);
}

std::vector<Token> tokenize(std::string_view code, Diagnostics* diag) { return Lexer(code, diag).run(); }

TokenCounts count_tokens(std::span<const Token> tokens) noexcept {
    TokenCounts counts;
    counts.total = tokens.size();
    for (const auto& t : tokens) {
        switch (t.kind) {
            case TokenKind::Keyword: ++counts.keyword; break;
            case TokenKind::Name: ++counts.name; break;
            case TokenKind::Operator: ++counts.op; break;
            case TokenKind::Punctuation: ++counts.punctuation; break;
            case TokenKind::Literal: ++counts.literal; break;
            case TokenKind::Other: ++counts.other; break;
        }
    }
    return counts;
}

std::string dump_tokens(std::span<const Token> tokens) {
    std::string out;
    for (const auto& t : tokens) {
        out.append(std::to_string(t.offset)).push_back('\t');
        out.append(to_string(t.kind)).push_back('\t');
        for (const char c : t.lexeme) {
            switch (c) {
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\r': out += "\\r"; break;
                case '\t': out += "\\t"; break;
                default: out.push_back(c);
            }
        }
        out.push_back('\n');
    }
    return out;
}

}  // namespace codenet
