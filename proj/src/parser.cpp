#include "dimin/ast.h"
#include "dimin/error.h"

#include <cctype>

namespace dimin {
namespace {

enum class Tok { ident_lower, ident_upper, integer, lparen, rparen, comma, pipe, neck, dot, cmp, end };

struct Token {
    Tok         kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_blank();
        Token t{Tok::end, {}, line_, col_};
        if (pos_ >= src_.size()) return t;
        char c = src_[pos_];
        auto word = [&](auto accept) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && accept(src_[pos_])) advance();
            return std::string(src_.substr(start, pos_ - start));
        };
        auto ident_char = [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; };
        if (std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c))) {
            t.text = word(ident_char);
            t.kind = is_integer_constant(t.text) ? Tok::integer : Tok::ident_lower;
            return t;
        }
        if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
            t.text = word(ident_char);
            t.kind = Tok::ident_upper;
            return t;
        }
        if (c == '-' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
            advance();
            t.text = "-" + word([](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; });
            if (pos_ < src_.size() && ident_char(src_[pos_]))
                throw SyntaxError(t.line, t.column, "malformed integer literal");
            t.kind = Tok::integer;
            return t;
        }
        auto two = src_.substr(pos_, 2);
        if (two == ":-") { advance(2); t.kind = Tok::neck; t.text = ":-"; return t; }
        if (two == "!=" || two == "<=" || two == ">=") { advance(2); t.kind = Tok::cmp; t.text = two; return t; }
        advance();
        t.text = std::string(1, c);
        switch (c) {
        case '(': t.kind = Tok::lparen; return t;
        case ')': t.kind = Tok::rparen; return t;
        case ',': t.kind = Tok::comma; return t;
        case '|': t.kind = Tok::pipe; return t;
        case '.': t.kind = Tok::dot; return t;
        case '=': case '<': case '>': t.kind = Tok::cmp; return t;
        default: break;
        }
        throw SyntaxError(t.line, t.column, "unexpected character '" + t.text + "'");
    }

private:
    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i, ++pos_) {
            if (src_[pos_] == '\n') { ++line_; col_ = 1; }
            else ++col_;
        }
    }
    void skip_blank() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t      pos_{0};
    std::size_t      line_{1};
    std::size_t      col_{1};
};

CmpOp to_cmp(const std::string& s) {
    if (s == "=") return CmpOp::eq;
    if (s == "!=") return CmpOp::ne;
    if (s == "<") return CmpOp::lt;
    if (s == "<=") return CmpOp::le;
    if (s == ">") return CmpOp::gt;
    return CmpOp::ge;
}

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) { shift(); }

    Program program() {
        Program p;
        while (cur_.kind != Tok::end) p.rules.push_back(rule());
        return p;
    }

private:
    void shift() { cur_ = lex_.next(); }

    [[noreturn]] void fail(const std::string& msg) const {
        std::string near = cur_.kind == Tok::end ? "end of input" : "'" + cur_.text + "'";
        throw SyntaxError(cur_.line, cur_.column, msg + " near " + near);
    }

    void expect(Tok kind, const char* what) {
        if (cur_.kind != kind) fail(std::string("expected ") + what);
        shift();
    }

    Term term() {
        Term t;
        switch (cur_.kind) {
        case Tok::ident_upper: t = Term::variable(cur_.text); break;
        case Tok::ident_lower:
        case Tok::integer: t = Term::constant(cur_.text); break;
        default: fail("expected a term");
        }
        shift();
        return t;
    }

    // Called with the predicate name already consumed.
    Atom atom_tail(std::string name) {
        Atom a{std::move(name), {}};
        if (cur_.kind == Tok::lparen) {
            shift();
            if (cur_.kind != Tok::rparen) {
                a.args.push_back(term());
                while (cur_.kind == Tok::comma) {
                    shift();
                    a.args.push_back(term());
                }
            }
            expect(Tok::rparen, "')'");
        }
        return a;
    }

    Atom atom() {
        if (cur_.kind != Tok::ident_lower || cur_.text == "not") fail("expected an atom");
        std::string name = cur_.text;
        shift();
        return atom_tail(std::move(name));
    }

    Comparison comparison_tail(Term left) {
        if (cur_.kind != Tok::cmp) fail("expected a comparison operator");
        CmpOp op = to_cmp(cur_.text);
        shift();
        return {std::move(left), op, term()};
    }

    void body_literal(Rule& r) {
        if (cur_.kind == Tok::ident_lower && cur_.text == "not") {
            shift();
            r.body_neg.push_back(atom());
            return;
        }
        if (cur_.kind == Tok::ident_upper || cur_.kind == Tok::integer) {
            r.comparisons.push_back(comparison_tail(term()));
            return;
        }
        if (cur_.kind != Tok::ident_lower) fail("expected a body literal");
        std::string name = cur_.text;
        shift();
        if (cur_.kind == Tok::cmp) {
            r.comparisons.push_back(comparison_tail(Term::constant(std::move(name))));
            return;
        }
        r.body_pos.push_back(atom_tail(std::move(name)));
    }

    Rule rule() {
        Rule r;
        r.line = cur_.line;
        if (cur_.kind != Tok::neck) {
            r.head.push_back(atom());
            while (cur_.kind == Tok::pipe) {
                shift();
                r.head.push_back(atom());
            }
        }
        if (cur_.kind == Tok::neck) {
            shift();
            if (cur_.kind != Tok::dot) {
                body_literal(r);
                while (cur_.kind == Tok::comma) {
                    shift();
                    body_literal(r);
                }
            }
        }
        expect(Tok::dot, "'.'");
        r.normalize();
        return r;
    }

    Lexer lex_;
    Token cur_{Tok::end, {}, 1, 1};
};

} // namespace

Program parse_program(std::string_view text) {
    Program p = Parser(text).program();
    validate(p);
    return p;
}

} // namespace dimin
