#pragma once

// Recursive-descent parser for the identity language:
//
//   expr   := term (('+' | '-') term)*
//   term   := [scalar '*'] factor
//   factor := atom | atom '*' atom
//   atom   := var | '(' expr ')'
//   scalar := ['-'] digits ['/' digits]
//   var    := letter (letter | digit | '_')*
//
// A product of three atoms without parentheses is rejected. A leading '-'
// on a term without digits means -1, and a lone "0" denotes the zero
// polynomial (the canonical printer emits both).

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include "varlab/poly.hpp"

namespace varlab {

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

namespace detail {

class IdentityParser {
public:
    explicit IdentityParser(std::string_view src) : src_(src) {}

    Polynomial parse() {
        Polynomial p = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    Polynomial expr() {
        Polynomial p = term(false);
        for (;;) {
            if (accept('+'))
                p += term(false);
            else if (accept('-'))
                p += term(true);
            else
                return p;
        }
    }

    std::string digits() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return std::string(src_.substr(start, pos_ - start));
    }

    Polynomial term(bool negated) {
        Rational c = negated ? -1 : 1;
        if (accept('-')) c = -c;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            std::string num = digits();
            std::string den = "1";
            if (accept('/')) {
                skip_ws();
                den = digits();
            }
            c *= parse_rational(num + "/" + den);
            if (!accept('*')) {
                if (c == 0) return {};
                fail("expected '*' after scalar");
            }
        }
        return scale(c, factor());
    }

    Polynomial factor() {
        Polynomial a = atom();
        if (!accept('*')) return a;
        Polynomial b = atom();
        if (peek() == '*') fail("nonassociative product requires parentheses");
        return a * b;
    }

    Polynomial atom() {
        if (accept('(')) {
            Polynomial p = expr();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        char c = peek();
        if (!std::isalpha(static_cast<unsigned char>(c))) {
            if (c == '\0') fail("unexpected end of input");
            fail("expected variable or '('");
        }
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        return Polynomial::var(std::string(src_.substr(start, pos_ - start)));
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view src) {
    return detail::IdentityParser(src).parse();
}

}  // namespace varlab
