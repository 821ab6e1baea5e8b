#pragma once

#include <cctype>
#include <string>

#include "laplim/bigfloat.hpp"
#include "laplim/errors.hpp"

namespace laplim {

namespace detail {

/// Recursive-descent evaluator for the constant-expression grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := number | '(' expr ')' | '-' factor | ('sqrt'|'cbrt') '(' expr ')'
/// Decimal literals are read directly at the working precision, so inputs
/// like (5+sqrt(33))/2 survive deep certificate runs undistorted.
class ExprParser {
public:
    ExprParser(const std::string& s, mpfr_prec_t prec) : s_(s), prec_(prec) {}

    BigFloat parse() {
        BigFloat v = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing characters in expression");
        return v;
    }

private:
    BigFloat expr() {
        BigFloat v = term();
        for (;;) {
            skip_ws();
            if (peek() == '+') { ++pos_; v = v + term(); }
            else if (peek() == '-') { ++pos_; v = v - term(); }
            else return v;
        }
    }

    BigFloat term() {
        BigFloat v = factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') { ++pos_; v = v * factor(); }
            else if (peek() == '/') { ++pos_; v = v / factor(); }
            else return v;
        }
    }

    BigFloat factor() {
        skip_ws();
        char c = peek();
        if (c == '-') { ++pos_; return -factor(); }
        if (c == '(') {
            ++pos_;
            BigFloat v = expr();
            expect(')');
            return v;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name;
            while (std::isalpha(static_cast<unsigned char>(peek()))) name += s_[pos_++];
            expect('(');
            BigFloat v = expr();
            expect(')');
            if (name == "sqrt") return sqrt(v);
            if (name == "cbrt") return cbrt(v);
            fail("unknown function '" + name + "'");
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            if (peek() == '.') {
                ++pos_;
                while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            }
            if (peek() == 'e' || peek() == 'E') {
                ++pos_;
                if (peek() == '+' || peek() == '-') ++pos_;
                if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("bad exponent");
                while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            }
            return BigFloat::parse(s_.substr(start, pos_ - start), prec_);
        }
        fail("expected a value");
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    const std::string& s_;
    mpfr_prec_t prec_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Evaluate a decimal literal or small constant expression at `prec` bits.
inline BigFloat parse_real_expr(const std::string& text, mpfr_prec_t prec = 256) {
    return detail::ExprParser(text, prec).parse();
}

} // namespace laplim
