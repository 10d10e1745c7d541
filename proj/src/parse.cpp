#include "qc/parse.hpp"

#include <cctype>

namespace qc {

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    MultiPoly run() {
        skip();
        if (pos_ == s_.size()) throw parse_error("empty expression", pos_);
        MultiPoly p = expr();
        skip();
        if (pos_ != s_.size()) throw parse_error(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return p;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MultiPoly expr() {
        MultiPoly acc = term();
        for (;;) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    MultiPoly term() {
        MultiPoly acc = unary();
        for (;;) {
            if (accept('*')) {
                acc = acc * unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                MultiPoly d = unary();
                if (!d.is_constant() || d.is_zero()) throw parse_error("division by a non-constant or zero", at);
                acc *= Rational(1 / d.constant_term());
            } else {
                return acc;
            }
        }
    }

    MultiPoly unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    MultiPoly power() {
        MultiPoly base = atom();
        if (accept('^')) {
            skip();
            std::size_t at = pos_;
            if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '('))
                throw parse_error("exponent must be a nonnegative integer literal", at);
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                throw parse_error("exponent must be a nonnegative integer literal", at);
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == '/'))
                throw parse_error("exponent must be a nonnegative integer literal", at);
            std::string digits(s_.substr(start, pos_ - start));
            if (digits.size() > 18) throw parse_error("exponent too large", at);
            return base.pow(std::stoull(digits));
        }
        return base;
    }

    MultiPoly atom() {
        skip();
        if (pos_ >= s_.size()) throw parse_error("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly e = expr();
            if (!accept(')')) throw parse_error("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '.') throw parse_error("decimal literals are not supported", pos_);
            return MultiPoly(Rational(Integer(std::string(s_.substr(start, pos_ - start)), 10)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string_view id = s_.substr(start, pos_ - start);
            int idx = VariableTable::index_of(id);
            if (idx < 0) throw parse_error("unknown identifier '" + std::string(id) + "'", start);
            return MultiPoly::variable(idx);
        }
        throw parse_error(std::string("unexpected '") + c + "'", pos_);
    }
};

}  // namespace

MultiPoly parse(std::string_view text) { return Parser(text).run(); }

}  // namespace qc
