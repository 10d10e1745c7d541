#pragma once

#include "qc/poly.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace qc {

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

// Grammar (see docs/grammar.md):
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*        division only by nonzero constants
//   unary  := ('+' | '-') unary | power
//   power  := atom ('^' integer)?
//   atom   := integer | identifier | '(' expr ')'
MultiPoly parse(std::string_view text);

}  // namespace qc
