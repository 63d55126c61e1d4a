#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "cecd/ir.hpp"

namespace cecd {

class ParseError : public std::runtime_error {
public:
  ParseError(int line, int col, const std::string& what)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) +
                           ": " + what),
        line_(line), col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

private:
  int line_;
  int col_;
};

// Grammar:
//   program   := directive* block+
//   directive := "entry" IDENT ";"
//   block     := "block" IDENT "{" instr* term "}"
//   instr     := IDENT "=" "input" ";" | IDENT "=" expr ";" | "print" expr ";"
//   term      := "goto" IDENT ";" | "br" expr IDENT IDENT ";" | "exit" ";"
// Infix expressions with conventional precedence; "#" comments run to end of
// line. The first block is the entry unless an entry directive says otherwise.
// Block ids of the form <base>.t/.f/.u carry copy-origin metadata.
Program parse_program(std::string_view text);

// Parses a standalone expression; trailing input is an error.
ExprPtr parse_expr(std::string_view text);

} // namespace cecd
