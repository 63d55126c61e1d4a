#pragma once

#include <string>

#include "cecd/ir.hpp"

namespace cecd {

// Deterministic textual form; parse_program(print_program(p)) is
// structurally identical to p.
std::string print_program(const Program& p);

std::string print_instr(const Instruction& in);
std::string print_term(const Terminator& t);

} // namespace cecd
