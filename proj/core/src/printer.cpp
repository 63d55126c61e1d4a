#include "cecd/printer.hpp"

namespace cecd {

std::string print_instr(const Instruction& in) {
  if (const auto* a = std::get_if<AssignInstr>(&in))
    return a->target + " = " + to_string(a->value) + ";";
  if (const auto* i = std::get_if<InputInstr>(&in))
    return i->target + " = input;";
  return "print " + to_string(std::get<PrintInstr>(in).value) + ";";
}

std::string print_term(const Terminator& t) {
  if (const auto* g = std::get_if<GotoTerm>(&t)) return "goto " + g->target + ";";
  if (const auto* b = std::get_if<BranchTerm>(&t))
    return "br " + to_string(b->cond) + " " + b->on_true + " " + b->on_false + ";";
  return "exit;";
}

std::string print_program(const Program& p) {
  std::string out;
  // The entry directive is only needed when the entry is not first.
  if (p.entry() != p.blocks().front().id)
    out += "entry " + p.entry() + ";\n";
  bool first = true;
  for (const auto& b : p.blocks()) {
    if (!first) out += '\n';
    first = false;
    out += "block " + b.id + " {\n";
    for (const auto& in : b.instrs) out += "  " + print_instr(in) + "\n";
    out += "  " + print_term(b.term) + "\n";
    out += "}\n";
  }
  return out;
}

} // namespace cecd
