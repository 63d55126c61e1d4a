#include "cecd/dot.hpp"

#include <map>
#include <sstream>
#include <vector>

namespace cecd {

namespace {

std::string node_name(const BlockId& id) {
  std::string s = id;
  for (char& c : s)
    if (c == '.') c = '_';
  return s;
}

std::string escape_label(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

void emit_node(std::ostream& os, const BasicBlock& b, bool in_d, int indent) {
  std::string pad(indent, ' ');
  os << pad << node_name(b.id) << " [label=\"" << escape_label(b.id) << "\\n"
     << b.instrs.size() << (b.instrs.size() == 1 ? " instr" : " instrs")
     << "\"";
  if (in_d) os << ", style=filled, fillcolor=lightgoldenrod";
  os << "];\n";
}

const char* kind_suffix(CopyKind k) {
  switch (k) {
    case CopyKind::True: return "t";
    case CopyKind::False: return "f";
    case CopyKind::Unknown: return "u";
  }
  return "?";
}

} // namespace

std::string emit_dot(const Program& p,
                     const std::optional<AnalysisResult>& annotations) {
  std::ostringstream os;
  os << "digraph cecd {\n";
  os << "  node [shape=box, fontname=\"monospace\"];\n";

  auto in_d = [&](std::size_t i) {
    return annotations && i < annotations->d.size() && annotations->d[i];
  };

  if (annotations) {
    // Group copies by kind so the duplicated halves read as columns.
    std::map<CopyKind, std::vector<std::size_t>> clusters;
    std::vector<std::size_t> plain;
    for (std::size_t i = 0; i < p.blocks().size(); ++i) {
      const BasicBlock& b = p.blocks()[i];
      if (b.origin)
        clusters[b.origin->kind].push_back(i);
      else
        plain.push_back(i);
    }
    for (std::size_t i : plain) emit_node(os, p.blocks()[i], in_d(i), 2);
    for (const auto& [kind, members] : clusters) {
      os << "  subgraph cluster_" << kind_suffix(kind) << " {\n";
      os << "    label=\"." << kind_suffix(kind) << " copies\";\n";
      os << "    style=dashed;\n";
      for (std::size_t i : members) emit_node(os, p.blocks()[i], in_d(i), 4);
      os << "  }\n";
    }
  } else {
    for (std::size_t i = 0; i < p.blocks().size(); ++i)
      emit_node(os, p.blocks()[i], false, 2);
  }

  for (const BasicBlock& b : p.blocks()) {
    if (const auto* gt = std::get_if<GotoTerm>(&b.term)) {
      os << "  " << node_name(b.id) << " -> " << node_name(gt->target)
         << ";\n";
    } else if (const auto* br = std::get_if<BranchTerm>(&b.term)) {
      std::string cond = escape_label(to_string(br->cond));
      os << "  " << node_name(b.id) << " -> " << node_name(br->on_true)
         << " [label=\"" << cond << " true\"];\n";
      os << "  " << node_name(b.id) << " -> " << node_name(br->on_false)
         << " [label=\"" << cond << " false\"];\n";
    }
  }

  os << "}\n";
  return os.str();
}

} // namespace cecd
