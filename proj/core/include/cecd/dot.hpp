#pragma once

#include <optional>
#include <string>

#include "cecd/analysis.hpp"
#include "cecd/ir.hpp"

namespace cecd {

// Graphviz rendering of a program's control flow graph. Node labels carry the
// block id and its instruction count; branch edges are labeled with the
// condition and which way they go. When an analysis result is supplied,
// blocks in D are highlighted and duplicated blocks are grouped into
// clusters by copy kind so before/after graphs line up visually.
std::string emit_dot(const Program& p,
                     const std::optional<AnalysisResult>& annotations = {});

} // namespace cecd
