#pragma once

#include <string>

#include "idt/idt.hpp"
#include "idt/syntax.hpp"

namespace idt {

/// Indented text rendering: each layer's trees with their splits and leaf
/// sets, the pool entries they define, the final tree with class labels, and
/// the per-class rules over the original atoms.
std::string explain_text(const Idt& idt, Notation notation = Notation::kAscii);

/// Graphviz description with one cluster per layer plus the final tree.
std::string explain_dot(const Idt& idt);

}  // namespace idt
