#pragma once

#include "idt/formula.hpp"

namespace idt {

/// Semantics-preserving clean-up used for presenting leaf-set formulas:
/// double negation, Top/bottom absorption, flattening, duplicate removal, and
/// merging of threshold tests on the same (S, child) pair into interval form
/// (so the printer can show them with <, >, = sugar). Also drops trivial
/// tests such as `0 f > n` and `I f > 0`.
Formula simplify(const Formula& f);

}  // namespace idt
