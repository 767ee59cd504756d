#pragma once

#include <cstddef>

#include "idt/formula.hpp"
#include "idt/idt.hpp"

namespace idt {

/// Largest number of distinct guards one level may have; the construction
/// builds a perfect tree with 2^h leaves per level.
inline constexpr std::size_t kMaxGuardsPerLevel = 16;

/// Builds an IDT with max(1, depth(f)) layers equivalent to f. Depth-0
/// positions are padded with `I phi > 0`; each level's layer is the perfect
/// tree over that level's distinct guards `S phi > n`, and every needed
/// Boolean combination is emitted as the leaf set of satisfying assignments.
///
/// The result classifies a graph as 1 iff every node satisfies f, and its
/// node_output entry is true exactly where f holds. atom_count is raised to
/// atom_bound(f) if smaller. Throws LimitError when a level has more than
/// kMaxGuardsPerLevel guards.
Idt compile_formula_to_idt(const Formula& f, std::size_t atom_count = 0);

/// f rewritten so that every guard at nesting level d (counted from the
/// innermost) quantifies a formula of depth exactly d-1: each maximal
/// subformula shallower than its level is wrapped in `I(.) > 0`. `depth` must
/// be at least max(1, formula_depth(f)).
Formula normalize_depth(const Formula& f, std::size_t depth);

}  // namespace idt
