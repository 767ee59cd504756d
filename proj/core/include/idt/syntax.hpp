#pragma once

#include <string>
#include <string_view>

#include "idt/formula.hpp"

namespace idt {

/// Parses the concrete grammar
///
///   formula := or
///   or      := and ('|' and)*
///   and     := unary ('&' unary)*
///   unary   := '!' unary | '(' formula ')' | atom | modal
///   atom    := 'U' nat | 'T'
///   modal   := S '(' formula ')' cmp | S atom cmp
///   S       := '0' | '1' | 'I' | 'A' | '1-I' | '1-A' | 'I+A' | '1-I-A'
///   cmp     := ('>' | '<' | '=' | '>=' | '<=') (nat | decimal | nat '/' nat)
///
/// Whitespace is ignored; the UTF-8 symbols for not/and/or are accepted as
/// aliases of '!', '&', '|'. Fractions "p/q" are accepted next to decimals.
///
/// A natural threshold is a counting test; a decimal or fraction is a relative
/// test and must lie strictly between 0 and 1. Sugar desugars as
///   S f <  n  ->  !(S f > n-1)            (n = 0: !T)
///   S f <= n  ->  !(S f > n)
///   S f >= n  ->  S f > n-1               (n = 0: T)
///   S f =  n  ->  (S f > n-1) & !(S f > n) (n = 0: !(S f > 0))
///   S f <= p  ->  !(S f > p)
///   S f <  p  ->  S(!f) > 1-p
///   S f >= p  ->  !(S(!f) > 1-p)
///   S f =  p  ->  !(S f > p) & !(S(!f) > 1-p)
///
/// Throws ParseError carrying the byte offset of the problem.
Formula parse_formula(std::string_view text);

enum class Notation { kAscii, kUnicode };

/// Prints `f` so that parse_formula(render_formula(f)) == f. Common desugared
/// shapes print with their sugar: !(S f > 0) as "S f = 0", !(S f > n) as
/// "S f < n+1", (S f > n-1) & !(S f > n) as "S f = n", !(S f > p) as "S f <= p".
std::string render_formula(const Formula& f, Notation notation = Notation::kAscii);

}  // namespace idt
