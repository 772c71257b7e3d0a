#pragma once

#include "wedgecalc/selfmap.hpp"

namespace wedgecalc {

// Element grammar (whitespace insignificant):
//
//   elem  := ['-'] term (('+'|'-') term)* | '0'
//   term  := [int '*'] gen
//   gen   := 'i(' dim ',' idx ')' comps
//          | 'W(' gen ',' gen ')' comps
//          | 'W3(' idx ',' idx ',' idx ')'
//          | 'O(' string ')'
//   comps := ('.' comp)*
//   comp  := 'eta' | 'eta2' | "nu'eta" | ident
//
// W operands are evaluated through the calculus, so W(i(3,1),i(3,1))
// normalizes to 0.  idents name declared atoms of the shape.  The degree is
// inferred and must be uniform across terms and supported by the shape.
Element parse_element(const std::string& text, const ShapePtr& shape);

// As above but for a zero element whose degree cannot be inferred ("0"),
// the declared degree is used.
Element parse_element(const std::string& text, const ShapePtr& shape, int degree_hint);

// Self-map syntax: semicolon-separated assignments, every sphere summand
// present exactly once:
//
//   map    := assign (';' assign)*
//   assign := 'i(' dim ',' idx ')' '->' elem
SelfMap parse_selfmap(const std::string& text, const ShapePtr& shape);

std::string to_string(const SelfMap& f);

} // namespace wedgecalc
