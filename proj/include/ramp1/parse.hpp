#pragma once

// Expression grammar for maps, polynomials and points:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ['^' posint]
//   atom   := integer | 'x' | 'g' | '(' expr ')'
//   map    := expr ['/' expr]
// Division appears only at the top level of a map. Integer coefficients
// reduce mod p; 'g' is the power-basis generator of an extension field;
// points are constant expressions or the token 'inf'.

#include <string>

#include "ramp1/poly.hpp"

namespace ramp1 {

RatMap parse_map_expression(const std::string& text, const FieldSpec* spec);
Poly parse_poly_expression(const std::string& text, const FieldSpec* spec);
PointP1 parse_point(const std::string& text, const FieldSpec* spec);
FieldElem parse_element(const std::string& text, const FieldSpec* spec);

}  // namespace ramp1
