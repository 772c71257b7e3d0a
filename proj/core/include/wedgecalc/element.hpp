#pragma once

#include <map>
#include <string>
#include <vector>

#include "wedgecalc/coeff.hpp"
#include "wedgecalc/term.hpp"

namespace wedgecalc {

// A normalized element of pi_d(wedge): a finite Z-combination of canonical
// Terms, coefficients reduced into [0, order) for finite-order terms, zero
// coefficients dropped.  Elements are immutable values; the map keeps terms
// in canonical basis order.
class Element {
  public:
    Element(ShapePtr shape, int degree);                       // zero
    Element(ShapePtr shape, int degree, const Term& t, Coeff c = 1);
    Element(ShapePtr shape, int degree, std::map<Term, Coeff> terms);

    const ShapePtr& shape() const { return shape_; }
    int degree() const { return degree_; }
    const std::map<Term, Coeff>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    Coeff coeff(const Term& t) const;

    friend bool operator==(const Element& a, const Element& b);

  private:
    void reduce();

    ShapePtr shape_;
    int degree_ = 0;
    std::map<Term, Coeff> terms_;
};

// Group operations.  add/sub require equal degree and equal shape.
Element add(const Element& a, const Element& b);
Element sub(const Element& a, const Element& b);
Element negate(const Element& e);
Element scale(const Coeff& c, const Element& e);

// The ordered basis of pi_d(wedge) in the range the calculus models.
// classifier n = 4, d = 5 enumerates pi_5 of the S^3 sub-wedge (the range
// the equivalence images need); pass full_range = true to include the
// S^5 inclusions as well.  Throws UnsupportedError for other (shape, d).
std::vector<Term> degree_basis(const ShapePtr& shape, int d, bool full_range = false);

// Canonical text, parseable back by parse_element.  Zero prints "0".
std::string to_string(const Element& e);

} // namespace wedgecalc
