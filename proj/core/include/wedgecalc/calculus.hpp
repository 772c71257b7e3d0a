#pragma once

#include "wedgecalc/element.hpp"

namespace wedgecalc {

// Whitehead product, bilinear in both slots.  Rewrites to canonical form:
//   - factors sorted by (dim, idx), the graded swap sign (-1)^{pq} going
//     into the coefficient;
//   - [iota_3^i, iota_3^i] = 0 at n = 4 (S^3 is an H-space);
//   - composite factors are absorbed into the bracket's outer chain,
//     [x.sigma, y] = [x,y].Sigma^{deg y - 1} sigma (eta chains only);
//   - weight-3 brackets on the S^3 inclusions (n = 4) rewrite into the Hall
//     range s <= r, s < t through the graded Jacobi identity;
//   - splitter mode: brackets with both factors in K1 collapse to an Opaque
//     bucket keyed by the canonical print.
// Throws UnsupportedError when the result degree is outside the model.
Element whitehead(const Element& a, const Element& b);

// [a,b] . tail without materializing the bare bracket, for cases where the
// bracket degree itself is outside the model but bracket+tail is not (the
// n >= 5 C-terms).  tail must be an eta chain.
Element whitehead(const Element& a, const Element& b, const Comp& tail);

// Right composition e . sigma where sigma is a chain with target dim equal
// to the degree of e.  Suspended chains compose termwise.  Otherwise the
// two-summand law iterates to
//   (sum c_t t) . sigma = sum c_t (t.sigma) + correction,
//   correction = H0(sigma) applied to  sum_{s<t} c_s c_t [s,t]
//                                    + sum_t   C(c_t,2) [t,t],
// where H0 is the Hopf-type invariant: H(sigma) * id for sigma in
// pi_{2n-1}(S^n) with declared Hopf invariant, and eta^2 for nu'eta.
// Throws MissingDataError when a correction is required but sigma's
// invariant is unknown; UnsupportedError for unmodeled degrees.
Element compose(const Element& e, const Comp& sigma);

} // namespace wedgecalc
