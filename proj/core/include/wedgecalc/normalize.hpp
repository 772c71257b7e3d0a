#pragma once

#include "wedgecalc/selfmap.hpp"

namespace wedgecalc {

// Connected-sum splitting (splitter mode).  Given phi of degree 2n-1 with
// unimodular K2 block B, produces the shear witness w with C_w = A * B^{-1}
// (mod 2), so that apply(w, phi) has vanishing mixed G-sector, and the split
// phi1 (K1 part, possibly opaque) + phi2 (K2 part).  Audited internally:
// extract(apply(w, phi)).A == 0 and phi1 + phi2 == apply(w, phi) exactly.
// Throws PreconditionError when det B is not +-1 (reports the determinant).
struct SplitResult {
    SelfMap witness;
    Element phi_transformed; // apply(witness, phi)
    Element phi1;            // lands in K1
    Element phi2;            // lands in K2
};
SplitResult split_connected_sum(const Element& phi);

// Per-summand normal form (classifier mode).  Brings the mixed-bracket
// block to the identity with the diagonal witness Qf = M^{-1}, Qh = I, then
// cancels the bracket-torsion sector in canonical order with the F / G
// moves (G only at n = 4, with the engine-detected eta^2 fix-up).  For
// n >= 5 the sphere-local torsion may pick up residue from the F moves;
// that is reported, not cancelled.
struct SummandPair {
    Element alpha; // S^{n-1}_i part of the torsion sector
    Element beta;  // S^{n+1}_i part
};
struct NormalizeResult {
    MoveChain witness;
    Element normal_form;
    std::vector<SummandPair> pairs;
    bool b_residue = false; // n >= 5: sphere-local torsion changed during cancellation
};
NormalizeResult normalize_attaching_map(const Element& phi);

} // namespace wedgecalc
