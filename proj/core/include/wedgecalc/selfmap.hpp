#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wedgecalc/calculus.hpp"
#include "wedgecalc/matrix.hpp"

namespace wedgecalc {

// A basepointed self-map of the wedge, recorded by its restriction to each
// sphere summand.  Images are elements of the summand's degree.  Opaque
// summands always map identically.
struct SelfMap {
    ShapePtr shape;
    // keyed by (dim, idx)
    std::map<std::pair<int, int>, Element> images;

    const Element& image_of(int dim, int idx) const;
};

SelfMap identity_map(const ShapePtr& shape);

// Push a map forward: F . e, termwise on the canonical basis.  Functorial:
// apply(compose_maps(F,G), e) == apply(F, apply(G, e)).
Element apply(const SelfMap& f, const Element& e);

// F1 after F2.
SelfMap compose_maps(const SelfMap& f1, const SelfMap& f2);

// Degree-block matrices read off a map / an attaching element.
//
// classifier:  Qf (deg n-1 block), Qh (deg n+1 block), M (coefficients of
//              the mixed brackets [iota_{n-1}^i, iota_{n+1}^j]).
// splitter:    Qf / Qmid / Qh (degrees n-1, n, n+1), C (mod-2 coefficients
//              of iota_{n-1}.eta inside the S^n images), A (mod-2 G-sector
//              coefficients of phi), B (K2 sector: b_ij = bracket
//              coefficients for i < j, b_ji = (-1)^n b_ij, b_ii = Hopf
//              invariant of the S^n_i composite part).
struct MatrixBundle {
    IntMat Qf, Qh;
    std::optional<IntMat> Qmid; // splitter deg-n block
    std::optional<IntMat> M;    // classifier
    std::optional<Mod2Mat> C;   // splitter map
    std::optional<Mod2Mat> A;   // splitter element
    std::optional<IntMat> B;    // splitter element
};

// Matrices of a self-map.  Splitter C extraction requires the deg-n block
// to be the identity (shear shape); it is skipped (left empty) otherwise.
MatrixBundle extract(const SelfMap& f);

// Matrices of an attaching element of degree 2n-1.  Throws MissingDataError
// if some K2 composite has undeclared Hopf invariant (splitter B diagonal).
MatrixBundle extract(const Element& phi);

// All diagonal degree blocks invertible over Z (det +-1).
bool is_equivalence(const SelfMap& f);

// Generator moves.
//
// move_F(i,j):  S^{n+1}_i +-> iota_{n+1}^i + iota_{n-1}^j . eta^2, i != j.
// move_G(r,s,t,c): n = 4 only. S^5_r +-> iota_5^r + c*[iota_3^s, iota_3^t],
//               (s,t) a valid bracket pair; c-fold power of the unit move.
// shear(C):     splitter. S^n_j +-> iota_n^j + sum_s C[s][j] iota_{n-1}^s . eta.
// diag(Qf,Qh):  classifier. S^{n-1}_j +-> sum Qf[i][j] iota^i, likewise Qh.
// pair_move(i,j): the torsion-trading equivalence on summand pair (i,j),
//               n = 4: f = iota_3^i on S^3_i, iota_5^i - iota_5^j on S^5_i,
//               iota_3^i + iota_3^j on S^3_j, iota_5^j on S^5_j.
SelfMap move_F(const ShapePtr& shape, int i, int j);
SelfMap move_G(const ShapePtr& shape, int r, int s, int t, const Coeff& c = 1);
SelfMap shear(const ShapePtr& shape, const Mod2Mat& C);
SelfMap diag(const ShapePtr& shape, const IntMat& Qf, const IntMat& Qh);
SelfMap pair_move(const ShapePtr& shape, int i, int j);

// Exact inverse for maps built out of the generator moves above (and their
// compositions when tracked).  Each generator has a closed-form inverse;
// callers needing inverses of arbitrary maps should keep move lists.
SelfMap inverse_of_diag(const SelfMap& f);

// A move list that remembers how to undo itself.  Moves are stored in
// application order: forward[0] hits the element first, so
// fold() = forward[p-1] . ... . forward[0] and fold_inverse() undoes them
// in reverse.
struct MoveChain {
    ShapePtr shape;
    std::vector<SelfMap> forward;
    std::vector<SelfMap> backward; // inverses, same indexing

    void push(SelfMap fwd, SelfMap bwd);
    SelfMap fold() const;          // single SelfMap equal to the chain
    SelfMap fold_inverse() const;
    bool empty() const { return forward.empty(); }
};

} // namespace wedgecalc
