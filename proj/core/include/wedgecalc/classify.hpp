#pragma once

#include "wedgecalc/normalize.hpp"

namespace wedgecalc {

// The five homotopy types of rank-k attaching maps at n = 4 (k >= 1):
//   T         no torsion: sum [iota_3^i, iota_5^i]
//   X10       + iota_3^1 . nu'eta
//   X01       + iota_5^1 . eta2
//   X11       + iota_3^1 . nu'eta + iota_5^1 . eta2
//   X10_X01   + iota_3^1 . nu'eta + iota_5^2 . eta2   (k >= 2)
enum class ClassKind { T, X10, X01, X11, X10_X01 };

std::string class_name(ClassKind c);

struct ClassLabel {
    int k = 0;
    ClassKind kind = ClassKind::T;
    Element normal_form;
};

// Reduced canonical form plus the witness chain phi -> normal_form.  Every
// rewrite step is realized by an explicit self-equivalence and re-verified
// through apply.  Requires classifier n = 4 and phi inside the degree-7
// catalog with unimodular mixed block.
struct CanonicalizeResult {
    ClassLabel label;
    MoveChain witness;
};
CanonicalizeResult canonicalize(const Element& phi);

// (has nu'-torsion, has eta2-torsion, alignment parity sum r_i s_i mod 2),
// read off a normal form.  Invariant of the equivalence class.
struct Obstruction {
    bool has_nu = false;
    bool has_eta = false;
    bool alignment = false;

    friend bool operator==(const Obstruction&, const Obstruction&) = default;
};
Obstruction obstruction_vector(const Element& normal_form);

// Decide equivalence of attaching maps (same shape, degree 2n-1), per the
// criterion psi = +-f.phi for a self-equivalence f.
//
//   yes      canonical forms agree; witness assembled and verified
//   no       a proved invariant separates them (class label, obstruction
//            vector, or Smith invariants of the mixed block)
//   unknown  neither within the search budget
enum class Verdict { yes, no, unknown };

struct EquivalenceResult {
    Verdict verdict = Verdict::unknown;
    std::optional<SelfMap> witness;      // yes: apply(witness, phi) == psi,
                                         // or == -psi when negated is set
    bool negated = false;                // sign is not realizable by a map,
                                         // so it is reported separately
    std::string obstruction;             // no: which invariant separates
    long nodes_explored = 0;             // search effort, when a search ran
};
EquivalenceResult equivalent(const Element& phi, const Element& psi, long budget = 20000);

} // namespace wedgecalc
