#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "wedgecalc/coeff.hpp"

namespace wedgecalc {

class WedgeShape;

// One factor of a composition chain attached to a sphere inclusion or a
// Whitehead product.  eta is the suspended Hopf class (order 2 in every
// degree we use); nu_prime is the order-2 composite generating pi_7(S^3),
// which is not a suspension.  Atoms are user- or shape-declared classes
// known only by their declared data.
struct CompUnit {
    enum class Kind { eta, nu_prime, atom };
    Kind kind = Kind::eta;
    std::string atom_id; // atom only

    friend auto operator<=>(const CompUnit&, const CompUnit&) = default;
    friend bool operator==(const CompUnit&, const CompUnit&) = default;
};

// A composition chain, applied left to right: parts {u1,u2} on iota means
// iota . u1 . u2.  Empty parts = identity.  Dims are contextual: a chain
// sitting on a degree-d generator raises the source degree by the sum of the
// units' degree shifts.
struct Comp {
    std::vector<CompUnit> parts;

    bool is_identity() const { return parts.empty(); }
    friend auto operator<=>(const Comp&, const Comp&) = default;
    friend bool operator==(const Comp&, const Comp&) = default;
};

// Declared datum for an abstract class: everything the calculus may ever use.
// order: m finite, 0 infinite, -1 unknown.  hopf: nullopt = not declared.
// Atoms with finite order always have Hopf invariant 0 (the Hopf invariant
// is a homomorphism to Z), enforced at registration.
struct AtomDecl {
    std::string id;
    int target_dim = 0;
    int source_dim = 0;
    int order = kOrderUnknown;
    bool suspended = false;
    std::optional<Coeff> hopf;
};

Comp comp_identity();
Comp comp_eta();    // {eta}
Comp comp_eta_sq(); // {eta,eta}
Comp comp_nu_prime_eta();
Comp comp_atom(const std::string& id);

// Degree the chain adds on top of its target dim (eta: +1, nu': +4, atom: declared).
int comp_degree_shift(const WedgeShape& shape, const Comp& c);

// True iff every unit is a suspension, hence right-composition by the chain
// is additive.
bool comp_suspended(const WedgeShape& shape, const Comp& c);

// Order bound of iota.chain as a group element: divides the result.  Exact
// for catalog chains; a divisor bound for compounds (equality on those is
// syntactic anyway).
int comp_order(const WedgeShape& shape, const Comp& c);

// Hopf invariant of the chain as a class in pi_{2n-1}(S^n); nullopt = unknown.
std::optional<Coeff> comp_hopf(const WedgeShape& shape, const Comp& c);

// Validate a chain against its starting dimension: eta needs dims >= 3,
// nu'eta starts exactly on S^3, atoms must be declared and target the
// dimension the chain has reached, nothing follows nu'eta, and no four
// consecutive eta units (that chain is null, not canonical).
void check_chain_context(const WedgeShape& shape, int start_dim, const Comp& c);

// Result of appending one chain after another.
struct ChainResult {
    bool is_zero = false; // the composite vanishes (eta^4 rule)
    Comp comp;            // valid when !is_zero
};

// Append sigma after c.  Throws UnsupportedError for chains past nu_prime.
// Zero detection: any four consecutive eta units vanish (the length-4 eta
// chain from S^3 is null, and every higher-dimensional instance is its
// suspension).
ChainResult chain(const Comp& c, const Comp& sigma);

// Canonical text of a chain without the leading dot, e.g. "eta2.b".
// Empty string for identity.
std::string comp_str(const Comp& c);

} // namespace wedgecalc
