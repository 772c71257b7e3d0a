#pragma once

#include <compare>
#include <string>
#include <tuple>

#include "wedgecalc/composition.hpp"
#include "wedgecalc/shape.hpp"

namespace wedgecalc {

// A canonical basis symbol.
//
//   incl    iota_{a_dim}^{a_idx} . comp
//   wh      [iota_{a_dim}^{a_idx}, iota_{b_dim}^{b_idx}] . comp
//           factors sorted by (dim, idx); the sort sign lives in the
//           element coefficient
//   wh3     [iota^{r}, [iota^{s}, iota^{t}]] on the (n-1)-spheres
//           (n = 4 classifier only), Hall-normal: s <= r, s < t;
//           stored as (a_idx, b_dim, b_idx) = (r, s, t)
//   opaque  an untracked residue of the splitter K1 top group, keyed by the
//           canonical print of the unexpanded expression
struct Term {
    enum class Kind { incl, wh, wh3, opaque };

    Kind kind = Kind::incl;
    int a_dim = 0, a_idx = 0; // incl base; wh left factor; wh3 r
    int b_dim = 0, b_idx = 0; // wh right factor; wh3 (s, t) in (b_dim, b_idx)
    Comp comp;                // incl, wh
    std::string key;          // opaque

    static Term incl(int dim, int idx, Comp c = comp_identity());
    static Term wh(int ldim, int lidx, int rdim, int ridx, Comp c = comp_identity());
    static Term wh3(int r, int s, int t);
    static Term opaque(std::string key);

    friend auto operator<=>(const Term&, const Term&) = default;
    friend bool operator==(const Term&, const Term&) = default;
};

// Degree of the term inside the given shape.
int term_degree(const WedgeShape& shape, const Term& t);

// Order of the term as a group element: m finite, 0 infinite, -1 unknown.
// Wh terms with identity chains are infinite; chains bound the order.
int term_order(const WedgeShape& shape, const Term& t);

// Canonical grammar text: i(3,1).nu'eta, W(i(3,1),i(5,2)), W3(2,1,3),
// O("..."), ...
std::string term_str(const Term& t);

} // namespace wedgecalc
