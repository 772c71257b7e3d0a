#include "wedgecalc/term.hpp"

#include <numeric>

#include "wedgecalc/errors.hpp"

namespace wedgecalc {

Term Term::incl(int dim, int idx, Comp c) {
    Term t;
    t.kind = Kind::incl;
    t.a_dim = dim;
    t.a_idx = idx;
    t.comp = std::move(c);
    return t;
}

Term Term::wh(int ldim, int lidx, int rdim, int ridx, Comp c) {
    Term t;
    t.kind = Kind::wh;
    t.a_dim = ldim;
    t.a_idx = lidx;
    t.b_dim = rdim;
    t.b_idx = ridx;
    t.comp = std::move(c);
    return t;
}

Term Term::wh3(int r, int s, int t) {
    Term x;
    x.kind = Kind::wh3;
    x.a_idx = r;
    x.b_dim = s;
    x.b_idx = t;
    return x;
}

Term Term::opaque(std::string key) {
    Term t;
    t.kind = Kind::opaque;
    t.key = std::move(key);
    return t;
}

int term_degree(const WedgeShape& shape, const Term& t) {
    switch (t.kind) {
        case Term::Kind::incl:
            return t.a_dim + comp_degree_shift(shape, t.comp);
        case Term::Kind::wh:
            return t.a_dim + t.b_dim - 1 + comp_degree_shift(shape, t.comp);
        case Term::Kind::wh3:
            // triple bracket of (n-1)-spheres: (n-1)+(n-1)-1+(n-1)-1 = 3n-5,
            // equal to 2n-1 exactly at n = 4
            return 3 * shape.n() - 5;
        case Term::Kind::opaque:
            return 2 * shape.n() - 1;
    }
    return 0;
}

int term_order(const WedgeShape& shape, const Term& t) {
    switch (t.kind) {
        case Term::Kind::incl: {
            if (t.comp.is_identity()) return kOrderInfinite;
            return comp_order(shape, t.comp);
        }
        case Term::Kind::wh: {
            bool self = t.a_dim == t.b_dim && t.a_idx == t.b_idx;
            // [iota_m, iota_m] has order 2 for m odd; distinct-factor products
            // and even self-brackets generate free summands.
            int base = (self && t.a_dim % 2 == 1) ? 2 : kOrderInfinite;
            if (t.comp.is_identity()) return base;
            long long g = 0;
            int co = comp_order(shape, t.comp); // bounds the composite always
            if (co >= 1) g = co;
            if (base >= 1 && comp_suspended(shape, t.comp))
                g = g == 0 ? base : std::gcd(g, (long long)base);
            return g >= 1 ? int(g) : kOrderUnknown;
        }
        case Term::Kind::wh3:
            return kOrderInfinite; // Hall basis element of the free Lie ring
        case Term::Kind::opaque:
            return kOrderUnknown;
    }
    return kOrderUnknown;
}

std::string term_str(const Term& t) {
    auto dot = [](const Comp& c) {
        std::string s = comp_str(c);
        return s.empty() ? s : "." + s;
    };
    switch (t.kind) {
        case Term::Kind::incl:
            return "i(" + std::to_string(t.a_dim) + "," + std::to_string(t.a_idx) + ")" + dot(t.comp);
        case Term::Kind::wh:
            return "W(i(" + std::to_string(t.a_dim) + "," + std::to_string(t.a_idx) + "),i(" +
                   std::to_string(t.b_dim) + "," + std::to_string(t.b_idx) + "))" + dot(t.comp);
        case Term::Kind::wh3:
            return "W3(" + std::to_string(t.a_idx) + "," + std::to_string(t.b_dim) + "," +
                   std::to_string(t.b_idx) + ")";
        case Term::Kind::opaque:
            return "O(\"" + t.key + "\")";
    }
    return "";
}

} // namespace wedgecalc
