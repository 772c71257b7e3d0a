#include "wedgecalc/composition.hpp"

#include <numeric>

#include "wedgecalc/errors.hpp"
#include "wedgecalc/shape.hpp"

namespace wedgecalc {

Comp comp_identity() { return {}; }
Comp comp_eta() { return {{{CompUnit::Kind::eta, ""}}}; }
Comp comp_eta_sq() { return {{{CompUnit::Kind::eta, ""}, {CompUnit::Kind::eta, ""}}}; }
Comp comp_nu_prime_eta() { return {{{CompUnit::Kind::nu_prime, ""}}}; }
Comp comp_atom(const std::string& id) { return {{{CompUnit::Kind::atom, id}}}; }

namespace {

const AtomDecl& atom_of(const WedgeShape& shape, const CompUnit& u) {
    const AtomDecl* d = shape.find_atom(u.atom_id);
    if (!d) throw UnsupportedError("unknown abstract class '" + u.atom_id + "'");
    return *d;
}

int unit_shift(const WedgeShape& shape, const CompUnit& u) {
    switch (u.kind) {
        case CompUnit::Kind::eta: return 1;
        case CompUnit::Kind::nu_prime: return 4; // S^3 -> S^7 composite
        case CompUnit::Kind::atom: {
            const AtomDecl& d = atom_of(shape, u);
            return d.source_dim - d.target_dim;
        }
    }
    return 0;
}

bool unit_suspended(const WedgeShape& shape, const CompUnit& u) {
    switch (u.kind) {
        case CompUnit::Kind::eta: return true;
        case CompUnit::Kind::nu_prime: return false;
        case CompUnit::Kind::atom: return atom_of(shape, u).suspended;
    }
    return false;
}

int unit_order(const WedgeShape& shape, const CompUnit& u) {
    switch (u.kind) {
        case CompUnit::Kind::eta: return 2;
        case CompUnit::Kind::nu_prime: return 2;
        case CompUnit::Kind::atom: return atom_of(shape, u).order;
    }
    return kOrderUnknown;
}

} // namespace

int comp_degree_shift(const WedgeShape& shape, const Comp& c) {
    int s = 0;
    for (const auto& u : c.parts) s += unit_shift(shape, u);
    return s;
}

bool comp_suspended(const WedgeShape& shape, const Comp& c) {
    for (const auto& u : c.parts)
        if (!unit_suspended(shape, u)) return false;
    return true;
}

int comp_order(const WedgeShape& shape, const Comp& c) {
    if (c.is_identity()) return kOrderInfinite;
    // order(x.u) divides order(u) always, and divides order(x) when u is a
    // suspension; collect every unit whose right tail is all-suspended.
    long long bound = 0; // 0 = none yet
    bool tail_suspended = true;
    for (auto it = c.parts.rbegin(); it != c.parts.rend(); ++it) {
        if (!tail_suspended) break;
        int o = unit_order(shape, *it);
        if (o >= 1) bound = bound == 0 ? o : std::gcd(bound, (long long)o);
        tail_suspended = tail_suspended && unit_suspended(shape, *it);
    }
    if (bound >= 1) return int(bound);
    return kOrderUnknown;
}

std::optional<Coeff> comp_hopf(const WedgeShape& shape, const Comp& c) {
    if (comp_suspended(shape, c)) return Coeff(0);
    int o = comp_order(shape, c);
    if (o >= 1) return Coeff(0); // torsion classes have zero Hopf invariant
    if (c.parts.size() == 1 && c.parts[0].kind == CompUnit::Kind::atom)
        return atom_of(shape, c.parts[0]).hopf;
    return std::nullopt;
}

void check_chain_context(const WedgeShape& shape, int start_dim, const Comp& c) {
    int cur = start_dim;
    int run = 0;
    for (size_t i = 0; i < c.parts.size(); ++i) {
        const CompUnit& u = c.parts[i];
        if (i > 0 && c.parts[i - 1].kind == CompUnit::Kind::nu_prime)
            throw UnsupportedError("composition past nu'eta is not modeled");
        switch (u.kind) {
        case CompUnit::Kind::eta:
            if (cur < 3)
                throw PreconditionError("eta needs a target sphere of dimension >= 3, got " +
                                        std::to_string(cur));
            if (++run >= 4)
                throw PreconditionError("a length-4 eta chain is null; the canonical form drops it");
            break;
        case CompUnit::Kind::nu_prime:
            if (cur != 3)
                throw PreconditionError("nu'eta is a class on S^3; chain reaches it at dimension " +
                                        std::to_string(cur));
            run = 0;
            break;
        case CompUnit::Kind::atom: {
            const AtomDecl& d = atom_of(shape, u);
            if (d.target_dim != cur)
                throw PreconditionError("abstract class '" + u.atom_id + "' targets S^" +
                                        std::to_string(d.target_dim) + " but the chain is at S^" +
                                        std::to_string(cur));
            run = 0;
            break;
        }
        }
        cur += unit_shift(shape, u);
    }
}

ChainResult chain(const Comp& c, const Comp& sigma) {
    Comp out;
    out.parts = c.parts;
    for (const auto& u : sigma.parts) {
        if (!out.parts.empty() && out.parts.back().kind == CompUnit::Kind::nu_prime)
            throw UnsupportedError("composition past nu'eta is not modeled");
        out.parts.push_back(u);
    }
    // eta^4 vanishes: the length-4 eta chain from S^3 is null and every
    // instance in dims >= 3 is its suspension.
    int run = 0;
    for (const auto& u : out.parts) {
        run = (u.kind == CompUnit::Kind::eta) ? run + 1 : 0;
        if (run >= 4) return {true, {}};
    }
    return {false, std::move(out)};
}

std::string comp_str(const Comp& c) {
    std::string s;
    auto emit = [&s](const std::string& piece) {
        if (!s.empty()) s += '.';
        s += piece;
    };
    size_t i = 0;
    while (i < c.parts.size()) {
        const CompUnit& u = c.parts[i];
        if (u.kind == CompUnit::Kind::eta) {
            size_t run = 0;
            while (i + run < c.parts.size() && c.parts[i + run].kind == CompUnit::Kind::eta) ++run;
            if (run % 2 == 1) emit("eta");
            for (size_t p = 0; p < run / 2; ++p) emit("eta2");
            i += run;
        } else if (u.kind == CompUnit::Kind::nu_prime) {
            emit("nu'eta");
            i += 1;
        } else {
            emit(u.atom_id);
            i += 1;
        }
    }
    return s;
}

} // namespace wedgecalc
