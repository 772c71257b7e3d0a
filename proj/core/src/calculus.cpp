#include "wedgecalc/calculus.hpp"

#include <map>

#include "wedgecalc/errors.hpp"

namespace wedgecalc {

namespace {

bool unit_is_suspended(const WedgeShape& shape, const CompUnit& u) {
    Comp c;
    c.parts.push_back(u);
    return comp_suspended(shape, c);
}

Comp eta_power(int k) {
    Comp c;
    for (int i = 0; i < k; ++i) c.parts.push_back({CompUnit::Kind::eta, ""});
    return c;
}

// chains absorbed into brackets must be eta chains; returns the eta count
int eta_count(const Comp& c, const std::string& context) {
    for (const auto& u : c.parts)
        if (u.kind != CompUnit::Kind::eta)
            throw UnsupportedError("only eta chains absorb into a bracket; " + context +
                                   " carries '" + comp_str(c) + "'");
    return int(c.parts.size());
}

void accum(std::map<Term, Coeff>& out, Term t, const Coeff& c) {
    if (c == 0) return;
    out[std::move(t)] += c;
}

// One bracket [ta, tb] . tail, coefficient c, accumulated into out.  The
// caller has checked that the total degree is supported, which prunes the
// combination space down to the handful of cases below.
void bracket_pair(const ShapePtr& shape, std::map<Term, Coeff>& out, const Term& ta, const Term& tb,
                  Coeff c, const Comp& tail) {
    const int n = shape->n();
    const bool splitter = shape->mode() == Mode::splitter;

    if (ta.kind == Term::Kind::incl && tb.kind == Term::Kind::incl) {
        if (ta.a_dim == tb.a_dim && ta.a_idx == tb.a_idx) {
            // factors on one sphere: [i.s, i.t] = i.[s,t] by naturality
            if (n == 4 && ta.a_dim == 3) return; // S^3 is an H-space: all its products vanish
            if (!splitter && n >= 5 && ta.a_dim == n - 1) {
                // [iota, iota.eta2] and [iota.eta, iota.eta] both reduce to
                // the class [id, eta^2] on that sphere, named w
                eta_count(ta.comp, "the left factor");
                eta_count(tb.comp, "the right factor");
                eta_count(tail, "the tail");
                accum(out, Term::incl(n - 1, ta.a_idx, comp_atom("w")), c);
                return;
            }
            if (splitter && ta.a_dim == n) {
                // middle-sphere square, kept as a basis term (order 2 for n
                // odd, infinite for n even)
                accum(out, Term::wh(n, ta.a_idx, n, ta.a_idx), c);
                return;
            }
            // fall through to the opaque collapse below for other K1 squares
        }

        int p = ta.a_dim, i = ta.a_idx;
        int q = tb.a_dim, j = tb.a_idx;
        Comp ca = ta.comp, cb = tb.comp;
        if (std::pair(q, j) < std::pair(p, i)) {
            std::swap(p, q);
            std::swap(i, j);
            std::swap(ca, cb);
            if (p % 2 == 1 && q % 2 == 1) c = -c;
        }

        if (splitter && shape->dim_in_k1(p) && shape->dim_in_k1(q)) {
            // untracked K1 residue; key on the canonical print
            Comp key_chain = ca;
            for (const auto& u : cb.parts) key_chain.parts.push_back(u);
            for (const auto& u : tail.parts) key_chain.parts.push_back(u);
            accum(out, Term::opaque(term_str(Term::wh(p, i, q, j, std::move(key_chain)))), c);
            return;
        }

        int etas = eta_count(ca, "the left factor") + eta_count(cb, "the right factor") +
                   eta_count(tail, "the tail");
        if (p == n - 1 && q == n - 1) {
            accum(out, Term::wh(p, i, q, j, eta_power(etas)), c);
            return;
        }
        if (p == n - 1 && (q == n || q == n + 1)) {
            accum(out, Term::wh(p, i, q, j, eta_power(etas)), c);
            return;
        }
        if (p == n && q == n) {
            accum(out, Term::wh(p, i, q, j, eta_power(etas)), c);
            return;
        }
        throw UnsupportedError("no rewrite rule for [" + term_str(ta) + ", " + term_str(tb) + "]");
    }

    // weight-3 products: one inclusion factor against a weight-2 product of
    // (n-1)-inclusions; only reachable at n = 4 where the degrees line up
    if ((ta.kind == Term::Kind::incl && tb.kind == Term::Kind::wh) ||
        (ta.kind == Term::Kind::wh && tb.kind == Term::Kind::incl)) {
        const Term& tincl = ta.kind == Term::Kind::incl ? ta : tb;
        const Term& twh = ta.kind == Term::Kind::incl ? tb : ta;
        if (ta.kind == Term::Kind::wh) c = -c; // [wh, incl] = (-1)^{5*3} [incl, wh]
        if (splitter || n != 4 || tincl.a_dim != 3 || twh.a_dim != 3 || twh.b_dim != 3 ||
            !tincl.comp.is_identity() || !twh.comp.is_identity() || !tail.is_identity())
            throw UnsupportedError("no rewrite rule for [" + term_str(ta) + ", " + term_str(tb) + "]");
        int r = tincl.a_idx, s = twh.a_idx, t = twh.b_idx; // inner stored with s < t
        if (s <= r) {
            accum(out, Term::wh3(r, s, t), c);
        } else {
            // r < s < t: Jacobi step [r,[s,t]] = [s,[r,t]] - [t,[r,s]]
            accum(out, Term::wh3(s, r, t), c);
            accum(out, Term::wh3(t, r, s), -c);
        }
        return;
    }

    throw UnsupportedError("no rewrite rule for [" + term_str(ta) + ", " + term_str(tb) + "]");
}

} // namespace

Element whitehead(const Element& a, const Element& b, const Comp& tail) {
    if (!(*a.shape() == *b.shape())) throw PreconditionError("whitehead: factors live in different wedges");
    const ShapePtr& shape = a.shape();
    int d = a.degree() + b.degree() - 1 + comp_degree_shift(*shape, tail);
    if (!shape->degree_supported(d))
        throw UnsupportedError("product degree " + std::to_string(d) + " is not modeled for this wedge");
    std::map<Term, Coeff> out;
    for (const auto& [ta, ca] : a.terms())
        for (const auto& [tb, cb] : b.terms()) bracket_pair(shape, out, ta, tb, ca * cb, tail);
    return Element(shape, d, std::move(out));
}

Element whitehead(const Element& a, const Element& b) { return whitehead(a, b, comp_identity()); }

namespace {

// append a chain to one term, accumulating (skips terms the eta^4 rule kills)
void append_chain(const ShapePtr& shape, std::map<Term, Coeff>& out, const Term& t, const Coeff& c,
                  const Comp& run) {
    switch (t.kind) {
        case Term::Kind::incl:
        case Term::Kind::wh: {
            ChainResult r = chain(t.comp, run);
            if (r.is_zero) return;
            Term t2 = t;
            t2.comp = std::move(r.comp);
            accum(out, std::move(t2), c);
            return;
        }
        case Term::Kind::opaque: {
            if (shape->mode() != Mode::splitter)
                throw UnsupportedError("opaque residues only exist in splitter mode");
            accum(out, Term::opaque(t.key + "." + comp_str(run)), c);
            return;
        }
        case Term::Kind::wh3:
            throw UnsupportedError("composition on a triple product leaves the modeled range");
    }
}

} // namespace

Element compose(const Element& e, const Comp& sigma) {
    const ShapePtr& shape = e.shape();
    if (sigma.is_identity() || e.is_zero())
        return Element(shape, e.degree() + comp_degree_shift(*shape, sigma), e.terms());

    std::map<Term, Coeff> cur = e.terms();
    int deg = e.degree();
    const auto& parts = sigma.parts;
    size_t i = 0;
    while (i < parts.size()) {
        if (unit_is_suspended(*shape, parts[i])) {
            // a maximal suspended run composes termwise, symbolically; only
            // the final element degree needs to be in the modeled set
            Comp run;
            while (i < parts.size() && unit_is_suspended(*shape, parts[i])) run.parts.push_back(parts[i++]);
            std::map<Term, Coeff> next;
            for (const auto& [t, c] : cur) append_chain(shape, next, t, c, run);
            cur = std::move(next);
            deg += comp_degree_shift(*shape, run);
            continue;
        }

        const CompUnit& u = parts[i++];
        const AtomDecl* decl = u.kind == CompUnit::Kind::atom ? shape->find_atom(u.atom_id) : nullptr;
        if (u.kind == CompUnit::Kind::atom && !decl)
            throw UnsupportedError("unknown abstract class '" + u.atom_id + "'");

        if (decl && u.atom_id == "w" && shape->mode() == Mode::classifier && shape->n() >= 5 &&
            decl->target_dim == deg) {
            // e.w = e.[id, eta^2] = [e, e.eta^2] by naturality
            Element base(shape, deg, cur);
            Element res = whitehead(base, compose(base, comp_eta_sq()));
            cur = res.terms();
            deg = res.degree();
            continue;
        }

        Comp single;
        single.parts.push_back(u);
        std::map<Term, Coeff> main;
        for (const auto& [t, c] : cur) append_chain(shape, main, t, c, single);

        // distributivity correction: pairwise products of the summands,
        // weighted by coefficient products and binomial self-pairs
        bool need_pairs = cur.size() >= 2;
        for (const auto& [t, c] : cur)
            if (choose2(c) != 0) need_pairs = true;
        if (!need_pairs) {
            cur = std::move(main);
            deg += comp_degree_shift(*shape, single);
            continue;
        }

        int bdeg = 2 * deg - 1;
        if (!shape->degree_supported(bdeg))
            throw UnsupportedError("composition correction needs products in degree " +
                                   std::to_string(bdeg) + ", outside the model");
        std::map<Term, Coeff> corr;
        for (auto it = cur.begin(); it != cur.end(); ++it) {
            auto jt = it;
            for (++jt; jt != cur.end(); ++jt)
                bracket_pair(shape, corr, it->first, jt->first, it->second * jt->second, comp_identity());
            Coeff self = choose2(it->second);
            if (self != 0) bracket_pair(shape, corr, it->first, it->first, self, comp_identity());
        }
        Element corrE(shape, bdeg, std::move(corr));

        if (!corrE.is_zero()) {
            Element final_corr(shape, deg + comp_degree_shift(*shape, single));
            if (u.kind == CompUnit::Kind::nu_prime) {
                // Hilton-Hopf invariant of nu'eta is eta^2
                final_corr = compose(corrE, comp_eta_sq());
            } else {
                if (!decl->hopf)
                    throw MissingDataError("composing a sum with '" + u.atom_id +
                                           "' requires its Hopf invariant; declare hopf for the class");
                final_corr = scale(*decl->hopf, corrE);
            }
            for (const auto& [t, c] : final_corr.terms()) accum(main, t, c);
        }
        cur = std::move(main);
        deg += comp_degree_shift(*shape, single);
    }
    return Element(shape, deg, std::move(cur));
}

} // namespace wedgecalc
