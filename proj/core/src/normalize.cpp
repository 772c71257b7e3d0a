#include "wedgecalc/normalize.hpp"

#include <utility>

#include "wedgecalc/errors.hpp"

namespace wedgecalc {

namespace {

// Sphere-local sector: the inclusion-kind terms of a top-degree element.
Element incl_part(const Element& e) {
    std::map<Term, Coeff> out;
    for (const auto& [t, c] : e.terms())
        if (t.kind == Term::Kind::incl) out.emplace(t, c);
    return Element(e.shape(), e.degree(), out);
}

void require_unimodular(const IntMat& m, const char* which) {
    Coeff d = det(m);
    if (d != 1 && d != -1)
        throw PreconditionError(std::string("input is not an attaching map of a closed complex: the ") +
                                which + " block has det = " + coeff_str(d));
}

[[noreturn]] void audit_fail(const std::string& what) {
    throw CalcError("internal audit failed: " + what);
}

} // namespace

SplitResult split_connected_sum(const Element& phi) {
    const ShapePtr& shape = phi.shape();
    const WedgeShape& sh = *shape;
    if (sh.mode() != Mode::splitter)
        throw PreconditionError("connected-sum splitting works on splitter-mode wedges");
    const int n = sh.n();
    if (phi.degree() != 2 * n - 1)
        throw PreconditionError("splitting expects a top-degree element (degree " +
                                std::to_string(2 * n - 1) + "), got degree " +
                                std::to_string(phi.degree()));

    MatrixBundle mb = extract(phi);
    require_unimodular(*mb.B, "K2 intersection");

    // C_w = A * B^{-1} over F_2 kills the mixed sector in one shear.
    Mod2Mat cf = mul(*mb.A, inverse_mod2(reduce_mod2(*mb.B)));
    SelfMap witness = shear(shape, cf);
    Element transformed = apply(witness, phi);

    if (!extract(transformed).A->is_zero())
        audit_fail("mixed sector survives the shear");
    if (!is_equivalence(witness))
        audit_fail("the shear witness is not an equivalence");

    std::map<Term, Coeff> t1, t2;
    for (const auto& [t, c] : transformed.terms()) {
        bool k1 = false;
        switch (t.kind) {
        case Term::Kind::incl: k1 = sh.dim_in_k1(t.a_dim); break;
        case Term::Kind::wh:
            // mixed brackets are gone; the factors now sit on one side
            if (sh.dim_in_k1(t.a_dim) != sh.dim_in_k1(t.b_dim))
                audit_fail("a mixed bracket survives the shear: " + term_str(t));
            k1 = sh.dim_in_k1(t.a_dim);
            break;
        case Term::Kind::opaque: k1 = true; break;
        case Term::Kind::wh3:
            audit_fail("triple product in splitter mode: " + term_str(t));
        }
        (k1 ? t1 : t2).emplace(t, c);
    }
    Element phi1(shape, 2 * n - 1, t1);
    Element phi2(shape, 2 * n - 1, t2);
    if (!(add(phi1, phi2) == transformed))
        audit_fail("the two split parts do not reassemble the transformed map");

    return SplitResult{std::move(witness), std::move(transformed),
                       std::move(phi1), std::move(phi2)};
}

NormalizeResult normalize_attaching_map(const Element& phi) {
    const ShapePtr& shape = phi.shape();
    const WedgeShape& sh = *shape;
    if (sh.mode() != Mode::classifier)
        throw PreconditionError("normalization works on classifier-mode wedges");
    const int n = sh.n();
    const int k = sh.pairs();
    if (phi.degree() != 2 * n - 1)
        throw PreconditionError("normalization expects a top-degree element (degree " +
                                std::to_string(2 * n - 1) + "), got degree " +
                                std::to_string(phi.degree()));

    MoveChain chain;
    chain.shape = shape;
    Element cur = phi;

    // Step 1: diagonal move Qf = M^{-1}, Qh = I brings the mixed block to I.
    MatrixBundle mb = extract(cur);
    require_unimodular(*mb.M, "mixed product");
    if (!mb.M->is_identity()) {
        IntMat minv = unimodular_inverse(*mb.M);
        SelfMap fwd = diag(shape, minv, IntMat::identity(k));
        SelfMap bwd = diag(shape, *mb.M, IntMat::identity(k));
        cur = apply(fwd, cur);
        chain.push(std::move(fwd), std::move(bwd));
        if (!extract(cur).M->is_identity())
            audit_fail("mixed block is not the identity after the diagonal move");
    }

    // Sphere-local baseline: later moves must not disturb this sector at
    // n = 4, and at n >= 5 any disturbance is reported as residue.
    const Element local_baseline = incl_part(cur);

    // Step 2 (n = 4 only): clear the triple-product sector.  Each G move
    // cancels one triple exactly; when it also toggles the order-2 product
    // tail on its (s,t) pair, the F fix-up restores that coefficient.
    if (n == 4) {
        std::vector<std::pair<Term, Coeff>> triples;
        for (const auto& [t, c] : cur.terms())
            if (t.kind == Term::Kind::wh3) triples.emplace_back(t, c);
        for (const auto& [t, c] : triples) {
            const int r = t.a_idx, s = t.b_dim, tt = t.b_idx;
            const Term side = Term::wh(3, s, 3, tt, comp_eta_sq());
            const Coeff before = cur.coeff(side);
            SelfMap g = move_G(shape, r, s, tt, -c);
            cur = apply(g, cur);
            chain.push(std::move(g), move_G(shape, r, s, tt, c));
            if (cur.coeff(t) != 0)
                audit_fail("triple product survives its cancelling move: " + term_str(t));
            if (cur.coeff(side) != before) {
                SelfMap fix = move_F(shape, s, tt);
                cur = apply(fix, cur);
                chain.push(fix, fix); // F moves are involutions
                if (cur.coeff(side) != before)
                    audit_fail("fix-up move does not restore " + term_str(side));
            }
        }
    }

    // Step 3: clear the order-2 product sector.  Each F move toggles exactly
    // one product term; at n >= 5 it may also drop residue into the
    // sphere-local sector, which is detected below.
    {
        std::vector<Term> cterms;
        for (const auto& [t, c] : cur.terms())
            if (t.kind == Term::Kind::wh && t.a_dim == n - 1 && t.b_dim == n - 1)
                cterms.push_back(t);
        for (const Term& t : cterms) {
            SelfMap fix = move_F(shape, t.a_idx, t.b_idx);
            cur = apply(fix, cur);
            chain.push(fix, fix);
            if (cur.coeff(t) != 0)
                audit_fail("order-2 product survives its cancelling move: " + term_str(t));
        }
    }

    // Final audits on the reduced shape of the element.
    MatrixBundle fin = extract(cur);
    if (!fin.M->is_identity()) audit_fail("mixed block drifted during cancellation");
    if (!fin.C->is_zero()) audit_fail("order-2 product sector not cleared");
    for (const auto& [t, c] : cur.terms()) {
        if (t.kind == Term::Kind::wh3) audit_fail("triple products not cleared");
        if (t.kind == Term::Kind::wh && !(t.a_dim == n - 1 && t.b_dim == n + 1 && t.a_idx == t.b_idx))
            audit_fail("unexpected bracket in the normal form: " + term_str(t));
    }

    const bool residue = n >= 5 && !(incl_part(cur) == local_baseline);
    if (n == 4 && !(incl_part(cur) == local_baseline))
        audit_fail("sphere-local sector moved at n = 4");

    // The witness chain must reproduce the normal form and be invertible.
    if (!chain.empty()) {
        SelfMap w = chain.fold();
        if (!is_equivalence(w)) audit_fail("witness is not an equivalence");
        if (!(apply(w, phi) == cur)) audit_fail("witness does not reproduce the normal form");
        if (!(apply(chain.fold_inverse(), cur) == phi))
            audit_fail("witness inverse does not recover the input");
    }

    std::vector<SummandPair> pairs;
    pairs.reserve(static_cast<size_t>(k));
    for (int i = 1; i <= k; ++i) {
        std::map<Term, Coeff> ta, tb;
        for (const auto& [t, c] : cur.terms()) {
            if (t.kind != Term::Kind::incl) continue;
            if (t.a_dim == n - 1 && t.a_idx == i) ta.emplace(t, c);
            if (t.a_dim == n + 1 && t.a_idx == i) tb.emplace(t, c);
        }
        pairs.push_back(SummandPair{Element(shape, 2 * n - 1, ta),
                                    Element(shape, 2 * n - 1, tb)});
    }

    return NormalizeResult{std::move(chain), std::move(cur), std::move(pairs), residue};
}

} // namespace wedgecalc
