#include "wedgecalc/classify.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <utility>

#include "wedgecalc/errors.hpp"

namespace wedgecalc {

std::string class_name(ClassKind c) {
    switch (c) {
    case ClassKind::T: return "T";
    case ClassKind::X10: return "X10";
    case ClassKind::X01: return "X01";
    case ClassKind::X11: return "X11";
    case ClassKind::X10_X01: return "X10+X01";
    }
    return "?";
}

namespace {

[[noreturn]] void audit_fail(const std::string& what) {
    throw CalcError("internal audit failed: " + what);
}

struct TorsionBits {
    bool r = false; // nu'-torsion on S^3_i
    bool s = false; // eta2-torsion on S^5_i
};

std::vector<TorsionBits> read_bits(const Element& e, int k) {
    std::vector<TorsionBits> v(static_cast<size_t>(k) + 1);
    for (int i = 1; i <= k; ++i) {
        v[i].r = e.coeff(Term::incl(3, i, comp_nu_prime_eta())) != 0;
        v[i].s = e.coeff(Term::incl(5, i, comp_eta_sq())) != 0;
    }
    return v;
}

struct BitGroups {
    std::vector<int> tens, ones, elevens;
};

BitGroups group_bits(const std::vector<TorsionBits>& bits, int k) {
    BitGroups g;
    for (int i = 1; i <= k; ++i) {
        if (bits[i].r && bits[i].s) g.elevens.push_back(i);
        else if (bits[i].r) g.tens.push_back(i);
        else if (bits[i].s) g.ones.push_back(i);
    }
    return g;
}

bool in_catalog(const Element& e) {
    auto basis = degree_basis(e.shape(), e.degree());
    std::set<Term> listed(basis.begin(), basis.end());
    for (const auto& [t, c] : e.terms())
        if (!listed.count(t)) return false;
    return true;
}

std::string fmt_invariants(const std::vector<Coeff>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += coeff_str(v[i]);
    }
    return s + "]";
}

} // namespace

CanonicalizeResult canonicalize(const Element& phi) {
    const ShapePtr& shape = phi.shape();
    const WedgeShape& sh = *shape;
    if (sh.mode() != Mode::classifier || sh.n() != 4)
        throw PreconditionError("classification is implemented for n = 4 classifier wedges");
    const int k = sh.pairs();
    if (phi.degree() != 7)
        throw PreconditionError("classification expects a degree-7 attaching element");

    {
        auto basis = degree_basis(shape, 7);
        std::set<Term> listed(basis.begin(), basis.end());
        for (const auto& [t, c] : phi.terms())
            if (!listed.count(t))
                throw PreconditionError("term " + term_str(t) +
                                        " lies outside the degree-7 catalog, so the "
                                        "classification hypotheses do not hold");
    }

    NormalizeResult norm = normalize_attaching_map(phi);
    MoveChain chain = std::move(norm.witness);
    Element cur = std::move(norm.normal_form);

    for (const auto& [t, c] : cur.terms())
        if (t.kind == Term::Kind::incl &&
            !(t.comp == comp_nu_prime_eta() || t.comp == comp_eta_sq()))
            audit_fail("unexpected sphere-local term " + term_str(t));

    auto bits = read_bits(cur, k);

    // One torsion-trading move.  The roles matter: with i the left summand,
    // the pair ((r_i, s_i), (r_j, s_j)) becomes
    // ((r_i + r_j, s_i), (r_j, s_j + s_i)), plus a product-sector toggle on
    // (i, j) exactly when r_j = 1, cleared by the F fix-up right away.
    auto apply_pair = [&](int i, int j) {
        SelfMap pm = pair_move(shape, i, j);
        SelfMap inv = identity_map(shape);
        inv.images.insert_or_assign({5, i}, add(Element(shape, 5, Term::incl(5, i)),
                                                Element(shape, 5, Term::incl(5, j))));
        inv.images.insert_or_assign({3, j}, sub(Element(shape, 3, Term::incl(3, j)),
                                                Element(shape, 3, Term::incl(3, i))));
        cur = apply(pm, cur);
        chain.push(std::move(pm), std::move(inv));
        const Term side = Term::wh(3, std::min(i, j), 3, std::max(i, j), comp_eta_sq());
        if (cur.coeff(side) != 0) {
            SelfMap fix = move_F(shape, i, j);
            cur = apply(fix, cur);
            chain.push(fix, fix);
            if (cur.coeff(side) != 0)
                audit_fail("pair-move junk not cleared at " + term_str(side));
        }
        bits = read_bits(cur, k);
    };

    // Reduce the torsion multiset.  Every step strictly lowers the total
    // bit count, so this terminates in at most 2k moves.
    for (;;) {
        BitGroups g = group_bits(bits, k);
        if (g.elevens.size() >= 2) { apply_pair(g.elevens[0], g.elevens[1]); continue; }
        if (!g.elevens.empty() && !g.tens.empty()) { apply_pair(g.tens[0], g.elevens[0]); continue; }
        if (!g.elevens.empty() && !g.ones.empty()) { apply_pair(g.elevens[0], g.ones[0]); continue; }
        if (g.tens.size() >= 2) { apply_pair(g.tens[0], g.tens[1]); continue; }
        if (g.ones.size() >= 2) { apply_pair(g.ones[0], g.ones[1]); continue; }
        break;
    }

    BitGroups g = group_bits(bits, k);
    ClassKind kind = ClassKind::T;
    std::map<int, int> want; // summand -> canonical position
    if (!g.elevens.empty()) {
        kind = ClassKind::X11;
        want[g.elevens[0]] = 1;
    } else if (!g.tens.empty() && !g.ones.empty()) {
        kind = ClassKind::X10_X01;
        want[g.tens[0]] = 1;
        want[g.ones[0]] = 2;
    } else if (!g.tens.empty()) {
        kind = ClassKind::X10;
        want[g.tens[0]] = 1;
    } else if (!g.ones.empty()) {
        kind = ClassKind::X01;
        want[g.ones[0]] = 1;
    }

    // Park the torsion on the canonical summands with a permutation of the
    // pairs; it preserves the identity mixed block and creates no junk.
    std::vector<int> sigma(static_cast<size_t>(k) + 1, 0);
    std::vector<char> used(static_cast<size_t>(k) + 1, 0);
    for (const auto& [u, v] : want) { sigma[u] = v; used[v] = 1; }
    int next = 1;
    for (int u = 1; u <= k; ++u) {
        if (sigma[u]) continue;
        while (used[next]) ++next;
        sigma[u] = next;
        used[next] = 1;
    }
    bool perm_is_id = true;
    for (int u = 1; u <= k; ++u) perm_is_id = perm_is_id && sigma[u] == u;
    if (!perm_is_id) {
        IntMat p(k, k);
        for (int u = 1; u <= k; ++u) p.at(sigma[u] - 1, u - 1) = 1;
        SelfMap fwd = diag(shape, p, p);
        SelfMap bwd = diag(shape, transpose(p), transpose(p));
        cur = apply(fwd, cur);
        chain.push(std::move(fwd), std::move(bwd));
    }

    // The result must be, on the nose, the canonical representative.
    std::map<Term, Coeff> nf;
    for (int i = 1; i <= k; ++i) nf.emplace(Term::wh(3, i, 5, i), 1);
    switch (kind) {
    case ClassKind::T: break;
    case ClassKind::X10: nf.emplace(Term::incl(3, 1, comp_nu_prime_eta()), 1); break;
    case ClassKind::X01: nf.emplace(Term::incl(5, 1, comp_eta_sq()), 1); break;
    case ClassKind::X11:
        nf.emplace(Term::incl(3, 1, comp_nu_prime_eta()), 1);
        nf.emplace(Term::incl(5, 1, comp_eta_sq()), 1);
        break;
    case ClassKind::X10_X01:
        nf.emplace(Term::incl(3, 1, comp_nu_prime_eta()), 1);
        nf.emplace(Term::incl(5, 2, comp_eta_sq()), 1);
        break;
    }
    Element expect(shape, 7, nf);
    if (!(cur == expect))
        audit_fail("reduced element is not the canonical representative of " + class_name(kind));

    if (!chain.empty()) {
        SelfMap w = chain.fold();
        if (!is_equivalence(w)) audit_fail("classification witness is not an equivalence");
        if (!(apply(w, phi) == cur)) audit_fail("classification witness does not reproduce the canonical form");
    }

    return CanonicalizeResult{ClassLabel{k, kind, std::move(cur)}, std::move(chain)};
}

Obstruction obstruction_vector(const Element& normal_form) {
    const WedgeShape& sh = *normal_form.shape();
    if (sh.mode() != Mode::classifier || sh.n() != 4)
        throw PreconditionError("obstruction vectors are read off n = 4 classifier normal forms");
    const int k = sh.pairs();
    Obstruction o;
    int align = 0;
    for (int i = 1; i <= k; ++i) {
        const bool r = normal_form.coeff(Term::incl(3, i, comp_nu_prime_eta())) != 0;
        const bool s = normal_form.coeff(Term::incl(5, i, comp_eta_sq())) != 0;
        o.has_nu = o.has_nu || r;
        o.has_eta = o.has_eta || s;
        if (r && s) ++align;
    }
    o.alignment = align % 2 != 0;
    return o;
}

namespace {

// Unit moves for the bounded search: the torsion moves, elementary
// transvections and sign flips on each diagonal block.
std::vector<SelfMap> search_moves(const ShapePtr& shape) {
    const WedgeShape& sh = *shape;
    const int n = sh.n(), k = sh.pairs();
    std::vector<SelfMap> mv;
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j)
            if (i != j) mv.push_back(move_F(shape, i, j));
    if (n == 4)
        for (int r = 1; r <= k; ++r)
            for (int s = 1; s <= k; ++s)
                for (int t = s + 1; t <= k; ++t) {
                    mv.push_back(move_G(shape, r, s, t, 1));
                    mv.push_back(move_G(shape, r, s, t, -1));
                }
    const IntMat id = IntMat::identity(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            for (int sign : {1, -1}) {
                IntMat q = IntMat::identity(k);
                q.at(i, j) = sign;
                mv.push_back(diag(shape, q, id));
                mv.push_back(diag(shape, id, q));
            }
        }
    for (int i = 0; i < k; ++i) {
        IntMat f = IntMat::identity(k);
        f.at(i, i) = -1;
        mv.push_back(diag(shape, f, id));
        mv.push_back(diag(shape, id, f));
    }
    return mv;
}

} // namespace

EquivalenceResult equivalent(const Element& phi, const Element& psi, long budget) {
    const ShapePtr& shape = phi.shape();
    if (!(*shape == *psi.shape()))
        throw PreconditionError("equivalence check needs both maps on one wedge");
    const WedgeShape& sh = *shape;
    if (sh.mode() != Mode::classifier)
        throw PreconditionError("equivalence deciding is implemented for classifier wedges");
    const int n = sh.n();
    if (phi.degree() != 2 * n - 1 || psi.degree() != 2 * n - 1)
        throw PreconditionError("equivalence compares top-degree attaching maps");

    EquivalenceResult res;
    if (phi == psi) {
        res.verdict = Verdict::yes;
        res.witness = identity_map(shape);
        return res;
    }
    if (phi == negate(psi)) {
        res.verdict = Verdict::yes;
        res.witness = identity_map(shape);
        res.negated = true;
        return res;
    }

    MatrixBundle bphi = extract(phi);
    MatrixBundle bpsi = extract(psi);
    auto sphi = smith_invariants(*bphi.M);
    auto spsi = smith_invariants(*bpsi.M);
    if (sphi != spsi) {
        res.verdict = Verdict::no;
        res.obstruction = "mixed-block invariant factors differ: " + fmt_invariants(sphi) +
                          " vs " + fmt_invariants(spsi);
        return res;
    }

    const Coeff dphi = det(*bphi.M);
    const bool unimod = dphi == 1 || dphi == -1;

    if (n == 4 && unimod && in_catalog(phi) && in_catalog(psi)) {
        CanonicalizeResult a = canonicalize(phi);
        CanonicalizeResult b = canonicalize(psi);
        if (a.label.kind == b.label.kind) {
            SelfMap w = compose_maps(b.witness.fold_inverse(), a.witness.fold());
            if (!(apply(w, phi) == psi))
                audit_fail("assembled witness does not carry one map to the other");
            res.verdict = Verdict::yes;
            res.witness = std::move(w);
            return res;
        }
        const Obstruction oa = obstruction_vector(a.label.normal_form);
        const Obstruction ob = obstruction_vector(b.label.normal_form);
        std::string which;
        if (oa.has_nu != ob.has_nu) which = "nu'-torsion presence differs";
        else if (oa.has_eta != ob.has_eta) which = "eta2-torsion presence differs";
        else if (oa.alignment != ob.alignment) which = "torsion alignment parity differs";
        else audit_fail("distinct classes share an obstruction vector");
        res.verdict = Verdict::no;
        res.obstruction = "class " + class_name(a.label.kind) + " vs " +
                          class_name(b.label.kind) + ": " + which;
        return res;
    }

    if (n >= 5 && unimod) {
        // Normal forms agreeing is a proof; disagreeing proves nothing at
        // n >= 5, so the fallthrough verdict stays unknown.
        NormalizeResult na = normalize_attaching_map(phi);
        NormalizeResult nb = normalize_attaching_map(psi);
        if (na.normal_form == nb.normal_form) {
            SelfMap w = compose_maps(nb.witness.fold_inverse(), na.witness.fold());
            if (!(apply(w, phi) == psi))
                audit_fail("assembled witness does not carry one map to the other");
            res.verdict = Verdict::yes;
            res.witness = std::move(w);
            return res;
        }
        NormalizeResult nc = normalize_attaching_map(negate(psi));
        if (na.normal_form == nc.normal_form) {
            SelfMap w = compose_maps(nc.witness.fold_inverse(), na.witness.fold());
            if (!(apply(w, phi) == negate(psi)))
                audit_fail("assembled witness does not carry one map to the other");
            res.verdict = Verdict::yes;
            res.witness = std::move(w);
            res.negated = true;
            return res;
        }
        res.verdict = Verdict::unknown;
        return res;
    }

    if (n == 4) {
        // Bounded breadth-first search through the exact move closure.
        auto moves = search_moves(shape);
        const std::string target = to_string(psi);
        const std::string target_neg = to_string(negate(psi));
        std::set<std::string> seen;
        std::deque<std::pair<Element, SelfMap>> queue;
        queue.emplace_back(phi, identity_map(shape));
        seen.insert(to_string(phi));
        long nodes = 0;
        while (!queue.empty() && nodes < budget) {
            auto [e, w] = std::move(queue.front());
            queue.pop_front();
            ++nodes;
            for (const auto& m : moves) {
                std::optional<Element> e2;
                try {
                    e2 = apply(m, e);
                } catch (const CalcError&) {
                    continue; // move undefined on this element's content
                }
                std::string key = to_string(*e2);
                if (!seen.insert(key).second) continue;
                SelfMap w2 = compose_maps(m, w);
                if (key == target || key == target_neg) {
                    const bool neg = key != target;
                    if (!(apply(w2, phi) == (neg ? negate(psi) : psi)))
                        audit_fail("search witness fails verification");
                    res.verdict = Verdict::yes;
                    res.witness = std::move(w2);
                    res.negated = neg;
                    res.nodes_explored = nodes;
                    return res;
                }
                queue.emplace_back(std::move(*e2), std::move(w2));
            }
        }
        res.verdict = Verdict::unknown;
        res.nodes_explored = nodes;
        return res;
    }

    res.verdict = Verdict::unknown;
    return res;
}

} // namespace wedgecalc
