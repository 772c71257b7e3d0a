#include "wedgecalc/element.hpp"

#include <algorithm>

#include "wedgecalc/errors.hpp"

namespace wedgecalc {

namespace {

// Canonical-form gate: every Element term passes through here, so the
// rewriters and the parser cannot leak non-basis symbols.
void check_term_canonical(const WedgeShape& sh, const Term& t) {
    auto sphere = [&sh](int dim, int idx) {
        if (!sh.has_sphere(dim, idx))
            throw PreconditionError("the wedge has no sphere S" + std::to_string(dim) + "_" +
                                    std::to_string(idx));
    };
    switch (t.kind) {
    case Term::Kind::incl:
        sphere(t.a_dim, t.a_idx);
        check_chain_context(sh, t.a_dim, t.comp);
        break;
    case Term::Kind::wh: {
        sphere(t.a_dim, t.a_idx);
        sphere(t.b_dim, t.b_idx);
        if (std::pair(t.a_dim, t.a_idx) > std::pair(t.b_dim, t.b_idx))
            throw PreconditionError("bracket factors out of canonical order in " + term_str(t));
        if (t.a_dim == t.b_dim && t.a_idx == t.b_idx &&
            !(sh.mode() == Mode::splitter && t.a_dim == sh.n()))
            throw PreconditionError("self-product " + term_str(t) + " is not a basis symbol here");
        if (sh.dim_in_k1(t.a_dim) && sh.dim_in_k1(t.b_dim))
            throw PreconditionError("products inside K1 are tracked as opaque buckets, not " +
                                    term_str(t));
        for (const auto& u : t.comp.parts)
            if (u.kind != CompUnit::Kind::eta)
                throw PreconditionError("product tails are eta chains; " + term_str(t) +
                                        " is not canonical");
        check_chain_context(sh, t.a_dim + t.b_dim - 1, t.comp);
        break;
    }
    case Term::Kind::wh3: {
        if (sh.mode() != Mode::classifier || sh.n() != 4)
            throw UnsupportedError("triple products are modeled only in the n = 4 classifier");
        sphere(3, t.a_idx);
        sphere(3, t.b_dim);
        sphere(3, t.b_idx);
        if (!(t.b_dim <= t.a_idx && t.b_dim < t.b_idx))
            throw PreconditionError(term_str(t) + " is outside the Hall range (s <= r, s < t)");
        break;
    }
    case Term::Kind::opaque:
        if (sh.mode() != Mode::splitter)
            throw UnsupportedError("opaque residues only exist in splitter mode");
        if (t.key.empty()) throw PreconditionError("opaque bucket needs a key");
        break;
    }
}

} // namespace

Element::Element(ShapePtr shape, int degree) : shape_(std::move(shape)), degree_(degree) {
    if (!shape_) throw PreconditionError("element needs a shape");
    if (!shape_->degree_supported(degree_))
        throw UnsupportedError("degree " + std::to_string(degree_) + " is not modeled for this wedge");
}

Element::Element(ShapePtr shape, int degree, const Term& t, Coeff c) : Element(std::move(shape), degree) {
    if (term_degree(*shape_, t) != degree_)
        throw PreconditionError("term " + term_str(t) + " does not live in degree " + std::to_string(degree_));
    check_term_canonical(*shape_, t);
    terms_[t] = std::move(c);
    reduce();
}

Element::Element(ShapePtr shape, int degree, std::map<Term, Coeff> terms) : Element(std::move(shape), degree) {
    for (const auto& [t, c] : terms) {
        if (term_degree(*shape_, t) != degree_)
            throw PreconditionError("term " + term_str(t) + " does not live in degree " + std::to_string(degree_));
        check_term_canonical(*shape_, t);
    }
    terms_ = std::move(terms);
    reduce();
}

Coeff Element::coeff(const Term& t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? Coeff(0) : it->second;
}

void Element::reduce() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        int o = term_order(*shape_, it->first);
        if (o >= 1) {
            it->second %= o;
            if (it->second < 0) it->second += o;
        }
        if (it->second == 0)
            it = terms_.erase(it);
        else
            ++it;
    }
}

bool operator==(const Element& a, const Element& b) {
    return a.degree_ == b.degree_ && *a.shape_ == *b.shape_ && a.terms_ == b.terms_;
}

namespace {

void check_compatible(const Element& a, const Element& b, const char* op) {
    if (a.degree() != b.degree())
        throw PreconditionError(std::string(op) + ": degree mismatch " + std::to_string(a.degree()) +
                                " vs " + std::to_string(b.degree()));
    if (!(*a.shape() == *b.shape()))
        throw PreconditionError(std::string(op) + ": elements live in different wedges");
}

} // namespace

Element add(const Element& a, const Element& b) {
    check_compatible(a, b, "add");
    std::map<Term, Coeff> out = a.terms();
    for (const auto& [t, c] : b.terms()) out[t] += c;
    return Element(a.shape(), a.degree(), std::move(out));
}

Element sub(const Element& a, const Element& b) {
    check_compatible(a, b, "sub");
    std::map<Term, Coeff> out = a.terms();
    for (const auto& [t, c] : b.terms()) out[t] -= c;
    return Element(a.shape(), a.degree(), std::move(out));
}

Element negate(const Element& e) { return scale(-1, e); }

Element scale(const Coeff& c, const Element& e) {
    std::map<Term, Coeff> out;
    for (const auto& [t, k] : e.terms()) out[t] = c * k;
    return Element(e.shape(), e.degree(), std::move(out));
}

std::vector<Term> degree_basis(const ShapePtr& shape, int d, bool full_range) {
    const WedgeShape& sh = *shape;
    const int n = sh.n();
    std::vector<Term> out;
    auto spheres = [&sh](int dim) {
        std::vector<int> idx;
        for (const auto& s : sh.summands())
            if (s.kind == SummandKind::sphere && s.dim == dim) idx.push_back(s.index);
        return idx;
    };
    if (d == n - 1) {
        for (int i : spheres(n - 1)) out.push_back(Term::incl(n - 1, i));
        return out;
    }
    if (d == n) {
        for (int i : spheres(n - 1)) out.push_back(Term::incl(n - 1, i, comp_eta()));
        for (int j : spheres(n)) out.push_back(Term::incl(n, j));
        return out;
    }
    if (d == n + 1) {
        if (sh.mode() == Mode::classifier && n == 4) {
            // pi_5 of the S^3 sub-wedge: eta^2 columns and the distinct
            // degree-5 products
            for (int i : spheres(3)) out.push_back(Term::incl(3, i, comp_eta_sq()));
            auto s3 = spheres(3);
            for (size_t p = 0; p < s3.size(); ++p)
                for (size_t q = p + 1; q < s3.size(); ++q)
                    out.push_back(Term::wh(3, s3[p], 3, s3[q]));
            if (full_range)
                for (int i : spheres(5)) out.push_back(Term::incl(5, i));
            std::sort(out.begin(), out.end());
            return out;
        }
        for (int i : spheres(n - 1)) out.push_back(Term::incl(n - 1, i, comp_eta_sq()));
        for (int i : spheres(n)) out.push_back(Term::incl(n, i, comp_eta()));
        for (int i : spheres(n + 1)) out.push_back(Term::incl(n + 1, i));
        std::sort(out.begin(), out.end());
        return out;
    }
    if (d != 2 * n - 1)
        throw UnsupportedError("no basis enumeration for degree " + std::to_string(d));

    // top degree
    if (sh.mode() == Mode::classifier && n == 4) {
        auto s3 = spheres(3);
        auto s5 = spheres(5);
        // inclusion-supported torsion
        for (int i : s3) out.push_back(Term::incl(3, i, comp_nu_prime_eta()));
        for (int i : s5) out.push_back(Term::incl(5, i, comp_eta_sq()));
        // products, with and without the eta^2 tail
        for (size_t p = 0; p < s3.size(); ++p)
            for (size_t q = p; q < s3.size(); ++q) {
                if (p != q) out.push_back(Term::wh(3, s3[p], 3, s3[q], comp_eta_sq()));
            }
        for (int i : s3)
            for (int j : s5) out.push_back(Term::wh(3, i, 5, j));
        // Hall-normal triple products on the 3-spheres: s <= r, s < t
        for (int r : s3)
            for (int s : s3)
                for (int t : s3)
                    if (s <= r && s < t) out.push_back(Term::wh3(r, s, t));
        std::sort(out.begin(), out.end());
        return out;
    }
    if (sh.mode() == Mode::classifier) {
        // n >= 5: abstract per-sphere atoms, the exact mixed products, and
        // the order-2 products of two low spheres with the eta^2 tail.  The
        // sphere buckets are infinitely richer than the two listed atoms
        // (w-classes, chains through b, ...); the list is the catalog the
        // procedures read and write, not a claim of completeness.
        auto lo = spheres(n - 1);
        auto hi = spheres(n + 1);
        for (int i : lo) out.push_back(Term::incl(n - 1, i, comp_atom("a")));
        for (int i : hi) out.push_back(Term::incl(n + 1, i, comp_atom("b")));
        for (int i : lo)
            for (int j : hi) out.push_back(Term::wh(n - 1, i, n + 1, j));
        for (size_t p = 0; p < lo.size(); ++p)
            for (size_t q = p + 1; q < lo.size(); ++q)
                out.push_back(Term::wh(n - 1, lo[p], n - 1, lo[q], comp_eta_sq()));
        std::sort(out.begin(), out.end());
        return out;
    }
    throw UnsupportedError("the splitter top group has no finite enumeration; opaque residues are open-ended");
}

std::string to_string(const Element& e) {
    if (e.is_zero()) return "0";
    std::string s;
    for (const auto& [t, c] : e.terms()) {
        Coeff a = c < 0 ? Coeff(-c) : c;
        if (s.empty()) {
            if (c < 0) s += "-";
        } else {
            s += c < 0 ? " - " : " + ";
        }
        if (a != 1) s += coeff_str(a) + "*";
        s += term_str(t);
    }
    return s;
}

} // namespace wedgecalc
