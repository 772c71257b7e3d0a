#include "wedgecalc/selfmap.hpp"

#include "wedgecalc/errors.hpp"

namespace wedgecalc {

const Element& SelfMap::image_of(int dim, int idx) const {
    auto it = images.find({dim, idx});
    if (it == images.end())
        throw PreconditionError("self-map has no image for S^" + std::to_string(dim) + "_" +
                                std::to_string(idx));
    return it->second;
}

SelfMap identity_map(const ShapePtr& shape) {
    SelfMap f{shape, {}};
    for (const auto& s : shape->summands()) {
        if (s.kind != SummandKind::sphere) continue;
        f.images.emplace(std::pair{s.dim, s.index},
                         Element(shape, s.dim, Term::incl(s.dim, s.index)));
    }
    return f;
}

namespace {

bool fixes_k1(const SelfMap& f) {
    const WedgeShape& sh = *f.shape;
    for (const auto& s : sh.summands()) {
        if (s.kind != SummandKind::sphere || !sh.dim_in_k1(s.dim)) continue;
        Element id(f.shape, s.dim, Term::incl(s.dim, s.index));
        if (!(f.image_of(s.dim, s.index) == id)) return false;
    }
    return true;
}

} // namespace

Element apply(const SelfMap& f, const Element& e) {
    if (!(*f.shape == *e.shape())) throw PreconditionError("apply: map and element shapes differ");
    Element acc(e.shape(), e.degree());
    for (const auto& [t, c] : e.terms()) {
        switch (t.kind) {
            case Term::Kind::incl:
                acc = add(acc, scale(c, compose(f.image_of(t.a_dim, t.a_idx), t.comp)));
                break;
            case Term::Kind::wh:
                acc = add(acc, scale(c, whitehead(f.image_of(t.a_dim, t.a_idx),
                                                  f.image_of(t.b_dim, t.b_idx), t.comp)));
                break;
            case Term::Kind::wh3: {
                Element inner = whitehead(f.image_of(3, t.b_dim), f.image_of(3, t.b_idx));
                acc = add(acc, scale(c, whitehead(f.image_of(3, t.a_idx), inner)));
                break;
            }
            case Term::Kind::opaque:
                if (!fixes_k1(f))
                    throw UnsupportedError(
                        "cannot transport the opaque residue " + term_str(t) +
                        " through a map that moves K1 summands");
                acc = add(acc, Element(e.shape(), e.degree(), t, c));
                break;
        }
    }
    return acc;
}

SelfMap compose_maps(const SelfMap& f1, const SelfMap& f2) {
    if (!(*f1.shape == *f2.shape)) throw PreconditionError("compose_maps: shapes differ");
    SelfMap out{f1.shape, {}};
    for (const auto& [key, img] : f2.images) out.images.emplace(key, apply(f1, img));
    return out;
}

namespace {

IntMat block_of(const SelfMap& f, int dim, int count) {
    IntMat q(count, count);
    for (int j = 1; j <= count; ++j) {
        const Element& img = f.image_of(dim, j);
        for (int i = 1; i <= count; ++i) q.at(i - 1, j - 1) = img.coeff(Term::incl(dim, i));
    }
    return q;
}

} // namespace

MatrixBundle extract(const SelfMap& f) {
    const WedgeShape& sh = *f.shape;
    const int n = sh.n();
    MatrixBundle out;
    out.Qf = block_of(f, n - 1, sh.sphere_count(n - 1));
    out.Qh = block_of(f, n + 1, sh.sphere_count(n + 1));
    if (sh.mode() == Mode::splitter) {
        const int r = sh.pairs(), l = sh.k2_count();
        IntMat qmid = block_of(f, n, l);
        if (qmid.is_identity()) {
            Mod2Mat c(r, l);
            for (int j = 1; j <= l; ++j) {
                const Element& img = f.image_of(n, j);
                for (int s = 1; s <= r; ++s)
                    c.at(s - 1, j - 1) =
                        (unsigned char)(img.coeff(Term::incl(n - 1, s, comp_eta())) % 2 != 0);
            }
            out.C = std::move(c);
        }
        out.Qmid = std::move(qmid);
    }
    return out;
}

MatrixBundle extract(const Element& phi) {
    const WedgeShape& sh = *phi.shape();
    const int n = sh.n();
    if (phi.degree() != 2 * n - 1)
        throw PreconditionError("matrix extraction needs a top-degree element, got degree " +
                                std::to_string(phi.degree()));
    MatrixBundle out;
    if (sh.mode() == Mode::classifier) {
        const int k = sh.pairs();
        IntMat m(k, k);
        for (int i = 1; i <= k; ++i)
            for (int j = 1; j <= k; ++j) m.at(i - 1, j - 1) = phi.coeff(Term::wh(n - 1, i, n + 1, j));
        out.M = std::move(m);
        Mod2Mat c(k, k);
        for (int i = 1; i <= k; ++i)
            for (int j = i + 1; j <= k; ++j)
                c.at(i - 1, j - 1) =
                    (unsigned char)(phi.coeff(Term::wh(n - 1, i, n - 1, j, comp_eta_sq())) % 2 != 0);
        out.C = std::move(c);
        return out;
    }
    const int r = sh.pairs(), l = sh.k2_count();
    Mod2Mat a(r, l);
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= l; ++j)
            a.at(i - 1, j - 1) = (unsigned char)(phi.coeff(Term::wh(n - 1, i, n, j, comp_eta())) % 2 != 0);
    out.A = std::move(a);
    IntMat b(l, l);
    for (int i = 1; i <= l; ++i)
        for (int j = i + 1; j <= l; ++j) {
            Coeff v = phi.coeff(Term::wh(n, i, n, j));
            b.at(i - 1, j - 1) = v;
            b.at(j - 1, i - 1) = n % 2 == 0 ? v : -v;
        }
    // diagonal: Hopf invariant of the S^n_i composite sector
    for (int i = 1; i <= l; ++i) {
        if (n % 2 == 1) continue; // odd n: every Hopf invariant vanishes
        Coeff h = 2 * phi.coeff(Term::wh(n, i, n, i)); // the square has Hopf invariant 2
        for (const auto& [t, c] : phi.terms()) {
            if (t.kind != Term::Kind::incl || t.a_dim != n || t.a_idx != i) continue;
            auto hv = comp_hopf(sh, t.comp);
            if (!hv)
                throw MissingDataError("Hopf invariant of '" + comp_str(t.comp) +
                                       "' is not declared; the intersection matrix needs it");
            h += c * *hv;
        }
        b.at(i - 1, i - 1) = h;
    }
    out.B = std::move(b);
    return out;
}

bool is_equivalence(const SelfMap& f) {
    MatrixBundle mb = extract(f);
    auto uni = [](const IntMat& q) {
        Coeff d = det(q);
        return d == 1 || d == -1;
    };
    if (!uni(mb.Qf) || !uni(mb.Qh)) return false;
    if (mb.Qmid && !uni(*mb.Qmid)) return false;
    return true;
}

SelfMap move_F(const ShapePtr& shape, int i, int j) {
    if (shape->mode() != Mode::classifier) throw PreconditionError("move_F lives on the classifier wedge");
    const int n = shape->n();
    if (!shape->has_sphere(n + 1, i) || !shape->has_sphere(n - 1, j))
        throw PreconditionError("move_F indices out of range");
    if (i == j) throw PreconditionError("move_F needs distinct summand indices");
    SelfMap f = identity_map(shape);
    Element img = add(Element(shape, n + 1, Term::incl(n + 1, i)),
                      Element(shape, n + 1, Term::incl(n - 1, j, comp_eta_sq())));
    f.images.insert_or_assign({n + 1, i}, std::move(img));
    return f;
}

SelfMap move_G(const ShapePtr& shape, int r, int s, int t, const Coeff& c) {
    if (shape->mode() != Mode::classifier || shape->n() != 4)
        throw PreconditionError("move_G lives on the n = 4 classifier wedge");
    if (!shape->has_sphere(5, r) || !shape->has_sphere(3, s) || !shape->has_sphere(3, t))
        throw PreconditionError("move_G indices out of range");
    if (s >= t) throw PreconditionError("move_G needs a sorted bracket pair s < t");
    SelfMap f = identity_map(shape);
    Element img = add(Element(shape, 5, Term::incl(5, r)),
                      Element(shape, 5, Term::wh(3, s, 3, t), c));
    f.images.insert_or_assign({5, r}, std::move(img));
    return f;
}

SelfMap shear(const ShapePtr& shape, const Mod2Mat& C) {
    if (shape->mode() != Mode::splitter) throw PreconditionError("shear lives on the splitter wedge");
    const int n = shape->n(), r = shape->pairs(), l = shape->k2_count();
    if (C.rows() != r || C.cols() != l)
        throw PreconditionError("shear matrix must be pairs x middle-spheres");
    SelfMap f = identity_map(shape);
    for (int j = 1; j <= l; ++j) {
        Element img(shape, n, Term::incl(n, j));
        for (int s = 1; s <= r; ++s)
            if (C.at(s - 1, j - 1))
                img = add(img, Element(shape, n, Term::incl(n - 1, s, comp_eta())));
        f.images.insert_or_assign({n, j}, std::move(img));
    }
    return f;
}

SelfMap diag(const ShapePtr& shape, const IntMat& Qf, const IntMat& Qh) {
    if (shape->mode() != Mode::classifier) throw PreconditionError("diag lives on the classifier wedge");
    const int n = shape->n(), k = shape->pairs();
    if (Qf.rows() != k || Qf.cols() != k || Qh.rows() != k || Qh.cols() != k)
        throw PreconditionError("diag blocks must be k x k");
    for (const IntMat* q : {&Qf, &Qh}) {
        Coeff d = det(*q);
        if (d != 1 && d != -1)
            throw PreconditionError("diag block is not unimodular (det = " + coeff_str(d) + ")");
    }
    SelfMap f = identity_map(shape);
    for (int j = 1; j <= k; ++j) {
        std::map<Term, Coeff> lo, hi;
        for (int i = 1; i <= k; ++i) {
            if (Qf.at(i - 1, j - 1) != 0) lo[Term::incl(n - 1, i)] = Qf.at(i - 1, j - 1);
            if (Qh.at(i - 1, j - 1) != 0) hi[Term::incl(n + 1, i)] = Qh.at(i - 1, j - 1);
        }
        f.images.insert_or_assign({n - 1, j}, Element(shape, n - 1, std::move(lo)));
        f.images.insert_or_assign({n + 1, j}, Element(shape, n + 1, std::move(hi)));
    }
    return f;
}

SelfMap pair_move(const ShapePtr& shape, int i, int j) {
    if (shape->mode() != Mode::classifier || shape->n() != 4)
        throw PreconditionError("pair_move lives on the n = 4 classifier wedge");
    if (i == j || !shape->has_sphere(3, i) || !shape->has_sphere(3, j))
        throw PreconditionError("pair_move needs two distinct summand pairs");
    SelfMap f = identity_map(shape);
    f.images.insert_or_assign({5, i}, sub(Element(shape, 5, Term::incl(5, i)),
                                          Element(shape, 5, Term::incl(5, j))));
    f.images.insert_or_assign({3, j}, add(Element(shape, 3, Term::incl(3, i)),
                                          Element(shape, 3, Term::incl(3, j))));
    return f;
}

SelfMap inverse_of_diag(const SelfMap& f) {
    const ShapePtr& shape = f.shape;
    const int n = shape->n(), k = shape->pairs();
    MatrixBundle mb = extract(f);
    // the map must really be block-diagonal for the matrix inverse to be its
    // inverse as a map
    for (int j = 1; j <= k; ++j) {
        const Element& img = f.image_of(n + 1, j);
        for (const auto& [t, c] : img.terms())
            if (t.kind != Term::Kind::incl || t.a_dim != n + 1)
                throw PreconditionError("inverse_of_diag: map has off-diagonal image parts");
    }
    return diag(shape, unimodular_inverse(mb.Qf), unimodular_inverse(mb.Qh));
}

void MoveChain::push(SelfMap fwd, SelfMap bwd) {
    if (!shape) shape = fwd.shape;
    forward.push_back(std::move(fwd));
    backward.push_back(std::move(bwd));
}

SelfMap MoveChain::fold() const {
    SelfMap acc = identity_map(shape);
    for (const auto& m : forward) acc = compose_maps(m, acc);
    return acc;
}

SelfMap MoveChain::fold_inverse() const {
    SelfMap acc = identity_map(shape);
    for (auto it = backward.rbegin(); it != backward.rend(); ++it) acc = compose_maps(*it, acc);
    return acc;
}

} // namespace wedgecalc
