#include "wedgecalc/shape.hpp"

#include <algorithm>

#include "wedgecalc/errors.hpp"

namespace wedgecalc {

namespace {

void check_n(int n) {
    if (n < 4) throw PreconditionError("ambient parameter n must be >= 4, got " + std::to_string(n));
}

} // namespace

std::shared_ptr<WedgeShape> build_classifier(int n, int k) {
    check_n(n);
    if (k < 1) throw PreconditionError("classifier wedge needs k >= 1 pairs");
    auto sh = std::shared_ptr<WedgeShape>(new WedgeShape());
    sh->n_ = n;
    sh->mode_ = Mode::classifier;
    sh->pairs_ = k;
    sh->k2_ = 0;
    for (int i = 1; i <= k; ++i) {
        sh->summands_.push_back({n - 1, i, SummandKind::sphere, "S" + std::to_string(n - 1) + "_" + std::to_string(i)});
        sh->summands_.push_back({n + 1, i, SummandKind::sphere, "S" + std::to_string(n + 1) + "_" + std::to_string(i)});
    }
    if (n >= 5) {
        // Per-sphere torsion is abstract away from n = 4: one order-2
        // suspended class on each sphere dimension that can carry one, plus
        // the order-2 image class of the self-bracket with an eta^2 tail,
        // w = [id, eta^2].  w is no suspension (it is a bracket), and the
        // rewriter composes it by naturality: e.w = [e, e.eta2].
        sh->declare_atom({"a", n - 1, 2 * n - 1, 2, true, Coeff(0)});
        sh->declare_atom({"b", n + 1, 2 * n - 1, 2, true, Coeff(0)});
        sh->declare_atom({"w", n - 1, 2 * n - 1, 2, false, Coeff(0)});
    }
    return sh;
}

std::shared_ptr<WedgeShape> build_splitter(int n, int r, int l, std::vector<std::string> opaque_labels) {
    check_n(n);
    if (r < 1 || l < 1) throw PreconditionError("splitter wedge needs r >= 1 pairs and l >= 1 middle spheres");
    auto sh = std::shared_ptr<WedgeShape>(new WedgeShape());
    sh->n_ = n;
    sh->mode_ = Mode::splitter;
    sh->pairs_ = r;
    sh->k2_ = l;
    for (int i = 1; i <= r; ++i) {
        sh->summands_.push_back({n - 1, i, SummandKind::sphere, "S" + std::to_string(n - 1) + "_" + std::to_string(i)});
        sh->summands_.push_back({n + 1, i, SummandKind::sphere, "S" + std::to_string(n + 1) + "_" + std::to_string(i)});
    }
    for (size_t p = 0; p < opaque_labels.size(); ++p)
        sh->summands_.push_back({0, int(p) + 1, SummandKind::opaque, opaque_labels[p]});
    for (int j = 1; j <= l; ++j)
        sh->summands_.push_back({n, j, SummandKind::sphere, "S" + std::to_string(n) + "_" + std::to_string(j)});
    // Generic top-degree torsion class on the middle spheres.  At n = 4 this
    // is the Hopf class generating the infinite part; its order is left
    // unknown so only suspension-invariance is assumed of it.
    if (n == 4) sh->declare_atom({"b", n, 2 * n - 1, kOrderUnknown, false, Coeff(1)});
    return sh;
}

std::shared_ptr<const WedgeShape> WedgeShape::classifier(int n, int k) { return build_classifier(n, k); }

std::shared_ptr<const WedgeShape> WedgeShape::splitter(int n, int r, int l, std::vector<std::string> opaque_labels) {
    return build_splitter(n, r, l, std::move(opaque_labels));
}

int WedgeShape::sphere_count(int dim) const {
    int c = 0;
    for (const auto& s : summands_)
        if (s.kind == SummandKind::sphere && s.dim == dim) ++c;
    return c;
}

bool WedgeShape::has_sphere(int dim, int index) const {
    return index >= 1 && index <= sphere_count(dim);
}

bool WedgeShape::degree_supported(int d) const {
    auto ds = supported_degrees();
    return std::find(ds.begin(), ds.end(), d) != ds.end();
}

std::vector<int> WedgeShape::supported_degrees() const {
    // The cell dimensions, the eta-shifted degrees between them, and the top
    // degree where attaching maps live.
    return {n_ - 1, n_, n_ + 1, 2 * n_ - 1};
}

bool WedgeShape::dim_in_k1(int dim) const {
    return mode_ == Mode::splitter && (dim == n_ - 1 || dim == n_ + 1);
}

void WedgeShape::declare_atom(AtomDecl decl) {
    if (decl.id.empty()) throw PreconditionError("abstract class needs a nonempty id");
    if (decl.id == "eta" || decl.id == "eta2" || decl.id == "nu'eta")
        throw PreconditionError("'" + decl.id + "' is a builtin composition name");
    if (atoms_.count(decl.id))
        throw PreconditionError("abstract class '" + decl.id + "' is already declared on this shape");
    if (decl.source_dim <= decl.target_dim)
        throw PreconditionError("abstract class must lower degree: source_dim > target_dim");
    if (decl.hopf && *decl.hopf != 0) {
        if (decl.target_dim % 2 == 1)
            throw PreconditionError("classes on odd-dimensional spheres have zero Hopf invariant");
        if (decl.source_dim != 2 * decl.target_dim - 1)
            throw PreconditionError("Hopf invariant only applies in degree 2*target_dim - 1");
        if (decl.suspended)
            throw PreconditionError("a suspension has zero Hopf invariant");
        if (decl.order >= 1)
            throw PreconditionError("a finite-order class has zero Hopf invariant");
    }
    atoms_[decl.id] = std::move(decl);
}

const AtomDecl* WedgeShape::find_atom(const std::string& id) const {
    auto it = atoms_.find(id);
    return it == atoms_.end() ? nullptr : &it->second;
}

bool operator==(const WedgeShape& a, const WedgeShape& b) {
    if (a.n_ != b.n_ || a.mode_ != b.mode_ || a.pairs_ != b.pairs_ || a.k2_ != b.k2_) return false;
    if (a.summands_.size() != b.summands_.size()) return false;
    for (size_t i = 0; i < a.summands_.size(); ++i) {
        const auto& x = a.summands_[i];
        const auto& y = b.summands_[i];
        if (x.dim != y.dim || x.index != y.index || x.kind != y.kind || x.label != y.label) return false;
    }
    if (a.atoms_.size() != b.atoms_.size()) return false;
    for (auto ia = a.atoms_.begin(), ib = b.atoms_.begin(); ia != a.atoms_.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return false;
        const AtomDecl& x = ia->second;
        const AtomDecl& y = ib->second;
        if (x.target_dim != y.target_dim || x.source_dim != y.source_dim || x.order != y.order ||
            x.suspended != y.suspended || x.hopf != y.hopf)
            return false;
    }
    return true;
}

} // namespace wedgecalc
