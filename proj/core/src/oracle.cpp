#include "wedgecalc/oracle.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <random>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "wedgecalc/errors.hpp"

namespace wedgecalc {

using Rational = boost::multiprecision::cpp_rational;

struct Rng {
    std::mt19937_64 eng;
};

RandomSource::RandomSource(std::uint64_t seed) : rng_(new Rng{std::mt19937_64{seed}}) {}

RandomSource::~RandomSource() { delete rng_; }

std::int64_t RandomSource::pick(std::int64_t lo, std::int64_t hi) {
    std::uniform_int_distribution<std::int64_t> d(lo, hi);
    return d(rng_->eng);
}

IntMat random_unimodular(int k, RandomSource& rnd, int ops) {
    if (k < 1) throw PreconditionError("random unimodular matrices need k >= 1");
    IntMat m = IntMat::identity(k);
    for (int step = 0; step < ops; ++step) {
        const int op = k == 1 ? 2 : static_cast<int>(rnd.pick(0, 2));
        if (op == 0) { // row j += c * row i
            const int i = static_cast<int>(rnd.pick(0, k - 1));
            int j;
            do j = static_cast<int>(rnd.pick(0, k - 1)); while (j == i);
            const Coeff c = rnd.pick(-2, 2);
            for (int col = 0; col < k; ++col) m.at(j, col) += c * m.at(i, col);
        } else if (op == 1) { // swap two rows
            const int i = static_cast<int>(rnd.pick(0, k - 1));
            int j;
            do j = static_cast<int>(rnd.pick(0, k - 1)); while (j == i);
            for (int col = 0; col < k; ++col) std::swap(m.at(i, col), m.at(j, col));
        } else { // negate a row
            const int i = static_cast<int>(rnd.pick(0, k - 1));
            for (int col = 0; col < k; ++col) m.at(i, col) = -m.at(i, col);
        }
    }
    return m;
}

Element random_classifier_element(const ShapePtr& shape, const IntMat& M, RandomSource& rnd) {
    const WedgeShape& sh = *shape;
    if (sh.mode() != Mode::classifier)
        throw PreconditionError("random attaching elements are drawn on classifier wedges");
    const int n = sh.n(), k = sh.pairs();
    if (M.rows() != k || M.cols() != k)
        throw PreconditionError("the mixed block must be k x k");
    std::map<Term, Coeff> ts;
    for (const Term& t : degree_basis(shape, 2 * n - 1)) {
        if (t.kind == Term::Kind::wh && t.comp.is_identity() && t.a_dim == n - 1 && t.b_dim == n + 1) {
            const Coeff& c = M.at(t.a_idx - 1, t.b_idx - 1);
            if (c != 0) ts.emplace(t, c);
        } else if (t.kind == Term::Kind::wh3) {
            const Coeff c = rnd.pick(-8, 8);
            if (c != 0) ts.emplace(t, c);
        } else if (rnd.pick(0, 1)) {
            ts.emplace(t, 1);
        }
    }
    return Element(shape, 2 * n - 1, ts);
}

SelfMap random_classifier_move(const ShapePtr& shape, RandomSource& rnd, int moves) {
    const WedgeShape& sh = *shape;
    if (sh.mode() != Mode::classifier)
        throw PreconditionError("random moves are drawn on classifier wedges");
    const int n = sh.n(), k = sh.pairs();
    SelfMap acc = diag(shape, random_unimodular(k, rnd), random_unimodular(k, rnd));
    for (int step = 0; step < moves; ++step) {
        const int kind = static_cast<int>(rnd.pick(0, 2));
        if (kind == 0 && k >= 2) {
            const int i = static_cast<int>(rnd.pick(1, k));
            int j;
            do j = static_cast<int>(rnd.pick(1, k)); while (j == i);
            acc = compose_maps(move_F(shape, i, j), acc);
        } else if (kind == 1 && n == 4 && k >= 2) {
            const int r = static_cast<int>(rnd.pick(1, k));
            const int s = static_cast<int>(rnd.pick(1, k - 1));
            const int t = static_cast<int>(rnd.pick(s + 1, k));
            acc = compose_maps(move_G(shape, r, s, t, rnd.pick(-2, 2)), acc);
        } else {
            acc = compose_maps(diag(shape, random_unimodular(k, rnd), random_unimodular(k, rnd)), acc);
        }
    }
    return acc;
}

LawReport check_matrix_law_classifier(int n, int k, int trials, std::uint64_t seed) {
    if (trials < 1) throw PreconditionError("law checking needs at least one trial");
    LawReport rep;
    rep.seed = seed;
    rep.trials = trials;
    auto shape = WedgeShape::classifier(n, k);
    RandomSource rnd(seed);
    for (int t = 0; t < trials; ++t) {
        IntMat m(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) m.at(i, j) = rnd.pick(-8, 8);
        const Element phi = random_classifier_element(shape, m, rnd);
        const SelfMap f = random_classifier_move(shape, rnd, 3);
        const IntMat lhs = *extract(apply(f, phi)).M;
        const MatrixBundle bf = extract(f);
        const IntMat rhs = mul(mul(bf.Qf, *extract(phi).M), transpose(bf.Qh));
        if (!(lhs == rhs)) {
            ++rep.failures;
            if (rep.failure_notes.size() < 8)
                rep.failure_notes.push_back("trial " + std::to_string(t) +
                                            ": mixed-block law fails on " + to_string(phi));
        }
    }
    return rep;
}

LawReport check_matrix_law_splitter(int n, int r, int l, int trials, std::uint64_t seed) {
    if (trials < 1) throw PreconditionError("law checking needs at least one trial");
    LawReport rep;
    rep.seed = seed;
    rep.trials = trials;
    auto shape = WedgeShape::splitter(n, r, l);
    RandomSource rnd(seed);
    for (int t = 0; t < trials; ++t) {
        std::map<Term, Coeff> ts;
        for (int i = 1; i <= r; ++i) {
            for (int j = 1; j <= l; ++j)
                if (rnd.pick(0, 1)) ts.emplace(Term::wh(n - 1, i, n, j, comp_eta()), 1);
            if (n == 4 && rnd.pick(0, 1))
                ts.emplace(Term::incl(3, i, comp_nu_prime_eta()), 1);
        }
        for (int i = 1; i <= l; ++i) {
            for (int j = i + 1; j <= l; ++j) {
                const Coeff c = rnd.pick(-8, 8);
                if (c != 0) ts.emplace(Term::wh(n, i, n, j), c);
            }
            const Coeff cd = rnd.pick(-2, 2);
            if (cd != 0) ts.emplace(Term::wh(n, i, n, i), cd);
            if (n == 4 && rnd.pick(0, 1))
                ts.emplace(Term::incl(4, i, comp_atom("b")), rnd.pick(1, 3));
        }
        const Element phi(shape, 2 * n - 1, ts);

        Mod2Mat cf(r, l);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < l; ++j) cf.at(i, j) = static_cast<unsigned char>(rnd.pick(0, 1));
        const SelfMap f = shear(shape, cf);

        const Mod2Mat lhs = *extract(apply(f, phi)).A;
        const Mod2Mat rhs = add(*extract(phi).A, mul(*extract(f).C, reduce_mod2(*extract(phi).B)));
        if (!(lhs == rhs)) {
            ++rep.failures;
            if (rep.failure_notes.size() < 8)
                rep.failure_notes.push_back("trial " + std::to_string(t) +
                                            ": shear law fails on " + to_string(phi));
        }
    }
    return rep;
}

namespace {

// ---- independent free graded Lie model (no calculus involved) ----------
//
// Symbols: weight 2, e(a,b) for the bracket of generators a, b; weight 3,
// L(r,s,t) for the bracket of generator r with e(s,t).  Relations, with all
// generators in odd degree 3:
//   e(a,a) = 0                          base spheres are H-spaces
//   e(a,b) + e(b,a) = 0                 graded antisymmetry
//   L(r,s,s) = 0, L(r,s,t) + L(r,t,s) = 0
//   L(a,b,c) + L(b,c,a) + L(c,a,b) = 0  graded Jacobi, cyclic form
// The quotients are computed by exact rational elimination plus an integer
// invariant-factor check, never by the rewriting engine under test.

std::vector<std::vector<Coeff>> weight2_relations(int g) {
    auto idx = [g](int a, int b) { return (a - 1) * g + (b - 1); };
    std::vector<std::vector<Coeff>> rows;
    for (int a = 1; a <= g; ++a)
        for (int b = a; b <= g; ++b) {
            std::vector<Coeff> row(static_cast<size_t>(g) * g, 0);
            if (a == b) {
                row[idx(a, a)] = 1;
            } else {
                row[idx(a, b)] += 1;
                row[idx(b, a)] += 1;
            }
            rows.push_back(std::move(row));
        }
    return rows;
}

std::vector<std::vector<Coeff>> weight3_relations(int g) {
    auto idx = [g](int r, int s, int t) { return ((r - 1) * g + (s - 1)) * g + (t - 1); };
    const size_t d = static_cast<size_t>(g) * g * g;
    std::vector<std::vector<Coeff>> rows;
    for (int r = 1; r <= g; ++r)
        for (int s = 1; s <= g; ++s) {
            {
                std::vector<Coeff> row(d, 0);
                row[idx(r, s, s)] = 1;
                rows.push_back(std::move(row));
            }
            for (int t = s + 1; t <= g; ++t) {
                std::vector<Coeff> row(d, 0);
                row[idx(r, s, t)] += 1;
                row[idx(r, t, s)] += 1;
                rows.push_back(std::move(row));
            }
        }
    for (int a = 1; a <= g; ++a)
        for (int b = 1; b <= g; ++b)
            for (int c = 1; c <= g; ++c) {
                std::vector<Coeff> row(d, 0);
                row[idx(a, b, c)] += 1;
                row[idx(b, c, a)] += 1;
                row[idx(c, a, b)] += 1;
                rows.push_back(std::move(row));
            }
    return rows;
}

struct Rref {
    std::vector<std::vector<Rational>> rows;
    std::vector<int> pivot_col;
};

Rref rref(std::vector<std::vector<Rational>> m) {
    Rref out;
    if (m.empty()) return out;
    const size_t cols = m[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < m.size(); ++col) {
        size_t piv = rank;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[rank], m[piv]);
        const Rational lead = m[rank][col];
        for (size_t j = col; j < cols; ++j) m[rank][j] /= lead;
        for (size_t i = 0; i < m.size(); ++i) {
            if (i == rank || m[i][col] == 0) continue;
            const Rational f = m[i][col];
            for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[rank][j];
        }
        out.pivot_col.push_back(static_cast<int>(col));
        ++rank;
    }
    m.resize(rank);
    out.rows = std::move(m);
    return out;
}

struct Reduction {
    bool ok = false;       // hall symbols are exactly the free columns
    bool integral = true;  // every reduction has integer coordinates
    std::vector<std::vector<Rational>> coords; // symbol -> hall coordinates
};

Reduction reduce_symbols(const std::vector<std::vector<Coeff>>& rel, int d,
                         const std::vector<int>& hall) {
    std::vector<char> is_hall(static_cast<size_t>(d), 0);
    for (int h : hall) is_hall[static_cast<size_t>(h)] = 1;
    std::vector<int> order;
    for (int j = 0; j < d; ++j)
        if (!is_hall[static_cast<size_t>(j)]) order.push_back(j);
    const int nh = static_cast<int>(order.size());
    for (int h : hall) order.push_back(h);
    std::vector<int> pos(static_cast<size_t>(d));
    for (int p = 0; p < d; ++p) pos[static_cast<size_t>(order[p])] = p;

    std::vector<std::vector<Rational>> m;
    m.reserve(rel.size());
    for (const auto& row : rel) {
        std::vector<Rational> r(static_cast<size_t>(d));
        for (int j = 0; j < d; ++j) r[static_cast<size_t>(pos[static_cast<size_t>(j)])] = Rational(row[static_cast<size_t>(j)]);
        m.push_back(std::move(r));
    }
    const Rref rr = rref(std::move(m));

    Reduction red;
    if (static_cast<int>(rr.pivot_col.size()) != nh) return red;
    for (int i = 0; i < nh; ++i)
        if (rr.pivot_col[static_cast<size_t>(i)] != i) return red;
    red.ok = true;
    red.coords.assign(static_cast<size_t>(d), std::vector<Rational>(hall.size(), Rational(0)));
    for (size_t hj = 0; hj < hall.size(); ++hj)
        red.coords[static_cast<size_t>(hall[hj])][hj] = 1;
    for (int i = 0; i < nh; ++i) {
        const int sym = order[static_cast<size_t>(i)];
        for (size_t hj = 0; hj < hall.size(); ++hj) {
            const Rational v = -rr.rows[static_cast<size_t>(i)][static_cast<size_t>(nh) + hj];
            if (denominator(v) != 1) red.integral = false;
            red.coords[static_cast<size_t>(sym)][hj] = v;
        }
    }
    return red;
}

// The relation lattice must be a direct summand: all invariant factors 1,
// rank equal to the non-hall count, so the quotient is free on hall symbols.
bool z_basis_ok(const std::vector<std::vector<Coeff>>& rel, int d, int nh) {
    if (rel.empty()) return nh == 0;
    IntMat m(static_cast<int>(rel.size()), d);
    for (size_t i = 0; i < rel.size(); ++i)
        for (int j = 0; j < d; ++j) m.at(static_cast<int>(i), j) = rel[i][static_cast<size_t>(j)];
    int rank = 0;
    for (const Coeff& v : smith_invariants(m)) {
        if (v == 0) continue;
        if (v != 1) return false;
        ++rank;
    }
    return rank == nh;
}

} // namespace

FreeLieReport free_lie_model_check(int generators) {
    if (generators < 1 || generators > 4)
        throw PreconditionError("the free-Lie model covers 1 to 4 generators");
    const int g = generators;
    FreeLieReport rep;
    rep.generators = g;

    auto idx2 = [g](int a, int b) { return (a - 1) * g + (b - 1); };
    auto idx3 = [g](int r, int s, int t) { return ((r - 1) * g + (s - 1)) * g + (t - 1); };

    std::vector<int> hall2;
    std::vector<std::pair<int, int>> hall2_ab;
    for (int a = 1; a <= g; ++a)
        for (int b = a + 1; b <= g; ++b) {
            hall2.push_back(idx2(a, b));
            hall2_ab.emplace_back(a, b);
        }
    std::vector<int> hall3;
    std::vector<std::array<int, 3>> hall3_rst;
    for (int r = 1; r <= g; ++r)
        for (int s = 1; s <= g; ++s)
            for (int t = 1; t <= g; ++t)
                if (s <= r && s < t) {
                    hall3.push_back(idx3(r, s, t));
                    hall3_rst.push_back({r, s, t});
                }

    const auto rel2 = weight2_relations(g);
    const auto rel3 = weight3_relations(g);
    const Reduction red2 = reduce_symbols(rel2, g * g, hall2);
    const Reduction red3 = reduce_symbols(rel3, g * g * g, hall3);
    rep.hall_basis_ok = red2.ok && red3.ok && red2.integral && red3.integral &&
                        z_basis_ok(rel2, g * g, g * g - static_cast<int>(hall2.size())) &&
                        z_basis_ok(rel3, g * g * g, g * g * g - static_cast<int>(hall3.size()));
    if (!rep.hall_basis_ok) {
        rep.mismatch_notes.push_back("hall reduction failed structurally; engine comparison skipped");
        return rep;
    }

    auto shape = WedgeShape::classifier(4, g);
    auto gen = [&](int a) { return Element(shape, 3, Term::incl(3, a)); };

    auto expected2 = [&](int a, int b) {
        Element e(shape, 5);
        const auto& co = red2.coords[static_cast<size_t>(idx2(a, b))];
        for (size_t h = 0; h < hall2_ab.size(); ++h) {
            if (co[h] == 0) continue;
            e = add(e, scale(numerator(co[h]),
                             Element(shape, 5, Term::wh(3, hall2_ab[h].first, 3, hall2_ab[h].second))));
        }
        return e;
    };
    for (int a = 1; a <= g; ++a)
        for (int b = 1; b <= g; ++b) {
            ++rep.weight2_checked;
            if (!(whitehead(gen(a), gen(b)) == expected2(a, b))) {
                ++rep.mismatches;
                rep.mismatch_notes.push_back("[x" + std::to_string(a) + ",x" + std::to_string(b) +
                                             "] disagrees with the model");
            }
        }

    auto expected3 = [&](int r, int s, int t) {
        Element e(shape, 7);
        const auto& co = red3.coords[static_cast<size_t>(idx3(r, s, t))];
        for (size_t h = 0; h < hall3_rst.size(); ++h) {
            if (co[h] == 0) continue;
            const auto& w = hall3_rst[h];
            e = add(e, scale(numerator(co[h]), Element(shape, 7, Term::wh3(w[0], w[1], w[2]))));
        }
        return e;
    };
    for (int r = 1; r <= g; ++r)
        for (int s = 1; s <= g; ++s)
            for (int t = 1; t <= g; ++t) {
                const Element inner = whitehead(gen(s), gen(t));
                const Element rhs = expected3(r, s, t);
                const std::string name = "x" + std::to_string(r) + ",[x" + std::to_string(s) +
                                         ",x" + std::to_string(t) + "]";
                ++rep.weight3_checked;
                if (!(whitehead(gen(r), inner) == rhs)) {
                    ++rep.mismatches;
                    rep.mismatch_notes.push_back("[" + name + "] disagrees with the model");
                }
                ++rep.weight3_checked;
                if (!(whitehead(inner, gen(r)) == negate(rhs))) {
                    ++rep.mismatches;
                    rep.mismatch_notes.push_back("outer swap of [" + name + "] disagrees with the model");
                }
            }
    return rep;
}

OrbitReport orbit_bfs(const Element& phi, const std::vector<SelfMap>& moves,
                      int depth, long node_cap) {
    const WedgeShape& sh = *phi.shape();
    if (sh.mode() != Mode::classifier || sh.n() != 4)
        throw PreconditionError("orbit enumeration is set up for n = 4 classifier wedges");
    if (sh.pairs() > 3)
        throw PreconditionError("orbit enumeration is bounded to k <= 3");
    if (depth < 0 || depth > 16)
        throw PreconditionError("orbit depth must lie in [0, 16]");
    OrbitReport rep;
    std::deque<std::pair<Element, int>> queue;
    queue.emplace_back(phi, 0);
    rep.elements.insert(to_string(phi));
    rep.nodes = 1;
    while (!queue.empty()) {
        auto [e, d] = std::move(queue.front());
        queue.pop_front();
        if (d >= depth) continue;
        for (const auto& m : moves) {
            Element next = apply(m, e);
            if (!rep.elements.insert(to_string(next)).second) continue;
            if (rep.nodes >= node_cap) {
                rep.truncated = true;
                return rep;
            }
            ++rep.nodes;
            queue.emplace_back(std::move(next), d + 1);
        }
    }
    return rep;
}

std::vector<SelfMap> torsion_moves(const ShapePtr& shape) {
    const WedgeShape& sh = *shape;
    if (sh.mode() != Mode::classifier || sh.n() != 4)
        throw PreconditionError("the torsion move set lives on n = 4 classifier wedges");
    const int k = sh.pairs();
    std::vector<SelfMap> mv;
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j)
            if (i != j) mv.push_back(move_F(shape, i, j));
    for (int r = 1; r <= k; ++r)
        for (int s = 1; s <= k; ++s)
            for (int t = s + 1; t <= k; ++t) {
                mv.push_back(move_G(shape, r, s, t, 1));
                mv.push_back(move_G(shape, r, s, t, -1));
            }
    return mv;
}

} // namespace wedgecalc
