#pragma once

#include <cstdint>
#include <set>

#include "wedgecalc/classify.hpp"

namespace wedgecalc {

// Independent checks used by the test suite and exposed on the CLI.  All
// randomness is seeded and reported.

struct LawReport {
    std::uint64_t seed = 0;
    int trials = 0;
    int failures = 0;
    std::vector<std::string> failure_notes;
    bool ok() const { return failures == 0; }
};

// Random classifier elements / maps from the move closure; checks
// M_{F.phi} = Qf * M_phi * Qh^T on every trial.
LawReport check_matrix_law_classifier(int n, int k, int trials, std::uint64_t seed);

// Random splitter elements and shears; checks A_{f.phi} = A_phi + C_f * B_phi
// over F_2 on every trial.
LawReport check_matrix_law_splitter(int n, int r, int l, int trials, std::uint64_t seed);

// Weight <= 3 free graded Lie algebra on g odd generators (g <= 4), built
// from raw antisymmetry + Jacobi relations by exact linear algebra, with no
// use of the calculus rewriter.  Verifies every weight-2 and weight-3
// bracket expression (both nesting orders) against the engine, and that the
// Hall symbols form a basis of the quotient.
struct FreeLieReport {
    int generators = 0;
    bool hall_basis_ok = false;
    int weight2_checked = 0;
    int weight3_checked = 0;
    int mismatches = 0;
    std::vector<std::string> mismatch_notes;
    bool ok() const { return hall_basis_ok && mismatches == 0; }
};
FreeLieReport free_lie_model_check(int generators);

// Breadth-first orbit of phi under a move set.  Collects canonical prints.
struct OrbitReport {
    std::set<std::string> elements;
    bool truncated = false; // node cap hit before depth exhausted
    long nodes = 0;
};
OrbitReport orbit_bfs(const Element& phi, const std::vector<SelfMap>& moves,
                      int depth, long node_cap = 200000);

// Torsion-sector move set at n = 4: all F(i,j) and unit G(r,s,t).
std::vector<SelfMap> torsion_moves(const ShapePtr& shape);

// Seeded generators shared by tests and the oracle CLI.
struct Rng;
class RandomSource {
  public:
    explicit RandomSource(std::uint64_t seed);
    ~RandomSource();
    std::int64_t pick(std::int64_t lo, std::int64_t hi); // inclusive
    RandomSource(const RandomSource&) = delete;
    RandomSource& operator=(const RandomSource&) = delete;

  private:
    Rng* rng_;
};

// Random unimodular k x k matrix: a bounded product of elementary
// operations applied to the identity.
IntMat random_unimodular(int k, RandomSource& rnd, int ops = 6);

// Random degree-(2n-1) classifier element with mixed block M, plus random
// torsion content.
Element random_classifier_element(const ShapePtr& shape, const IntMat& M, RandomSource& rnd);

// Random self-map from the move closure (diag of random unimodular blocks
// composed with random F / G moves).
SelfMap random_classifier_move(const ShapePtr& shape, RandomSource& rnd, int moves = 3);

} // namespace wedgecalc
