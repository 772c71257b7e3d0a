#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wedgecalc/oracle.hpp"
#include "wedgecalc/parser.hpp"

using namespace wedgecalc;

TEST_CASE("mixed-block transport law holds on random classifier data") {
    for (auto [n, k] : {std::pair{4, 2}, {4, 3}, {6, 2}}) {
        LawReport r = check_matrix_law_classifier(n, k, 40, 99);
        INFO("n = ", n, ", k = ", k, "; notes: ",
             r.failure_notes.empty() ? "" : r.failure_notes.front());
        CHECK(r.trials == 40);
        CHECK(r.seed == 99);
        CHECK(r.ok());
    }
}

TEST_CASE("intersection-sector shear law holds on random splitter data") {
    for (auto [r_, l_] : {std::pair{1, 1}, {2, 2}, {3, 2}}) {
        LawReport r = check_matrix_law_splitter(4, r_, l_, 30, 1234);
        INFO("r = ", r_, ", l = ", l_, "; notes: ",
             r.failure_notes.empty() ? "" : r.failure_notes.front());
        CHECK(r.trials == 30);
        CHECK(r.ok());
    }
    CHECK(check_matrix_law_splitter(6, 2, 2, 20, 5).ok());
}

TEST_CASE("free graded Lie model agrees with the rewriter through weight 3") {
    for (int g = 1; g <= 4; ++g) {
        FreeLieReport r = free_lie_model_check(g);
        INFO("g = ", g, "; notes: ",
             r.mismatch_notes.empty() ? "" : r.mismatch_notes.front());
        CHECK(r.generators == g);
        CHECK(r.hall_basis_ok);
        CHECK(r.mismatches == 0);
        CHECK(r.ok());
        // every ordered pair and both nesting orders of every ordered triple
        CHECK(r.weight2_checked == g * g);
        CHECK(r.weight3_checked == 2 * g * g * g);
    }
}

TEST_CASE("orbit enumeration: depth zero, growth, truncation flag") {
    auto sh = WedgeShape::classifier(4, 2);
    Element phi = parse_element(
        "W(i(3,1),i(5,1)) + W(i(3,2),i(5,2)) + i(3,1).nu'eta", sh);
    auto moves = torsion_moves(sh);
    CHECK(!moves.empty());
    for (const auto& m : moves) CHECK(is_equivalence(m));

    OrbitReport base = orbit_bfs(phi, moves, 0);
    CHECK(base.elements.size() == 1);
    CHECK(base.elements.count(to_string(phi)) == 1);
    CHECK(!base.truncated);

    OrbitReport one = orbit_bfs(phi, moves, 1);
    CHECK(one.elements.size() > 1);
    CHECK(one.elements.count(to_string(phi)) == 1);
    CHECK(!one.truncated);

    OrbitReport deep = orbit_bfs(phi, moves, 2);
    // the orbit only grows with depth
    for (const auto& s : one.elements) CHECK(deep.elements.count(s) == 1);

    OrbitReport capped = orbit_bfs(phi, moves, 3, 2);
    CHECK(capped.truncated);
    CHECK(capped.nodes <= 2);
}

TEST_CASE("orbits stay inside the torsion class at small depth") {
    auto sh = WedgeShape::classifier(4, 2);
    auto moves = torsion_moves(sh);
    Element x10 = parse_element(
        "W(i(3,1),i(5,1)) + W(i(3,2),i(5,2)) + i(3,1).nu'eta", sh);
    Element x01 = parse_element(
        "W(i(3,1),i(5,1)) + W(i(3,2),i(5,2)) + i(5,1).eta2", sh);
    OrbitReport a = orbit_bfs(x10, moves, 3);
    OrbitReport b = orbit_bfs(x01, moves, 3);
    REQUIRE(!a.truncated);
    REQUIRE(!b.truncated);
    for (const auto& s : a.elements) CHECK(b.elements.count(s) == 0);
}

TEST_CASE("random unimodular matrices are unimodular") {
    RandomSource rnd(2024);
    for (int k = 1; k <= 4; ++k)
        for (int rep = 0; rep < 10; ++rep) {
            IntMat q = random_unimodular(k, rnd);
            Coeff d = det(q);
            CHECK((d == 1 || d == -1));
        }
}

TEST_CASE("random classifier elements carry the requested mixed block") {
    auto sh = WedgeShape::classifier(4, 3);
    RandomSource rnd(77);
    for (int rep = 0; rep < 10; ++rep) {
        IntMat m = random_unimodular(3, rnd);
        Element e = random_classifier_element(sh, m, rnd);
        MatrixBundle mb = extract(e);
        REQUIRE(mb.M.has_value());
        CHECK(*mb.M == m);
    }
}

TEST_CASE("random classifier moves are equivalences") {
    auto sh = WedgeShape::classifier(4, 2);
    RandomSource rnd(31);
    for (int rep = 0; rep < 10; ++rep)
        CHECK(is_equivalence(random_classifier_move(sh, rnd)));
}

TEST_CASE("seeded randomness is reproducible") {
    RandomSource r1(7), r2(7);
    for (int i = 0; i < 100; ++i) CHECK(r1.pick(-50, 50) == r2.pick(-50, 50));

    LawReport a = check_matrix_law_classifier(4, 2, 15, 42);
    LawReport b = check_matrix_law_classifier(4, 2, 15, 42);
    CHECK(a.failures == b.failures);
    CHECK(a.failure_notes == b.failure_notes);

    auto sh = WedgeShape::classifier(4, 2);
    RandomSource s1(9), s2(9);
    IntMat m1 = random_unimodular(2, s1), m2 = random_unimodular(2, s2);
    CHECK(m1 == m2);
    CHECK(random_classifier_element(sh, m1, s1) == random_classifier_element(sh, m2, s2));
}
