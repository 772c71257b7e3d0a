#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wedgecalc/errors.hpp"
#include "wedgecalc/matrix.hpp"

using namespace wedgecalc;

namespace {
IntMat m22(Coeff a, Coeff b, Coeff c, Coeff d) {
    IntMat m(2, 2);
    m.at(0, 0) = a;
    m.at(0, 1) = b;
    m.at(1, 0) = c;
    m.at(1, 1) = d;
    return m;
}
} // namespace

TEST_CASE("integer matrix basics") {
    IntMat i3 = IntMat::identity(3);
    CHECK(i3.is_identity());
    CHECK(!i3.is_zero());
    CHECK(IntMat(2, 3).is_zero());
    CHECK(det(i3) == 1);

    IntMat a = m22(1, 2, 3, 4);
    CHECK(det(a) == -2);
    CHECK(det(m22(2, 0, 0, 3)) == 6);

    IntMat b = m22(0, 1, 1, 0);
    CHECK(mul(a, b) == m22(2, 1, 4, 3));
    CHECK(add(a, b) == m22(1, 3, 4, 4));
    CHECK(transpose(a) == m22(1, 3, 2, 4));
}

TEST_CASE("unimodular inverse") {
    IntMat u = m22(2, 1, 1, 1); // det 1
    IntMat v = unimodular_inverse(u);
    CHECK(mul(u, v).is_identity());
    CHECK(mul(v, u).is_identity());
    CHECK(v == m22(1, -1, -1, 2));

    IntMat w = m22(0, 1, 1, 0); // det -1
    CHECK(mul(w, unimodular_inverse(w)).is_identity());

    CHECK_THROWS_AS(unimodular_inverse(m22(1, 2, 3, 4)), PreconditionError);
    CHECK_THROWS_AS(unimodular_inverse(m22(2, 0, 0, 2)), PreconditionError);

    // larger pseudo-random unimodular: product of shears
    IntMat p = IntMat::identity(4);
    auto shear_rc = [&p](int r, int c, Coeff v) {
        IntMat e = IntMat::identity(4);
        e.at(r, c) = v;
        p = mul(p, e);
    };
    shear_rc(0, 1, 3);
    shear_rc(2, 3, -2);
    shear_rc(1, 0, 7);
    shear_rc(3, 2, 5);
    shear_rc(0, 3, -4);
    CHECK((det(p) == 1 || det(p) == -1));
    CHECK(mul(p, unimodular_inverse(p)).is_identity());
}

TEST_CASE("smith invariant factors") {
    CHECK(smith_invariants(IntMat::identity(3)) == std::vector<Coeff>{1, 1, 1});
    CHECK(smith_invariants(m22(2, 0, 0, 3)) == std::vector<Coeff>{1, 6});
    CHECK(smith_invariants(m22(2, 0, 0, 2)) == std::vector<Coeff>{2, 2});
    CHECK(smith_invariants(m22(0, 0, 0, 0)) == std::vector<Coeff>{0, 0});
    CHECK(smith_invariants(m22(4, 6, 6, 9)) == std::vector<Coeff>{1, 0}); // det 0, rank 1... gcd 1

    // rectangular
    IntMat r(2, 3);
    r.at(0, 0) = 2;
    r.at(1, 1) = 4;
    CHECK(smith_invariants(r) == std::vector<Coeff>{2, 4});

    // invariants are unchanged under unimodular row/column action
    IntMat m = m22(6, 4, 2, 8);
    IntMat q = m22(1, 1, 0, 1);
    CHECK(smith_invariants(mul(q, m)) == smith_invariants(m));
    CHECK(smith_invariants(mul(m, transpose(q))) == smith_invariants(m));
}

TEST_CASE("mod-2 matrices") {
    Mod2Mat a(2, 2);
    a.at(0, 0) = 1;
    a.at(0, 1) = 1;
    a.at(1, 1) = 1;
    Mod2Mat b(2, 2);
    b.at(0, 0) = 1;
    b.at(1, 0) = 1;

    Mod2Mat ab = mul(a, b);
    CHECK(ab.at(0, 0) == 0); // 1*1 + 1*1 = 0 mod 2
    CHECK(ab.at(1, 0) == 1);

    Mod2Mat s = add(a, a);
    CHECK(s.at(0, 0) == 0);
    CHECK(s.at(0, 1) == 0);

    Mod2Mat inv = inverse_mod2(a);
    Mod2Mat prod = mul(a, inv);
    CHECK(prod.at(0, 0) == 1);
    CHECK(prod.at(0, 1) == 0);
    CHECK(prod.at(1, 0) == 0);
    CHECK(prod.at(1, 1) == 1);

    Mod2Mat sing(2, 2);
    sing.at(0, 0) = 1;
    sing.at(0, 1) = 1;
    sing.at(1, 0) = 1;
    sing.at(1, 1) = 1;
    CHECK_THROWS_AS(inverse_mod2(sing), PreconditionError);

    IntMat big = m22(5, -3, 2, 4);
    Mod2Mat red = reduce_mod2(big);
    CHECK(red.at(0, 0) == 1);
    CHECK(red.at(0, 1) == 1);
    CHECK(red.at(1, 0) == 0);
    CHECK(red.at(1, 1) == 0);
}
