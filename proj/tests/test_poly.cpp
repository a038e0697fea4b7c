#include <doctest.h>

#include "berkline/qpoly.hpp"
#include "berkline/tower.hpp"

using namespace berkline;

namespace {
QPoly qp(std::vector<long> coeffs) {
    std::vector<mpq_class> c;
    for (long x : coeffs) c.emplace_back(x);
    return QPoly(std::move(c));
}
} // namespace

TEST_CASE("taylor shift") {
    // f = x^2, a = 1 -> [1, 2, 1]
    CHECK(qp({0, 0, 1}).taylor_shift(mpq_class(1)) == qp({1, 2, 1}));
    CHECK(qp({0, 1}).taylor_shift(mpq_class(0)) == qp({0, 1}));
    QPoly f = qp({-27, 0, 0, 0, -54, 0, 0, 0, -27, -4});
    CHECK(f.taylor_shift(mpq_class(0)) == f);
    // roundtrip
    QPoly g = qp({3, -2, 5, 7});
    CHECK(g.taylor_shift(mpq_class(5)).taylor_shift(mpq_class(-5)) == g);
}

TEST_CASE("resultants") {
    CHECK(resultant(qp({-1, 1}), qp({-2, 1})) == mpq_class(-1));
    CHECK(resultant(qp({0, 0, 1}), qp({0, 1})) == mpq_class(0));
    CHECK(resultant(qp({1, 0, 1}), qp({-2, 0, 1})) == mpq_class(9));
}

TEST_CASE("resultant multiplicativity") {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(11);
    auto rnd = [&](int deg) {
        std::vector<mpq_class> c;
        for (int i = 0; i < deg; ++i) c.emplace_back(Int(rng.get_z_range(Int(9))) - 4);
        c.emplace_back(1);
        return QPoly(std::move(c));
    };
    for (int t = 0; t < 25; ++t) {
        QPoly f = rnd(2 + t % 3), g = rnd(1 + t % 2), h = rnd(2);
        CHECK(resultant(f, g * h) == resultant(f, g) * resultant(f, h));
    }
}

TEST_CASE("squarefree decomposition over Q") {
    QPoly f = qp({-1, 1}); // x-1
    QPoly g = qp({1, 1});  // x+1
    QPoly h = f * f * g * g * g * qp({2, 1});
    auto parts = squarefree_decompose_q(h);
    REQUIRE(parts.size() == 3);
    CHECK(parts[0] == std::make_pair(qp({2, 1}), 1));
    CHECK(parts[1] == std::make_pair(f, 2));
    CHECK(parts[2] == std::make_pair(g, 3));
}

TEST_CASE("factor over Q") {
    // x^4 - 1 = (x-1)(x+1)(x^2+1)
    auto fac = factor_over_q(qp({-1, 0, 0, 0, 1}));
    REQUIRE(fac.size() == 3);
    CHECK(fac[0].first == qp({-1, 1}));
    CHECK(fac[1].first == qp({1, 1}));
    CHECK(fac[2].first == qp({1, 0, 1}));

    // irreducible: Eisenstein x^5 + 6x + 3
    CHECK(is_irreducible_over_q(qp({3, 6, 0, 0, 0, 1})));

    // the degree-9 discriminant from the quartic y^3 + x^3 y + x^4 + 1
    QPoly d = qp({-27, 0, 0, 0, -54, 0, 0, 0, -27, -4});
    CHECK(is_irreducible_over_q(d));

    // non-monic with rational coefficients
    std::vector<mpq_class> c = {mpq_class(1, 2), mpq_class(0), mpq_class(3)};
    auto fac2 = factor_over_q(QPoly(std::move(c))); // 3x^2 + 1/2, irreducible
    REQUIRE(fac2.size() == 1);
    CHECK(fac2[0].first == QPoly(std::vector<mpq_class>{mpq_class(1, 6), mpq_class(0), mpq_class(1)}));
}

TEST_CASE("factor worked-example discriminants") {
    // Delta_F for y^3 + (2x^3+3x^2)y - 3x^4 - 2x^2 - 1:
    // -4B^3 - 27C^2 with A = 0.
    QPoly B = qp({0, 0, 3, 2});
    QPoly C = qp({-1, 0, -2, 0, -3});
    QPoly delta = (B * B * B) * mpq_class(-4) - (C * C) * mpq_class(27);
    CHECK(delta.degree() == 9);
    auto fac = factor_over_q(delta);
    int total = 0;
    for (const auto& [g, m] : fac) total += g.degree() * m;
    CHECK(total == 9);
    for (const auto& [g, m] : fac) CHECK(m == 1);
}

TEST_CASE("tower arithmetic in Q(sqrt2)") {
    // x^2 - 2 over Q
    TPoly mod = tpoly_from_q(qp({-2, 0, 1}));
    auto R = TowerRing::create(nullptr, mod, "s");
    TowerElem s = R->gen();
    CHECK((s * s) == TowerElem(Rat(2)));
    TowerElem inv = (s + TowerElem(Rat(1))).inverse();
    CHECK((s + TowerElem(Rat(1))) * inv == R->one());
    // (1+s)^{-1} = s - 1 since (1+s)(s-1) = s^2-1 = 1
    CHECK(inv == s - TowerElem(Rat(1)));
}

TEST_CASE("zero divisor split") {
    // modulus (x-1)(x-2); inverting (x-1) must report the split
    TPoly mod = tpoly_from_q(qp({2, -3, 1}));
    auto R = TowerRing::create(nullptr, mod, "t");
    TowerElem a = R->gen() - TowerElem(Rat(1));
    CHECK_THROWS_AS((void)a.inverse(), RingSplit);
}

TEST_CASE("nested tower") {
    // Q(a)/(a^2-2) then adjoin b with b^2 = a
    TPoly mod1 = tpoly_from_q(qp({-2, 0, 1}));
    auto R1 = TowerRing::create(nullptr, mod1, "a");
    TowerElem a = R1->gen();
    TPoly mod2(std::vector<TowerElem>{-a, R1->zero(), R1->one()});
    auto R2 = TowerRing::create(R1, mod2, "b");
    TowerElem b = R2->gen();
    CHECK(b * b == a.lifted_to(R2));
    CHECK((b * b) * (b * b) == TowerElem(Rat(2)).lifted_to(R2));
    // inverse of b: b^{-1} = b^3/2 since b^4 = 2
    TowerElem binv = b.inverse();
    CHECK(b * binv == R2->one());
}
