#include <doctest.h>

#include "berkline/fq_poly.hpp"

using namespace berkline;

TEST_CASE("field axioms in F_9") {
    const FqField* F = FqField::get(3, 2);
    auto elems = F->all_elements();
    CHECK(elems.size() == 9);
    for (const auto& a : elems) {
        CHECK(a + F->zero() == a);
        CHECK(a * F->one() == a);
        if (!a.is_zero()) CHECK(a * a.inverse() == F->one());
        // Frobenius is an automorphism with x^9 = x
        CHECK(a.frobenius().frobenius() == a);
        CHECK(a.pth_root().frobenius() == a);
    }
    for (const auto& a : elems)
        for (const auto& b : elems) {
            CHECK((a + b).frobenius() == a.frobenius() + b.frobenius());
            CHECK((a * b).frobenius() == a.frobenius() * b.frobenius());
        }
}

TEST_CASE("factorization over F_3") {
    const FqField* F = FqField::get(3, 1);
    auto C = [&](long n) { return F->from_int(n); };
    // (x^2+1)(x+2)^2 over F_3
    FqPoly f1(std::vector<FqElem>{C(1), C(0), C(1)});
    FqPoly f2(std::vector<FqElem>{C(2), C(1)});
    FqPoly f = f1 * f2 * f2;
    auto fac = fq_factor(f);
    REQUIRE(fac.size() == 2);
    CHECK(fac[0].first == f2);
    CHECK(fac[0].second == 2);
    CHECK(fac[1].first == f1);
    CHECK(fac[1].second == 1);
    CHECK(fq_is_irreducible(f1));
    CHECK(!fq_is_irreducible(f));
}

TEST_CASE("inseparable-power factorization") {
    const FqField* F = FqField::get(3, 1);
    auto C = [&](long n) { return F->from_int(n); };
    // (x+1)^3 = x^3 + 1 over F_3
    FqPoly f(std::vector<FqElem>{C(1), C(0), C(0), C(1)});
    auto fac = fq_factor(f);
    REQUIRE(fac.size() == 1);
    CHECK(fac[0].second == 3);
    CHECK(fac[0].first == FqPoly(std::vector<FqElem>{C(1), C(1)}));
}

TEST_CASE("random factor-multiply roundtrip over F_9") {
    const FqField* F = FqField::get(3, 2);
    auto elems = F->all_elements();
    unsigned long seed = 7;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<FqElem> coeffs;
        for (int i = 0; i < 6; ++i) {
            seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
            coeffs.push_back(elems[(seed >> 13) % elems.size()]);
        }
        coeffs.push_back(F->one());
        FqPoly f(coeffs);
        auto fac = fq_factor(f);
        FqPoly prod(F->one());
        for (const auto& [g, m] : fac) {
            CHECK(fq_is_irreducible(g));
            for (int i = 0; i < m; ++i) prod = prod * g;
        }
        CHECK(prod == f.monic());
    }
}

TEST_CASE("embedding F_9 into F_81") {
    const FqField* F9 = FqField::get(3, 2);
    const FqField* F81 = FqField::get(3, 4);
    auto elems = F9->all_elements();
    for (const auto& a : elems)
        for (const auto& b : elems) {
            CHECK(embed(a * b, F81) == embed(a, F81) * embed(b, F81));
            CHECK(embed(a + b, F81) == embed(a, F81) + embed(b, F81));
        }
}

TEST_CASE("roots over F_27") {
    const FqField* F = FqField::get(3, 3);
    FqElem a = F->gen();
    // (x - a)(x - a^2)(x - 1)
    FqPoly f = FqPoly(std::vector<FqElem>{-a, F->one()}) *
               FqPoly(std::vector<FqElem>{-(a * a), F->one()}) *
               FqPoly(std::vector<FqElem>{-F->one(), F->one()});
    auto roots = fq_roots(f);
    REQUIRE(roots.size() == 3);
    CHECK(std::find(roots.begin(), roots.end(), a) != roots.end());
    CHECK(std::find(roots.begin(), roots.end(), a * a) != roots.end());
    CHECK(std::find(roots.begin(), roots.end(), F->one()) != roots.end());
}
