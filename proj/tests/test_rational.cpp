#include <doctest.h>

#include "berkline/finite_field.hpp"
#include "berkline/padic.hpp"

using namespace berkline;

TEST_CASE("p-adic valuation on rationals") {
    PAdicValuation v(3);
    CHECK(v.val(Rat(27, 5)) == ExtendedRational(3));
    CHECK(v.val(Rat(0)).is_pos_inf());
    CHECK(v.val(Rat(-108)) == ExtendedRational(3));
    CHECK(v.val(Rat(1, 9)) == ExtendedRational(-2));
}

TEST_CASE("extended rational arithmetic guards") {
    ExtendedRational inf = ExtendedRational::pos_inf();
    ExtendedRational ninf = ExtendedRational::neg_inf();
    CHECK(inf + ExtendedRational(5) == inf);
    CHECK(ninf + ExtendedRational(-7) == ninf);
    CHECK_THROWS_AS(inf + ninf, IndeterminateFormError);
    CHECK_THROWS_AS(inf * ExtendedRational(0), IndeterminateFormError);
    CHECK(inf * ExtendedRational(-2) == ninf);
    CHECK(ninf < ExtendedRational(Rat(-1000000)));
    CHECK(ExtendedRational(Rat(1000000)) < inf);
    CHECK(min(inf, ExtendedRational(2)) == ExtendedRational(2));
}

TEST_CASE("total order consistent with Q") {
    CHECK(ExtendedRational(1, 3) < ExtendedRational(1, 2));
    CHECK(ExtendedRational(-5, 2) < ExtendedRational(-2));
}

TEST_CASE("residue_unit basics") {
    PAdicValuation v(3);
    ResidueContext ctx(v, 1, FqField::get(3, 1));
    CHECK(ctx.residue_unit(Rat(6), ExtendedRational(1)) == FqField::get(3, 1)->from_int(2));
    CHECK(ctx.residue_unit(Rat(1), ExtendedRational(0)) == FqField::get(3, 1)->from_int(1));
    // 5/2 * 3^0: 5 * 2^{-1} = 5 * 2 = 10 = 1 mod 3
    CHECK(ctx.residue_unit(Rat(5, 2), ExtendedRational(0)) == FqField::get(3, 1)->from_int(1));
    CHECK_THROWS_AS(ctx.residue_unit(Rat(6), ExtendedRational(2)), ShiftMismatchError);
    CHECK_THROWS_AS(ctx.residue_unit(Rat(6), ExtendedRational(Rat(1, 2))),
                    FractionalShiftUnsupportedError);
}

TEST_CASE("residue_unit is multiplicative") {
    PAdicValuation v(3);
    ResidueContext ctx(v, 1, FqField::get(3, 1));
    std::vector<Rat> samples = {Rat(6), Rat(5, 2), Rat(7, 4), Rat(45), Rat(-12, 7)};
    for (const Rat& a : samples)
        for (const Rat& b : samples) {
            auto sa = v.val(a), sb = v.val(b);
            FqElem lhs = ctx.residue_unit(a * b, sa + sb);
            FqElem rhs = ctx.residue_unit(a, sa) * ctx.residue_unit(b, sb);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("valuation axioms on random rationals") {
    PAdicValuation v(3);
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(42);
    for (int i = 0; i < 200; ++i) {
        Int na(rng.get_z_bits(24)), da(rng.get_z_bits(12));
        Int nb(rng.get_z_bits(24)), db(rng.get_z_bits(12));
        if (da == 0 || db == 0 || na == 0 || nb == 0) continue;
        Rat a(na, da + 1), b(nb, db + 1);
        a.canonicalize();
        b.canonicalize();
        CHECK(v.val(a * b) == v.val(a) + v.val(b));
        if (sgn(a + b) != 0) {
            CHECK(v.val(a + b) >= min(v.val(a), v.val(b)));
            if (v.val(a) != v.val(b)) CHECK(v.val(a + b) == min(v.val(a), v.val(b)));
        }
    }
}
