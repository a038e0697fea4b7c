#include <doctest.h>

#include "berkline/pwa.hpp"

using namespace berkline;

namespace {
// deterministic rational sampler in roughly [-8, 8]
struct Sampler {
    unsigned long s = 12345;
    Rat next() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        long num = static_cast<long>((s >> 20) % 257) - 128;
        long den = 1 + static_cast<long>((s >> 40) % 16);
        Rat r(num, den);
        r.canonicalize();
        return r;
    }
};
} // namespace

TEST_CASE("min with constant has a kink") {
    Pwa id = Pwa::affine(Rat(1), Rat(0));
    Pwa one(Rat(1));
    Pwa m = pwa_min(id, one);
    CHECK(m.kinks().size() == 1);
    CHECK(m.kinks()[0] == Rat(1));
    CHECK(m.eval(Rat(0)) == Rat(0));
    CHECK(m.eval(Rat(5)) == Rat(1));
}

TEST_CASE("add with negation is zero") {
    Pwa f = pwa_min(Pwa::affine(Rat(2), Rat(1)), Pwa::affine(Rat(-1), Rat(3)));
    Pwa z = f + f.scaled(Rat(-1));
    CHECK(z == Pwa(Rat(0)));
}

TEST_CASE("binary ops agree with pointwise evaluation") {
    Pwa f = pwa_min(pwa_min(Pwa::affine(Rat(1), Rat(0)), Pwa::affine(Rat(2), Rat(5, 3))),
                    Pwa::affine(Rat(4), Rat(1)));
    Pwa g = pwa_max(Pwa::affine(Rat(-1), Rat(2)), Pwa::affine(Rat(1, 2), Rat(-3)));
    Pwa s = f + g;
    Pwa mn = pwa_min(f, g);
    Pwa mx = pwa_max(f, g);
    Sampler smp;
    for (int i = 0; i < 200; ++i) {
        Rat r = smp.next();
        Rat fv = f.eval(r), gv = g.eval(r);
        CHECK(s.eval(r) == fv + gv);
        CHECK(mn.eval(r) == (fv < gv ? fv : gv));
        CHECK(mx.eval(r) == (fv > gv ? fv : gv));
    }
}

TEST_CASE("valuation profile of the worked B-data") {
    // entries (0, 10/3), (1, 0), (2, 1) -> B(r) = min(10/3, r, 2r+1)
    Pwa B = valuation_profile({{0, ExtendedRational(Rat(10, 3))},
                               {1, ExtendedRational(0)},
                               {2, ExtendedRational(1)}});
    CHECK(B.eval(Rat(0)) == Rat(0));
    CHECK(B.eval(Rat(4)) == Rat(10, 3));
    CHECK(B.eval(Rat(-2)) == Rat(-3));
    CHECK(B.is_concave());
    auto kk = B.kinks();
    REQUIRE(kk.size() == 2);
    CHECK(kk[0] == Rat(-1));
    CHECK(kk[1] == Rat(10, 3));
    // right derivative at 0 is the minimizing index slope
    CHECK(B.right_slope(Rat(0)) == Rat(1));
    Pwa single = valuation_profile({{0, ExtendedRational(Rat(7, 2))}});
    CHECK(single == Pwa(Rat(7, 2)));
    Pwa two = valuation_profile({{0, ExtendedRational(0)}, {1, ExtendedRational(0)}});
    CHECK(two.kinks() == std::vector<Rat>{Rat(0)});
    CHECK_THROWS_AS(valuation_profile({{0, ExtendedRational::pos_inf()}}), AllInfiniteError);
}

TEST_CASE("right derivative of profiles") {
    Pwa f = valuation_profile({{0, ExtendedRational(2)}, {1, ExtendedRational(0)}});
    CHECK(f.right_slope(Rat(0)) == Rat(1));
    CHECK(Pwa(Rat(5)).right_slope(Rat(0)) == Rat(0));
}

TEST_CASE("zero locus") {
    CHECK(Pwa(Rat(1)).zero_locus().empty());
    auto z = Pwa(Rat(0)).zero_locus();
    REQUIRE(z.size() == 1);
    CHECK(z[0].first.is_neg_inf());
    CHECK(z[0].second.is_pos_inf());

    // hat function: max(0, min(r+1, 1-r)) has zero locus (-inf,-1] U [1,inf)
    Pwa hat = pwa_max(Pwa(Rat(0)), pwa_min(Pwa::affine(Rat(1), Rat(1)), Pwa::affine(Rat(-1), Rat(1))));
    auto zz = hat.zero_locus();
    REQUIRE(zz.size() == 2);
    CHECK(zz[0].first.is_neg_inf());
    CHECK(zz[0].second == ExtendedRational(-1));
    CHECK(zz[1].first == ExtendedRational(1));
    CHECK(zz[1].second.is_pos_inf());
    CHECK(hat.first_zero_at_or_after(ExtendedRational(0)) == ExtendedRational(1));
    CHECK(hat.first_zero_at_or_after(ExtendedRational(-5)) == ExtendedRational(-5));
}

TEST_CASE("clamp delta") {
    Pwa id = Pwa::affine(Rat(1), Rat(0));
    Pwa c = clamp_delta(id);
    CHECK(c.eval(Rat(-3)) == Rat(0));
    CHECK(c.eval(Rat(1)) == Rat(1));
    CHECK(c.eval(Rat(5)) == Rat(3, 2));
    CHECK(clamp_delta(Pwa(Rat(-1))) == Pwa(Rat(0)));
}

TEST_CASE("structural equality is pointwise equality") {
    Pwa a = pwa_min(Pwa::affine(Rat(1), Rat(0)), Pwa::affine(Rat(2), Rat(5, 3)));
    Pwa b = pwa_min(Pwa::affine(Rat(2), Rat(5, 3)), Pwa::affine(Rat(1), Rat(0)));
    CHECK(a == b);
    // fake kink collapses
    Pwa c = Pwa::from_breakpoints({Rat(0)}, {Rat(1)}, Rat(1), Rat(1));
    CHECK(c == Pwa::affine(Rat(1), Rat(1)));
}

TEST_CASE("inversion of increasing functions") {
    Pwa theta = pwa_min(Pwa::affine(Rat(2), Rat(0)), Pwa::affine(Rat(1), Rat(1, 2)));
    CHECK(theta.is_strictly_increasing());
    CHECK(theta.invert_increasing(Rat(5, 4)) == Rat(3, 4));
    CHECK(theta.invert_increasing(Rat(-2)) == Rat(-1));
}
