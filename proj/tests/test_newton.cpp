#include <doctest.h>

#include "berkline/newton.hpp"

using namespace berkline;

namespace {
ExtendedRational er(long n) { return ExtendedRational(n); }
ExtendedRational er(long n, long d) { return ExtendedRational(n, d); }
} // namespace

TEST_CASE("hull with collinear points") {
    auto np = NewtonPolygon::build({{0, er(2)}, {1, er(1)}, {2, er(0)}});
    REQUIRE(np.vertices().size() == 3); // collinear point kept
    auto rv = np.root_valuations();
    REQUIRE(rv.size() == 2);
    CHECK(rv[0] == er(1));
    CHECK(rv[1] == er(1));
    CHECK(np.theta() == er(1));
}

TEST_CASE("hull of the degree-9 discriminant shape") {
    auto np = NewtonPolygon::build({{0, er(3)}, {4, er(3)}, {8, er(3)}, {9, er(0)}});
    REQUIRE(np.vertices().size() == 2);
    CHECK(np.vertices()[0] == std::make_pair(0L, er(3)));
    CHECK(np.vertices()[1] == std::make_pair(9L, er(0)));
    auto rv = np.root_valuations();
    REQUIRE(rv.size() == 9);
    for (const auto& v : rv) CHECK(v == er(1, 3));
}

TEST_CASE("vertical segment for vanishing constant term") {
    auto np = NewtonPolygon::build({{0, ExtendedRational::pos_inf()}, {1, er(0)}, {2, er(0)}});
    REQUIRE(np.vertices().size() >= 2);
    CHECK(np.vertices().front().second.is_pos_inf());
    auto rv = np.root_valuations();
    REQUIRE(rv.size() == 2);
    CHECK(rv[0].is_pos_inf());
    CHECK(rv[1] == er(0));
    CHECK(np.theta().is_pos_inf());
}

TEST_CASE("polygon of T^2 - 3T + 9") {
    auto np = NewtonPolygon::build({{0, er(2)}, {1, er(1)}, {2, er(0)}});
    auto rv = np.root_valuations();
    REQUIRE(rv.size() == 2);
    CHECK(rv[0] == er(1));
    CHECK(rv[1] == er(1));
}

TEST_CASE("theta examples") {
    CHECK(NewtonPolygon::build({{0, er(5, 3)}, {3, er(0)}}).theta() == er(5, 9));
    CHECK(NewtonPolygon::build({{0, ExtendedRational::pos_inf()}, {2, er(0)}}).theta().is_pos_inf());
}

TEST_CASE("inseparability") {
    auto a = NewtonPolygon::build({{0, er(1)}, {1, er(1)}, {2, er(1)}, {3, er(0)}});
    CHECK(a.is_inseparable(3)); // (1,1),(2,1) lie strictly above the chord
    auto b = NewtonPolygon::build({{0, er(1)}, {1, er(1, 3)}, {3, er(0)}});
    CHECK(!b.is_inseparable(3));
    auto c = NewtonPolygon::build({{0, er(0)}, {1, er(0)}, {3, er(0)}});
    CHECK(!c.is_inseparable(3)); // (1,0) lies on the segment
    CHECK_THROWS_AS(a.is_inseparable(4), DegreeMismatchError);
    // inseparable implies theta = v(a_0)/p
    CHECK(a.theta() == er(1, 3));
}

TEST_CASE("sum of root valuations equals v(a_0)") {
    auto np = NewtonPolygon::build({{0, er(5)}, {1, er(1)}, {2, er(2)}, {4, er(0)}});
    ExtendedRational s(0);
    for (const auto& v : np.root_valuations()) s = s + v;
    CHECK(s == er(5));
}

TEST_CASE("mu from taylor data") {
    // -4x^9 - 27x^8 - 54x^4 - 27 at x0 = 0: max((3-3)/4, (3-3)/8, (3-0)/9)
    CHECK(mu_from_taylor({{0, er(3)}, {4, er(3)}, {8, er(3)}, {9, er(0)}}) == er(1, 3));
    CHECK(mu_from_taylor({{0, er(2)}, {1, ExtendedRational::pos_inf()}, {2, er(0)}}) ==
          er(1)); // x^2-9 at 0
    CHECK(mu_from_taylor({{0, er(0)}, {1, er(0)}}) == er(0));             // x-1 at 0
    CHECK_THROWS_AS(mu_from_taylor({{0, ExtendedRational::pos_inf()}, {1, er(0)}}),
                    CenterIsRootError);
}

TEST_CASE("lambda tail on the paper table") {
    CoeffValTable t;
    t.p = 3;
    t.m = 2;
    t.v[{1, 0}] = er(1);
    t.v[{0, 2}] = er(1);
    t.v[{0, 4}] = er(0);
    CHECK(lambda_tail(t) == er(3, 8));
}

TEST_CASE("lambda general on the paper table") {
    // a_{0,2}=-3, a_{0,4}=1, a_{1,0}=3, a_{1,2}=1, a_{1,3}=3, a_{2,0}=1
    CoeffValTable t;
    t.p = 3;
    t.m = 2;
    t.v[{0, 2}] = er(1);
    t.v[{0, 4}] = er(0);
    t.v[{1, 0}] = er(1);
    t.v[{1, 2}] = er(0);
    t.v[{1, 3}] = er(1);
    t.v[{2, 0}] = er(0);
    auto [tilde, lambda] = lambda_general(t, er(1, 3));
    CHECK(tilde == er(0));
    CHECK(lambda == er(1, 3));
}

TEST_CASE("tail-only table collapses to lambda_tail") {
    CoeffValTable t;
    t.p = 3;
    t.m = 2;
    t.v[{1, 0}] = er(2);
    t.v[{0, 2}] = er(1);
    t.v[{0, 3}] = er(0);
    t.v[{0, 4}] = er(2);
    auto [tilde, lambda] = lambda_general(t, er(-10));
    CHECK(tilde == lambda_tail(t));
    CHECK(lambda == tilde);
}

TEST_CASE("lambda_tilde never exceeds lambda_tail on random tables") {
    unsigned long s = 99;
    auto nxt = [&]() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<long>((s >> 33) % 7);
    };
    for (int trial = 0; trial < 200; ++trial) {
        CoeffValTable t;
        t.p = 3;
        t.m = 2;
        t.v[{1, 0}] = er(nxt());
        for (long k = t.m; k < t.m * t.p; ++k)
            if (nxt() % 3 != 0) t.v[{0, k}] = er(nxt());
        for (long i = 1; i < 3; ++i)
            for (long l = 0; l < 4; ++l)
                if (nxt() % 2 == 0) t.v[{i, l}] = er(nxt());
        bool have_k = false;
        for (long k = t.m; k < t.m * t.p; ++k)
            if (t.v.count({0, k})) have_k = true;
        if (!have_k) continue;
        auto tail = lambda_tail(t);
        auto [tilde, lambda] = lambda_general(t, ExtendedRational::neg_inf());
        (void)lambda;
        CHECK(tilde <= tail);
    }
}

TEST_CASE("build is idempotent on vertices") {
    auto np = NewtonPolygon::build({{0, er(5)}, {1, er(1)}, {2, er(2)}, {4, er(0)}});
    auto np2 = NewtonPolygon::build(np.vertices());
    CHECK(np2.vertices() == np.vertices());
}
