#include <doctest.h>

#include "berkline/cubic.hpp"
#include "berkline/qpoly.hpp"
#include "berkline/extended_rational.hpp"

using namespace berkline;

namespace {
QPoly qp(std::vector<long> c) {
    std::vector<mpq_class> v(c.begin(), c.end());
    return QPoly(std::move(v));
}
} // namespace

TEST_CASE("discriminant of cubic forms") {
    // A=0, B=x^3, C=x^4+1 -> -4x^9-27x^8-54x^4-27
    CubicForm f{QPoly(), qp({0, 0, 0, 1}), qp({1, 0, 0, 0, 1})};
    CHECK(discriminant_cubic(f) == qp({-27, 0, 0, 0, -54, 0, 0, 0, -27, -4}));
    // A=3x, B=-3, C=-2x^4-x^2-1
    CubicForm g{qp({0, 3}), qp({-3}), qp({-1, 0, -1, 0, -2})};
    CHECK(discriminant_cubic(g) ==
          qp({81, 162, 27, 270, -135, 432, -108, 216, -108}));
    // A=B=0, C=1 -> -27
    CubicForm h{QPoly(), QPoly(), qp({1})};
    CHECK(discriminant_cubic(h) == qp({-27}));
}

TEST_CASE("discriminant agrees with resultant normalization") {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(23);
    auto rnd = [&](int deg) {
        std::vector<mpq_class> c;
        for (int i = 0; i <= deg; ++i) c.emplace_back(Int(rng.get_z_range(Int(11))) - 5);
        return QPoly(std::move(c));
    };
    for (int t = 0; t < 20; ++t) {
        CubicForm f{rnd(2), rnd(3), rnd(4)};
        auto fy = f.as_y_poly();
        // disc = (-1)^{3} res(F, F')/lc = -res(F, F')
        RatFn r = resultant(fy, fy.derivative());
        QPoly expect = discriminant_cubic(f);
        RatFn lhs = RatFn(expect);
        CHECK(lhs == -r);
    }
}

TEST_CASE("norm basics") {
    // F = y^3 + By + C with B = x^3, C = x^4+1
    auto F = std::make_shared<CubicForm>(CubicForm{QPoly(), qp({0, 0, 0, 1}), qp({1, 0, 0, 0, 1})});
    // base element h(x): norm = h^3
    QPoly h = qp({2, 5});
    auto e = FunctionFieldElement::from_base(F, RatFn(h));
    CHECK(e.norm() == RatFn(h * h * h));
    // norm(y) = -C
    auto y = FunctionFieldElement::y(F);
    CHECK(y.norm() == RatFn(-qp({1, 0, 0, 0, 1})));
}

TEST_CASE("norm multiplicativity") {
    auto F = std::make_shared<CubicForm>(
        CubicForm{qp({0, 3}), qp({-3}), qp({-1, 0, -1, 0, -2})}); // worked example 3 curve
    auto y = FunctionFieldElement::y(F);
    auto a = y * y + FunctionFieldElement::from_base(F, RatFn(qp({1, 2})));
    auto b = y - FunctionFieldElement::from_base(F, RatFn(qp({0, 0, 7})));
    CHECK((a * b).norm() == a.norm() * b.norm());
    // inversion
    auto ainv = a.inverse();
    CHECK((a * ainv).rep() == Poly<RatFn>(Ring<RatFn>::one(RatFn())));
}

TEST_CASE("irreducibility") {
    // worked example 3: y^3 + 3xy^2 - 3y - 2x^4 - x^2 - 1
    CubicForm f{qp({0, 3}), qp({-3}), qp({-1, 0, -1, 0, -2})};
    CHECK(f.is_irreducible());
    // reducible: (y - x)(y^2 + 1) = y^3 - x y^2 + y - x
    CubicForm g{qp({0, -1}), qp({1}), qp({0, -1})};
    CHECK(!g.is_irreducible());
    CubicForm zc{QPoly(), qp({1}), QPoly()};
    CHECK(!zc.is_irreducible()); // y^3 + y = y(y^2+1)
}
