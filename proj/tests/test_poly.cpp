#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "preim/bipoly.hpp"
#include "preim/poly.hpp"
#include "preim/ratfun.hpp"

using namespace preim;

static Poly make_poly(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    for (long v : coeffs) c.emplace_back(v);
    return Poly(std::move(c));
}

TEST_CASE("poly arithmetic basics") {
    Poly f = make_poly({1, 2, 1});  // (x+1)^2
    Poly g = Poly::x() + Poly::constant(Rational(1));
    CHECK(g * g == f);
    CHECK(f.eval(Rational(3)) == Rational(16));
    auto [q, r] = f.divmod(g);
    CHECK(q == g);
    CHECK(r.is_zero());
    CHECK(f.derivative() == make_poly({2, 2}));
}

TEST_CASE("compose") {
    Poly x2 = make_poly({0, 0, 1});
    Poly xp1 = make_poly({1, 1});
    CHECK(x2.compose(xp1) == make_poly({1, 2, 1}));
    CHECK(x2.compose(Poly::x()) == x2);
}

TEST_CASE("resultant with declared degrees") {
    CHECK(resultant(make_poly({0, 0, 1}), make_poly({1}), 2, 0) == Rational(1));
    CHECK(resultant(make_poly({1, 0, 1}), Poly::x()) == Rational(1));
    CHECK(resultant(make_poly({0, 1, 1}), make_poly({1, 1})) == Rational(0));
    // res(f,g) vanishes iff shared root; check multiplicativity on a sample
    Poly f = make_poly({-2, 0, 1});
    Poly g = make_poly({1, 1});
    Poly h = make_poly({3, 1});
    CHECK(resultant(f, g * h) == resultant(f, g) * resultant(f, h));
}

TEST_CASE("rational_roots") {
    auto sorted = [](std::vector<Rational> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    CHECK(sorted(rational_roots(make_poly({-4, 0, 1}))) ==
          std::vector<Rational>{Rational(-2), Rational(2)});
    CHECK(rational_roots(make_poly({-2, 0, 1})).empty());
    CHECK(sorted(rational_roots(make_poly({1, -5, 6}))) ==
          std::vector<Rational>{make_rational(1, 3), make_rational(1, 2)});
    // multiplicity and a cubic
    Poly cube = make_poly({1, 1}).pow(2) * make_poly({-3, 2});
    auto roots = sorted(rational_roots(cube));
    CHECK(roots == std::vector<Rational>{Rational(-1), Rational(-1), make_rational(3, 2)});
}

TEST_CASE("poly_sqrt") {
    Poly f = make_poly({1, 2, 1});
    CHECK(poly_sqrt(f) == make_poly({1, 1}));
    CHECK_FALSE(poly_sqrt(make_poly({0, 1})).has_value());
    Poly g = make_poly({4, -4, 1});  // (x-2)^2
    CHECK(poly_sqrt(g) == make_poly({-2, 1}));
    CHECK(poly_sqrt(make_poly({0, 0, 9})) == make_poly({0, 3}));
}

TEST_CASE("integer_primitive") {
    Poly f = make_poly({1, 2}) * make_rational(3, 4);
    auto [prim, scale] = integer_primitive(f);
    CHECK(prim == make_poly({1, 2}));
    CHECK(scale == make_rational(3, 4));
    CHECK(prim * scale == f);
}

TEST_CASE("ratfun field ops") {
    RatFun t = RatFun::t();
    RatFun f = (t * t - RatFun(1)) / (t - RatFun(1));
    CHECK(f == t + RatFun(1));  // reduction
    RatFun g = RatFun(1) / t;
    CHECK(f * g == (t + RatFun(1)) / t);
    CHECK((f - f).is_zero());
    CHECK(g.eval(Rational(2)) == make_rational(1, 2));
    CHECK_FALSE(g.eval(Rational(0)).has_value());
}

TEST_CASE("ratfun_sqrt") {
    RatFun t = RatFun::t();
    auto s = ratfun_sqrt((t + RatFun(1)) * (t + RatFun(1)) * RatFun(Rational(4)));
    REQUIRE(s.has_value());
    CHECK(*s == (t + RatFun(1)) * RatFun(Rational(2)));
    CHECK_FALSE(ratfun_sqrt(t).has_value());
    CHECK_FALSE(ratfun_sqrt(t * t * RatFun(2)).has_value());
    auto r = ratfun_sqrt(RatFun(Poly::constant(Rational(1)), make_poly({0, 0, 1})));
    REQUIRE(r.has_value());
    CHECK(*r == RatFun(1) / t);
}

TEST_CASE("bipoly basics") {
    BiPoly x = BiPoly::x(), t = BiPoly::t();
    BiPoly f = x * x + t;  // x^2 + t
    CHECK(f.deg_x() == 2);
    CHECK(f.deg_t() == 1);
    BiPoly f2 = f * f + t;  // (x^2+t)^2 + t
    CHECK(f2.eval_t(Rational(-1)) == make_poly({0, 0, -2, 0, 1}) + make_poly({1, 0, 0, 0, 0}) - make_poly({1}));
    CHECK(f.eval(Rational(3), Rational(-2)) == Rational(7));
    CHECK(f.eval_x(Rational(1)) == make_poly({1, 1}));
}

TEST_CASE("bipoly x-coefficient round trip") {
    BiPoly x = BiPoly::x(), t = BiPoly::t();
    BiPoly f = x * x * t + x * BiPoly::constant(Rational(3)) + t * t;
    CHECK(BiPoly::from_x_coefficients(f.x_coefficients()) == f);
}

TEST_CASE("bipoly_gcd_x") {
    BiPoly x = BiPoly::x(), t = BiPoly::t();
    BiPoly a = (x - t) * (x + t);
    BiPoly b = (x - t) * (x + BiPoly::constant(Rational(1)));
    CHECK(bipoly_gcd_x(a, b) == (x - t));
    BiPoly c = x * x + BiPoly::constant(Rational(1));
    CHECK(bipoly_gcd_x(a, c).deg_x() == 0);
}

TEST_CASE("composition of bivariate x-polynomials") {
    // f = x^2 + t composed with itself in x
    BiPoly x = BiPoly::x(), t = BiPoly::t();
    BiPoly f = x * x + t;
    BiPoly comp = f * f + t;
    BiPoly expect = x.pow(4) + x.pow(2) * t * Rational(2) + t * t + t;
    CHECK(comp == expect);
}
