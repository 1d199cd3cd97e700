#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "preim/errors.hpp"
#include "preim/poly.hpp"
#include "preim/series.hpp"

using namespace preim;

TEST_CASE("sqrt binomial coefficients") {
    auto c = sqrt_binomial_coeffs(4);
    CHECK(c[0] == Rational(1));
    CHECK(c[1] == make_rational(1, 2));
    CHECK(c[2] == make_rational(-1, 8));
    CHECK(c[3] == make_rational(1, 16));
    CHECK(c[4] == make_rational(-5, 128));
}

TEST_CASE("truncated binomial series squares to 1+x") {
    // F_n(x)^2 - (1+x) has no monomial of degree <= n
    for (unsigned n = 0; n <= 16; ++n) {
        auto c = sqrt_binomial_coeffs(n);
        std::vector<Rational> cc(c.begin(), c.end());
        Poly F(std::move(cc));
        Poly diff = F * F - Poly(std::vector<Rational>{Rational(1), Rational(1)});
        for (unsigned i = 0; i <= n; ++i) CHECK(diff.coeff(i) == Rational(0));
    }
}

static PuiseuxSeries from_coeffs(const ScalarTower& K, long n0,
                                 std::initializer_list<long> cs, bool exact) {
    PuiseuxSeries s;
    s.n0 = n0;
    s.exact = exact;
    for (long v : cs) s.coeffs.push_back(K.constant(Rational(v)));
    return series_normalize(s);
}

TEST_CASE("series sqrt of 1+u matches the binomial expansion") {
    ScalarTower K;
    auto s = from_coeffs(K, 0, {1, 1, 0, 0}, false);  // 1 + u known to 4 terms
    auto r = series_sqrt(K, s);
    REQUIRE(r.coeffs.size() == 4);
    CHECK(r.n0 == 0);
    CHECK(r.coeffs[0] == K.constant(Rational(1)));
    CHECK(r.coeffs[1] == K.constant(make_rational(1, 2)));
    CHECK(r.coeffs[2] == K.constant(make_rational(-1, 8)));
    CHECK(r.coeffs[3] == K.constant(make_rational(1, 16)));
}

TEST_CASE("series sqrt exact monomial") {
    ScalarTower K;
    auto s = series_term(K.constant(Rational(4)), 2, 1);
    auto r = series_sqrt(K, s);
    CHECK(r.exact);
    CHECK(r.n0 == 1);
    REQUIRE(r.coeffs.size() == 1);
    CHECK(r.coeffs[0] == K.constant(Rational(2)));
}

TEST_CASE("series sqrt failure modes") {
    ScalarTower K;
    auto odd = series_term(K.constant(Rational(1)), 1, 1);
    CHECK_THROWS_AS(series_sqrt(K, odd), NeedsExtension);
    try {
        series_sqrt(K, odd);
    } catch (const NeedsExtension& e) {
        CHECK(e.kind == NeedsExtension::Kind::OddExponent);
    }
    auto ns = series_term(K.constant(Rational(2)), 2, 1);
    try {
        series_sqrt(K, ns);
        CHECK(false);
    } catch (const NeedsExtension& e) {
        CHECK(e.kind == NeedsExtension::Kind::NonSquareCoefficient);
    }
    // after adjoining sqrt2 the same radicand works
    ScalarTower K2;
    K2.adjoin(K2.constant(Rational(2)));
    auto s2 = series_term(ScalarTower::lift(K2.constant(Rational(2)), 1), 2, 1);
    auto r = series_sqrt(K2, s2);
    CHECK(r.exact);
    CHECK(r.coeffs[0] == ScalarElem{Rational(0), Rational(1)});
}

TEST_CASE("series inverse") {
    ScalarTower K;
    auto s = from_coeffs(K, 0, {1, -1, 0, 0, 0, 0}, false);  // 1 - u
    auto r = series_inv(K, s, 6);
    for (std::size_t i = 0; i < 6; ++i) CHECK(r.coeffs[i] == K.constant(Rational(1)));
    auto mono = series_term(K.constant(Rational(3)), -2, 2);
    auto mi = series_inv(K, mono, 4);
    CHECK(mi.exact);
    CHECK(mi.n0 == 2);
    CHECK(mi.coeffs[0] == K.constant(make_rational(1, 3)));
}

TEST_CASE("sqrt squares back within the window, random series") {
    ScalarTower K;
    std::mt19937 rng(12345);
    std::uniform_int_distribution<long> coef(-5, 5);
    for (int trial = 0; trial < 100; ++trial) {
        PuiseuxSeries s;
        s.n0 = 2 * (coef(rng) % 3);
        s.exact = false;
        s.coeffs.push_back(K.constant(Rational(coef(rng) % 3 == 0 ? 4 : 1)));
        for (int i = 0; i < 5; ++i) s.coeffs.push_back(K.constant(Rational(coef(rng))));
        auto r = series_sqrt(K, s);
        auto sq = series_mul(K, r, r);
        auto diff = series_sub(K, sq, s);
        // difference must vanish through the common known window
        if (!diff.is_exact_zero()) {
            for (const auto& c : diff.coeffs) CHECK(ScalarTower::elem_is_zero(c));
        }
    }
}

TEST_CASE("rescale and substitution") {
    ScalarTower K;
    // t = u^-1 exact; rescale to e=2: t = u^-2
    auto t = series_term(K.constant(Rational(1)), -1, 1);
    auto t2 = series_rescale(t, 2);
    CHECK(t2.e == 2);
    CHECK(t2.n0 == -2);
    CHECK(t2.exact);
    // substitute u -> (1/2) u into t = u^-2: coefficient becomes 4
    auto t3 = series_subst_scaled(K, t2, K.constant(make_rational(1, 2)));
    CHECK(t3.coeffs[0] == K.constant(Rational(4)));
    // window bookkeeping under rescale
    auto s = from_coeffs(K, 1, {1, 2, 3}, false);
    auto s2 = series_rescale(s, 3);
    CHECK(s2.n0 == 3);
    CHECK(s2.known_until() == 12);
    CHECK(s2.coeffs[3] == K.constant(Rational(2)));
}

TEST_CASE("add and mul window intersection") {
    ScalarTower K;
    auto a = from_coeffs(K, 0, {1, 1, 1}, false);   // known to exponent 3
    auto b = from_coeffs(K, 1, {5, 5}, false);      // known to exponent 3
    auto sum = series_add(K, a, b);
    CHECK(sum.known_until() == 3);
    CHECK(sum.coeffs[1] == K.constant(Rational(6)));
    auto prod = series_mul(K, a, b);
    CHECK(prod.n0 == 1);
    CHECK(prod.known_until() == 3);  // min(0+3, 1+3) = 3
    CHECK(prod.coeffs[0] == K.constant(Rational(5)));
    CHECK(prod.coeffs[1] == K.constant(Rational(10)));
}
