#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "preim/curves.hpp"
#include "preim/errors.hpp"

using namespace preim;

static Poly make_poly(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    for (long v : coeffs) c.emplace_back(v);
    return Poly(std::move(c));
}

static const Poly kZero{};
static const Poly kT = make_poly({0, 1});

TEST_CASE("family hypothesis checks") {
    // b = 2t, c = t^2 - t: b^2 - 4c - 2b vanishes identically
    CHECK_THROWS_AS(QuadFamily(FamilyKind::PolyQuad, kZero, make_poly({0, 2}),
                               make_poly({0, -1, 1})),
                    HypothesisViolated);
    QuadFamily ok(FamilyKind::PolyQuad, kZero, kZero, kT);
    CHECK(ok.hypotheses_satisfied());
    QuadFamily r1(FamilyKind::RatQuad, kZero, kT, Poly::constant(Rational(1)));
    CHECK(r1.hypotheses_satisfied());
    // bc constant: recorded, not fatal
    QuadFamily r2(FamilyKind::RatQuad, kZero, kZero, kT);
    CHECK_FALSE(r2.hypotheses_satisfied());
    // constant c with nonconstant a
    QuadFamily r3(FamilyKind::RatQuad, kT, kT, Poly::constant(Rational(1)));
    CHECK_FALSE(r3.hypotheses_satisfied());
}

TEST_CASE("preimage curve polynomial") {
    QuadFamily fam(FamilyKind::PolyQuad, kZero, kZero, kT);
    BiPoly F1 = preimage_curve_poly(fam, 1);
    BiPoly x2pt = BiPoly::x() * BiPoly::x() + BiPoly::t();
    CHECK(F1 == x2pt);
    CHECK(preimage_curve_poly(fam, 2) == x2pt * x2pt + BiPoly::t());
    QuadFamily rq(FamilyKind::RatQuad, kZero, kZero, kT);
    CHECK(preimage_curve_poly(rq, 1) == BiPoly::x() * BiPoly::x());
    for (unsigned N = 1; N <= 4; ++N) CHECK(preimage_curve_poly(fam, N).deg_x() == (1L << N));
}

TEST_CASE("delta map") {
    QuadFamily fam(FamilyKind::PolyQuad, kZero, kZero, kT);
    auto img = delta_map(fam, {Rational(1), Rational(-1)});
    CHECK(img.first == ProjPoint(Rational(0)));
    CHECK(img.second == Rational(-1));
    QuadFamily rq(FamilyKind::RatQuad, kZero, kZero, kT);
    auto inf = delta_map(rq, {Rational(1), Rational(-1)});
    CHECK(inf.first.is_infinity());
}

TEST_CASE("tower square certificates") {
    FuncTower base;
    auto r = tower_is_square(base, {RatFun(make_poly({1, 2, 1}))});
    REQUIRE(r.has_value());
    CHECK((*r)[0] == RatFun(make_poly({1, 1})));
    CHECK_FALSE(tower_is_square(base, {RatFun(make_poly({0, -4}))}).has_value());
    CHECK_THROWS_AS(tower_is_square(base, {RatFun(0)}), ZeroElement);
    FuncTower ext;
    ext.adjoin({RatFun(make_poly({0, -4}))});  // y1^2 = -4t
    CHECK_FALSE(tower_is_square(ext, {RatFun(make_poly({0, -4})), RatFun(2)}).has_value());
}

TEST_CASE("component recursion, PolyQuad x^2 + t") {
    QuadFamily fam(FamilyKind::PolyQuad, kZero, kZero, kT);
    for (unsigned N = 1; N <= 4; ++N) {
        auto comps = components(fam, N);
        REQUIRE(comps.size() == 1);
        CHECK(comps[0].deg_x() == (1L << N));
        CHECK(comps[0].level == static_cast<long>(N));
    }
    auto c2 = components(fam, 2);
    const auto& rads = c2[0].tower.radicands();
    REQUIRE(rads.size() == 2);
    CHECK(rads[0] == FuncElem{RatFun(make_poly({0, -4}))});            // g1 = -4t
    CHECK(rads[1] == (FuncElem{RatFun(make_poly({0, -4})), RatFun(2)}));  // g2 = -4t + 2 y1
    CHECK(c2[0].levels[1].g == rads[1]);
    CHECK_FALSE(c2[0].levels[0].split);
}

TEST_CASE("component splitting into lines, PolyQuad a = t + 1") {
    QuadFamily fam(FamilyKind::PolyQuad, make_poly({1, 1}), kZero, kT);
    auto c1 = components(fam, 1);
    REQUIRE(c1.size() == 2);
    CHECK(c1[0].x == FuncElem{RatFun(1)});   // g1 = 4, x = +-1
    CHECK(c1[1].x == FuncElem{RatFun(-1)});
    CHECK(c1[0].levels[0].split);
    REQUIRE(c1[0].levels[0].root.has_value());
    // certificate: root^2 = g, exactly
    const auto& tw = c1[0].tower;
    CHECK(tw.equal(tw.mul(*c1[0].levels[0].root, *c1[0].levels[0].root), c1[0].levels[0].g));
    auto c2 = components(fam, 2);
    REQUIRE(c2.size() == 2);  // -4t + 4 and -4t - 4 are both non-squares
    long total = 0;
    for (const auto& comp : c2) total += comp.deg_x();
    CHECK(total == 4);
}

TEST_CASE("component recursion, RatQuad b = t, c = 1, a = 0") {
    QuadFamily fam(FamilyKind::RatQuad, kZero, kT, Poly::constant(Rational(1)));
    auto c1 = components(fam, 1);
    REQUIRE(c1.size() == 2);
    CHECK(c1[0].x == FuncElem{RatFun(0)});
    CHECK(c1[1].x == FuncElem{-RatFun(kT)});  // x = -t
    auto c2 = components(fam, 2);
    REQUIRE(c2.size() == 3);
    long total = 0;
    const Component* quad = nullptr;
    for (const auto& comp : c2) {
        total += comp.deg_x();
        if (comp.deg_x() == 2) quad = &comp;
    }
    CHECK(total == 4);
    REQUIRE(quad != nullptr);
    // level-2 relation above x = -t: x2^2 + 2t x2 + t = 0
    CHECK(quad->levels[1].g == FuncElem{RatFun(make_poly({0, -4, 4}))});  // 4t^2 - 4t
    const auto& tw = quad->tower;
    FuncElem rel = tw.add(tw.add(tw.mul(quad->x, quad->x),
                                 tw.scale(quad->x, RatFun(make_poly({0, 2})))),
                          tw.constant(RatFun(kT)));
    CHECK(FuncTower::elem_is_zero(rel));
}

TEST_CASE("stabilization enumeration") {
    QuadFamily fam(FamilyKind::PolyQuad, kZero, kZero, kT);
    auto st = enumerate_until_stable(fam, 2);
    CHECK(st.stabilized_at == 2);
    REQUIRE(st.components.size() == 1);
    CHECK(st.components[0].deg_x() == 2);

    QuadFamily rq(FamilyKind::RatQuad, kZero, kT, Poly::constant(Rational(1)));
    auto sr = enumerate_until_stable(rq, 1);
    CHECK(sr.stabilized_at == 2);
    REQUIRE(sr.components.size() == 2);
    for (const auto& comp : sr.components) CHECK(comp.deg_x() == 1);

    CHECK(enumerate_until_stable(fam, 0).components.empty());
    // unbounded cap: new curves keep appearing at every level
    CHECK_THROWS_AS(enumerate_until_stable(fam, 1L << 30, 3), CapExceeded);
}

TEST_CASE("lines reappearing at higher levels count once") {
    QuadFamily rq(FamilyKind::RatQuad, kZero, kT, Poly::constant(Rational(1)));
    auto c1 = components(rq, 1);
    auto c2 = components(rq, 2);
    int matched = 0;
    for (const auto& lo : c1)
        for (const auto& hi : c2)
            if (lo.same_curve(hi)) ++matched;
    CHECK(matched == 2);  // x = 0 and x = -t both recur above x = 0
}

TEST_CASE("specialization") {
    QuadFamily fam(FamilyKind::PolyQuad, kZero, kZero, kT);
    CHECK(specialize(fam, 1, Rational(-1)) == make_poly({-1, 0, 1}));
    CHECK(specialize(fam, 2, Rational(0)) == Poly::monomial(4));
    QuadFamily bad(FamilyKind::RatQuad, kZero, Poly::constant(Rational(1)),
                   Poly::constant(Rational(1)));
    CHECK_THROWS_AS(specialize(bad, 1, Rational(5)), HypothesisViolated);
    RatMap m = fam.member(Rational(3));
    CHECK(m.num() == make_poly({3, 0, 1}));
}

TEST_CASE("component json shape") {
    QuadFamily fam(FamilyKind::PolyQuad, kZero, kZero, kT);
    auto j = component_to_json(fam, components(fam, 2)[0]);
    CHECK(j["kind"] == "PolyQuad");
    CHECK(j["deg_x"] == 4);
    REQUIRE(j["levels"].size() == 2);
    CHECK(j["levels"][0]["split"] == false);
    CHECK_FALSE(j["levels"][0].contains("root"));
    QuadFamily sp(FamilyKind::PolyQuad, make_poly({1, 1}), kZero, kT);
    auto js = component_to_json(sp, components(sp, 1)[0]);
    CHECK(js["levels"][0]["split"] == true);
    CHECK(js["levels"][0].contains("root"));
}
