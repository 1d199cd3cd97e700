#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "preim/preimage.hpp"

using namespace preim;

static Poly make_poly(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    for (long v : coeffs) c.emplace_back(v);
    return Poly(std::move(c));
}

static RatMap poly_map(std::initializer_list<long> coeffs) {
    return RatMap(make_poly(coeffs), Poly::constant(Rational(1)));
}

TEST_CASE("one-step preimages") {
    RatMap sq = poly_map({0, 0, 1});
    auto p4 = preimages_one_step(sq, ProjPoint(Rational(4)));
    CHECK(p4.size() == 2);
    CHECK(std::count(p4.begin(), p4.end(), ProjPoint(Rational(2))) == 1);
    CHECK(std::count(p4.begin(), p4.end(), ProjPoint(Rational(-2))) == 1);
    auto pinf = preimages_one_step(sq, ProjPoint::infinity());
    CHECK(pinf == std::vector<ProjPoint>{ProjPoint::infinity()});
    CHECK(preimages_one_step(poly_map({-1, 0, 1}), ProjPoint(Rational(1))).empty());
    CHECK(preimages_one_step(sq, ProjPoint(Rational(0))) ==
          std::vector<ProjPoint>{ProjPoint(Rational(0))});
    // infinity as preimage of a finite value
    RatMap m(make_poly({0, 1, 1}), make_poly({2, 1}));  // (x^2+x)/(x+2), phi(inf)=inf
    auto pm = preimages_one_step(m, ProjPoint::infinity());
    CHECK(std::count(pm.begin(), pm.end(), ProjPoint(Rational(-2))) == 1);
    CHECK(std::count(pm.begin(), pm.end(), ProjPoint::infinity()) == 1);
}

TEST_CASE("preimage BFS tree") {
    auto t1 = preimage_set(poly_map({-1, 0, 1}), ProjPoint(Rational(0)));
    CHECK(t1.preim_count() == 3);
    CHECK(t1.root_rediscovered);
    std::vector<ProjPoint> pts;
    for (const auto& n : t1.nodes) pts.push_back(n.point);
    for (long v : {0, 1, -1})
        CHECK(std::count(pts.begin(), pts.end(), ProjPoint(Rational(v))) == 1);

    auto t2 = preimage_set(poly_map({0, 0, 1}), ProjPoint(Rational(0)));
    CHECK(t2.preim_count() == 1);

    auto t3 = preimage_set(poly_map({12, 8, 1}), ProjPoint(Rational(0)));
    bool has = false;
    for (const auto& n : t3.nodes)
        if (n.point == ProjPoint(Rational(-2)) && n.depth == 1) has = true;
    CHECK(has);
}

TEST_CASE("tree soundness: every node iterates back to the root") {
    RatMap phi(make_poly({0, 2, 0, 1}), make_poly({1, 1}));  // (x^3+2x)/(x+1)
    auto tree = preimage_set(phi, ProjPoint(Rational(0)));
    for (const auto& n : tree.nodes) {
        if (n.depth == 0) continue;
        CHECK(evaluate(iterate(phi, static_cast<unsigned>(n.depth)), n.point) == tree.root);
        CHECK(evaluate(phi, n.point) == tree.nodes[static_cast<std::size_t>(n.parent)].point);
    }
}

TEST_CASE("depth-1 completeness against brute force") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<long> pick(-4, 4);
    int done = 0;
    const long B = 100;
    while (done < 20) {
        RatMap* phi = nullptr;
        try {
            phi = new RatMap(make_poly({pick(rng), pick(rng), pick(rng) * 2 + 1}),
                             make_poly({pick(rng) * 2 + 1, pick(rng)}));
        } catch (const DegreeDrop&) {
            continue;
        }
        ProjPoint v(Rational(pick(rng)));
        auto fast = preimages_one_step(*phi, v);
        std::vector<ProjPoint> brute;
        for (long q = 1; q <= B; ++q)
            for (long p = -B; p <= B; ++p) {
                Rational x = make_rational(p, q);
                if (x.get_den() != q) continue;  // not reduced: already seen
                if (evaluate(*phi, ProjPoint(x)) == v) brute.push_back(ProjPoint(x));
            }
        if (evaluate(*phi, ProjPoint::infinity()) == v) brute.push_back(ProjPoint::infinity());
        for (const auto& b : brute) CHECK(std::count(fast.begin(), fast.end(), b) == 1);
        for (const auto& f : fast)
            if (f.is_finite() && abs(f.value().get_num()) <= B && f.value().get_den() <= B)
                CHECK(std::count(brute.begin(), brute.end(), f) == 1);
        delete phi;
        ++done;
    }
}

TEST_CASE("chain matrix determinant on the worked chain") {
    std::vector<Rational> chain{make_rational(1, 42), make_rational(1, 6), make_rational(1, 2),
                                Rational(1)};
    CHECK(chain_matrix_det(2, chain) == Rational(0));
    CHECK(chain_matrix_det(2, {Rational(0), Rational(1), Rational(2), Rational(3)}) !=
          Rational(0));
}

TEST_CASE("chain matrix vanishes on 200 random genuine chains") {
    std::mt19937 rng(1717);
    std::uniform_int_distribution<long> pick(-3, 3);
    int done = 0;
    while (done < 200) {
        long d = 2 + (done % 2);
        std::vector<Rational> nc(static_cast<std::size_t>(d) + 1, Rational(0));
        nc[static_cast<std::size_t>(d)] = 1;
        for (long i = 1; i < d; ++i) nc[static_cast<std::size_t>(i)] = Rational(pick(rng));
        std::vector<Rational> dc(static_cast<std::size_t>(d), Rational(0));
        dc[0] = 1;
        for (long i = 1; i < d; ++i) dc[static_cast<std::size_t>(i)] = Rational(pick(rng));
        RatMap* phi = nullptr;
        try {
            phi = new RatMap(Poly(nc), Poly(dc));
        } catch (const DegreeDrop&) {
            continue;
        }
        std::vector<Rational> chain(static_cast<std::size_t>(2 * d));
        chain.back() = make_rational(pick(rng) * 3 + 1, 2);
        bool ok = true;
        for (long i = 2 * d - 1; i >= 1; --i) {
            ProjPoint img = evaluate(*phi, ProjPoint(chain[static_cast<std::size_t>(i)]));
            if (img.is_infinity()) {
                ok = false;
                break;
            }
            chain[static_cast<std::size_t>(i - 1)] = img.value();
        }
        if (ok) {
            CHECK(chain_matrix_det(d, chain) == Rational(0));
            ++done;
        }
        delete phi;
    }
}

TEST_CASE("s-unit chain verification") {
    RatMap phi(make_poly({0, 0, 1}), make_poly({1, 1}));  // x^2/(x+1), form (1)
    std::vector<Rational> chain{make_rational(1, 42), make_rational(1, 6), make_rational(1, 2),
                                Rational(1)};
    CHECK(verify_s_unit_chain(phi, PrimeSet({2, 3, 7}), make_rational(1, 42), chain));
    CHECK_FALSE(verify_s_unit_chain(phi, PrimeSet({2, 3}), make_rational(1, 42), chain));
    CHECK_THROWS_AS(
        verify_s_unit_chain(phi, PrimeSet({2}), make_rational(1, 42),
                            {make_rational(1, 42), Rational(1)}),
        ChainBroken);
    RatMap notform(make_poly({0, 1, 1}), make_poly({2, 1}));
    CHECK_THROWS_AS(verify_s_unit_chain(notform, PrimeSet({2}), Rational(1), {Rational(1)}),
                    HypothesisViolated);
    // x_0 = a with an empty tail is fine
    RatMap sq(make_poly({0, 0, 1}), Poly::constant(Rational(1)));
    CHECK(verify_s_unit_chain(sq, PrimeSet({2}), Rational(2), {Rational(2)}));
}

TEST_CASE("s-unit closure of preimage trees") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<long> pick(-2, 2);
    std::vector<PrimeSet> sets{PrimeSet({2}), PrimeSet({2, 3}), PrimeSet({2, 3, 5})};
    int done = 0;
    while (done < 50) {
        const PrimeSet& S = sets[static_cast<std::size_t>(done) % sets.size()];
        // form (1): (x^2 + a1 x)/(b1 x + 1) with S-integral a1, b1
        Rational a1 = make_rational(pick(rng), 2);
        Rational b1 = make_rational(pick(rng), 2);
        RatMap* phi = nullptr;
        try {
            phi = new RatMap(Poly(std::vector<Rational>{Rational(0), a1, Rational(1)}),
                             Poly(std::vector<Rational>{Rational(1), b1}));
        } catch (const DegreeDrop&) {
            continue;
        }
        Rational a = done % 2 ? Rational(2) : make_rational(1, 2);
        auto tree = preimage_set(*phi, ProjPoint(a));
        for (const auto& n : tree.nodes)
            if (n.depth > 0 && n.point.is_finite()) CHECK(is_s_unit(n.point.value(), S));
        delete phi;
        ++done;
    }
}

TEST_CASE("preimage count never exceeds the geometric sum") {
    RatMap phi = poly_map({-1, 0, 1});
    auto tree = preimage_set(phi, ProjPoint(Rational(0)));
    double cap = 0;
    for (long i = 1; i <= tree.max_depth; ++i) cap += std::pow(2.0, i);
    CHECK(static_cast<double>(tree.preim_count()) <= cap);
}

TEST_CASE("evertse bound") {
    CHECK(evertse_bound(2, 1) == BigInt(1) << 296);
    CHECK(evertse_bound(2, 2) == (BigInt(1) << 296) * (BigInt(1) << 296));
    BigInt base = (BigInt(1) << 35) * 9;
    BigInt expect(1);
    for (int i = 0; i < 27; ++i) expect *= base;
    CHECK(evertse_bound(3, 1) == expect);
}

TEST_CASE("mu bound") {
    auto [r2, c2] = mu_bound(2);
    CHECK(r2 == 1536);
    CHECK(c2 == 4096);
    auto [r3, c3] = mu_bound(3);
    BigInt p20;
    mpz_ui_pow_ui(p20.get_mpz_t(), 3, 20);
    CHECK(r3 == 5 * p20);
    BigInt p27;
    mpz_ui_pow_ui(p27.get_mpz_t(), 3, 27);
    CHECK(c3 == p27);
    for (long d = 2; d <= 10; ++d) {
        auto [r, c] = mu_bound(d);
        CHECK(r <= c);
    }
}

TEST_CASE("kappa log log and depth bound") {
    auto k21 = kappa_prime_loglog(2, 1);
    CHECK(k21.loglog == doctest::Approx(40.0 * std::log(2.0)));
    auto k23 = kappa_prime_loglog(2, 3);
    CHECK(k23.loglog == doctest::Approx(40.0 * std::log(2.0) + std::log(3.0)));
    // monotone in d and s
    double prev = 0;
    for (long d = 2; d <= 6; ++d) {
        auto k = kappa_prime_loglog(d, 2);
        CHECK(k.loglog > prev);
        prev = k.loglog;
    }
    CHECK(kappa_prime_loglog(3, 5).loglog > kappa_prime_loglog(3, 4).loglog);
    // exact depth bound for d = 2: 3 + 1536 * 2^24! ... cross-check against log2
    REQUIRE(k21.depth_bound_exact.has_value());
    double bits = log_bigint(*k21.depth_bound_exact) / std::log(2.0);
    CHECK(bits == doctest::Approx(k21.depth_bound_log2).epsilon(1e-6));
    CHECK_FALSE(kappa_prime_loglog(6, 1).depth_bound_exact.has_value());
    CHECK(kappa_prime_loglog(6, 1).depth_bound_log2 > 479001600.0);  // (12)!
}
