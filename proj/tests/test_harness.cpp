#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "preim/harness.hpp"

using namespace preim;

static Poly make_poly(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    for (long v : coeffs) c.emplace_back(v);
    return Poly(std::move(c));
}

// x^2 + t with target 0
static QuadFamily x2_plus_t() {
    return QuadFamily(FamilyKind::PolyQuad, Poly(), Poly(), make_poly({0, 1}));
}

TEST_CASE("enumerate_rationals: small heights") {
    auto h1 = enumerate_rationals(1);
    CHECK(h1 == std::vector<Rational>{Rational(0), Rational(1), Rational(-1)});
    auto h2 = enumerate_rationals(2);
    CHECK(h2.size() == 7);
    for (const auto& v : {Rational(2), Rational(-2), make_rational(1, 2), make_rational(-1, 2)})
        CHECK(std::find(h2.begin(), h2.end(), v) != h2.end());
    CHECK(enumerate_rationals(3).size() == 15);  // adds +-3, +-1/3, +-2/3, +-3/2
    CHECK_THROWS_AS(enumerate_rationals(0), std::domain_error);
}

TEST_CASE("sweep of x^2 + t: desk values and determinism") {
    SweepSpec spec{x2_plus_t(), 10, std::nullopt, 1};
    auto records = sweep(spec);
    CHECK(records.size() == enumerate_rationals(10).size());
    auto at = [&](long num, long den) {
        Rational t = make_rational(num, den);
        auto it = std::find_if(records.begin(), records.end(),
                               [&](const SweepRecord& r) { return r.t == t; });
        REQUIRE(it != records.end());
        REQUIRE(it->preim_count);
        return *it->preim_count;
    };
    CHECK(at(0, 1) == 1);
    CHECK(at(-1, 1) == 3);
    CHECK(at(-2, 1) == 0);

    SweepSpec par = spec;
    par.workers = 4;
    CHECK(sweep_csv(sweep(par)) == sweep_csv(records));
}

TEST_CASE("sweep s-cap filter and skip recording") {
    SweepSpec spec{x2_plus_t(), 2, 0, 1};
    auto records = sweep(spec);
    CHECK(records.size() == 5);  // 0, 1, -1, 2, -2: halves are filtered out
    for (const auto& r : records) {
        CHECK(r.s_t == 0);
        CHECK(r.skipped_reason.empty());
    }

    // RatQuad b = t, c = 1 degenerates at t = 1 (bc = 1): recorded, not dropped
    QuadFamily rat(FamilyKind::RatQuad, Poly(), make_poly({0, 1}), make_poly({1}));
    auto rr = sweep(SweepSpec{rat, 1, std::nullopt, 1});
    auto it = std::find_if(rr.begin(), rr.end(),
                           [](const SweepRecord& r) { return r.t == Rational(1); });
    REQUIRE(it != rr.end());
    CHECK_FALSE(it->preim_count);
    CHECK(it->skipped_reason == "HypothesisViolated");
}

TEST_CASE("sweep of x^2 + t at height 64: observed maximum is 6") {
    // t = -1/64 is the smallest parameter reaching 6, so the cap must be >= 64
    SweepSpec spec{x2_plus_t(), 64, std::nullopt, 4};
    auto records = sweep(spec);
    auto summary = summarize(records);
    CHECK(summary.max_count == 6);
    CHECK_FALSE(summary.argmax.empty());
    for (const auto& r : records)
        if (r.preim_count) CHECK(*r.preim_count <= 6);

    // stratification is monotone: integer parameters never beat s(t) <= 1 ones
    long max_s0 = 0, max_s01 = 0;
    for (const auto& r : records) {
        if (!r.preim_count) continue;
        if (r.s_t == 0) max_s0 = std::max(max_s0, *r.preim_count);
        if (r.s_t <= 1) max_s01 = std::max(max_s01, *r.preim_count);
    }
    CHECK(max_s0 <= max_s01);

    // histogram is stratified by s_t and counts every unskipped record
    long total = 0;
    for (const auto& [s, buckets] : summary.histogram)
        for (const auto& [count, freq] : buckets) total += freq;
    long unskipped = static_cast<long>(
        std::count_if(records.begin(), records.end(),
                      [](const SweepRecord& r) { return bool(r.preim_count); }));
    CHECK(total == unskipped);
}

TEST_CASE("summarize histogram on a toy record set") {
    std::vector<SweepRecord> recs(3);
    recs[0] = {Rational(0), 0, 1, 1, ""};
    recs[1] = {Rational(-1), 0, 3, 2, ""};
    recs[2] = {Rational(-2), 0, 0, 0, ""};
    auto s = summarize(recs);
    CHECK(s.histogram[0][0] == 1);
    CHECK(s.histogram[0][1] == 1);
    CHECK(s.histogram[0][3] == 1);
    CHECK(s.max_count == 3);
    CHECK(s.argmax == std::vector<Rational>{Rational(-1)});
}

TEST_CASE("sweep csv shape") {
    SweepSpec spec{x2_plus_t(), 1, std::nullopt, 1};
    auto csv = sweep_csv(sweep(spec));
    CHECK(csv.rfind("t_num,t_den,s_t,preim_count,max_depth,skipped_reason\n", 0) == 0);
    CHECK(csv.find("\n0,1,0,1,") != std::string::npos);
}

TEST_CASE("swap identity: infinity target of (b,c) matches zero target of (c,b)") {
    std::vector<Rational> ts;
    for (long v = -20; v <= 20; ++v) ts.emplace_back(v);
    auto recs = swap_identity_check(make_poly({0, 1}), make_poly({1}), ts);
    REQUIRE(recs.size() == ts.size());
    for (const auto& r : recs) {
        if (r.t == Rational(1)) {
            CHECK_FALSE(r.equal);  // b(1)c(1) = 1: degenerate, skipped
            continue;
        }
        REQUIRE(r.equal);
        CHECK(*r.equal);
    }

    // symmetric family: both sides are the same map
    auto sym = swap_identity_check(make_poly({0, 1}), make_poly({0, 1}), {Rational(2)});
    REQUIRE(sym[0].equal);
    CHECK(*sym[0].equal);
    CHECK(sym[0].count_infinity == sym[0].count_zero);
}

TEST_CASE("iterates of (x + t)^2 - t collapse and seed deep preimages") {
    CHECK(example21_check(0));  // vacuous
    CHECK(example21_check(3));
    CHECK_THROWS_AS(example21_check(5), std::domain_error);
}

TEST_CASE("conjugation invariance of preimage counts inside a sweep") {
    QuadFamily fam = x2_plus_t();
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<long> small(-6, 6);
    int done = 0;
    while (done < 20) {
        Rational t(small(rng));
        Rational la(small(rng)), lb(small(rng)), lc(small(rng)), ld(small(rng));
        if (la * ld - lb * lc == 0) continue;
        Moebius L(la, lb, lc, ld);
        RatMap phi = fam.member(t);
        ProjPoint a(fam.a().eval(t));
        auto base = preimage_set(phi, a).preim_count();
        auto moved = preimage_set(conjugate(phi, L), L.apply(a)).preim_count();
        CHECK(base == moved);
        ++done;
    }
}
