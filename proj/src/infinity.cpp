#include "preim/infinity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <tuple>

#include "preim/errors.hpp"

namespace preim {

namespace {

struct Unresolved {};  // internal: retry the whole place analysis at higher precision

long ratfun_tdeg(const RatFun& f) {
    return std::max<long>(std::max(f.num().degree(), f.den().degree()), 0);
}

PuiseuxSeries expand_poly(const ScalarTower& K, const Poly& p, const PuiseuxSeries& tser) {
    PuiseuxSeries acc = series_zero(tser.e);
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
        acc = series_add(K, series_mul(K, acc, tser),
                         series_term(std::vector<Rational>{*it}, 0, tser.e));
    return acc;
}

PuiseuxSeries expand_ratfun(const ScalarTower& K, const RatFun& f, const PuiseuxSeries& tser,
                            long len) {
    PuiseuxSeries n = expand_poly(K, f.num(), tser);
    if (f.den().is_constant())
        return series_scale(K, n, K.constant(Rational(1) / f.den().coeff(0)));
    return series_mul(K, n, series_inv(K, expand_poly(K, f.den(), tser), len));
}

PuiseuxSeries expand_elem(const ScalarTower& K, const FuncElem& g, const PuiseuxSeries& tser,
                          const std::vector<PuiseuxSeries>& ys, long len) {
    PuiseuxSeries acc = series_zero(tser.e);
    for (std::size_t mask = 0; mask < g.size(); ++mask) {
        if (g[mask].is_zero()) continue;
        PuiseuxSeries term = expand_ratfun(K, g[mask], tser, len);
        for (std::size_t j = 0; j < ys.size(); ++j)
            if (mask & (std::size_t{1} << j)) term = series_mul(K, term, ys[j]);
        acc = series_add(K, acc, term);
    }
    return series_normalize(acc);
}

/// Substitute u = lambda v^2: coefficients pick up lambda^k, exponents double.
PuiseuxSeries reparam(const ScalarTower& K, const PuiseuxSeries& s, const ScalarElem& lambda) {
    return series_rescale(series_subst_scaled(K, s, lambda), 2);
}

std::vector<InfinityPlace> attach_root(InfinityPlace place, PuiseuxSeries G, long len) {
    G = series_normalize(G);
    if (G.is_exact_zero())
        throw DegenerateRelation("place extension: relation radicand vanishes identically");
    if (!G.resolved()) throw Unresolved{};
    long m = G.ord();
    if (((m % 2) + 2) % 2 != 0) {
        // odd order: ramify, absorbing the leading coefficient into the new
        // uniformizer (u = lambda v^2) so the residue field stays put
        ScalarElem lambda = G.leading();
        place.e *= 2;
        place.t = reparam(place.field, place.t, lambda);
        for (auto& y : place.ys) y = reparam(place.field, y, lambda);
        G = reparam(place.field, G, lambda);
        place.ys.push_back(series_sqrt(place.field, G, G.exact ? 2 * len : -1));
        return {std::move(place)};
    }
    ScalarElem c = G.leading();
    if (place.field.is_square(c)) {
        PuiseuxSeries y = series_sqrt(place.field, G, G.exact ? len : -1);
        InfinityPlace other = place;
        place.ys.push_back(y);
        other.ys.push_back(series_neg(y));
        return {std::move(place), std::move(other)};
    }
    // even order, non-square leading coefficient: one place carrying the
    // conjugate pair, with the coefficient field extended
    place.field.adjoin(ScalarTower::lift(c, place.field.levels()));
    place.residue_degree *= 2;
    place.ys.push_back(series_sqrt(place.field, G, G.exact ? len : -1));
    return {std::move(place)};
}

InfinityPlace base_place() {
    InfinityPlace p;
    p.t = series_term(std::vector<Rational>{Rational(1)}, -1, 1);
    return p;
}

long component_precision_cap(const Component& comp) {
    long total = 0;
    for (const auto& g : comp.tower.radicands())
        for (const auto& coord : g) total += ratfun_tdeg(coord);
    return 2 * total + 16;
}

PlaceReport analyze(const Component& comp, long prec) {
    std::vector<InfinityPlace> places{base_place()};
    for (const auto& g : comp.tower.radicands()) {
        std::vector<InfinityPlace> next;
        for (auto& p : places) {
            PuiseuxSeries G = expand_elem(p.field, g, p.t, p.ys, prec);
            for (auto& q : attach_root(std::move(p), std::move(G), prec)) next.push_back(std::move(q));
        }
        places = std::move(next);
    }
    PlaceReport rep;
    rep.deg_x = comp.deg_x();
    long total = 0;
    for (auto& p : places) {
        for (const auto& xe : comp.x_history)
            p.xs.push_back(expand_elem(p.field, xe, p.t, p.ys, prec));
        total += p.e * p.residue_degree;
        if (p.residue_degree == 1 && p.field.levels() == 0) ++rep.rational_count;
        if (p.field.levels() > 0) rep.extended_field = true;
    }
    if (total != rep.deg_x)
        throw std::logic_error("places_at_infinity: sum of e*f does not match deg_x");
    rep.orbit_count = static_cast<long>(places.size());
    rep.runge_r = rep.orbit_count;
    rep.places = std::move(places);
    return rep;
}

}  // namespace

std::vector<InfinityPlace> split_or_ramify(const InfinityPlace& place, const PuiseuxSeries& beta,
                                           const PuiseuxSeries& alpha) {
    PuiseuxSeries G = series_add(place.field, series_mul(place.field, beta, beta), alpha);
    long len = std::max<long>({4, static_cast<long>(beta.coeffs.size()),
                               static_cast<long>(alpha.coeffs.size())});
    try {
        return attach_root(place, std::move(G), len);
    } catch (const Unresolved&) {
        throw PrecisionExhausted("split_or_ramify: leading term of beta^2 + alpha unresolved");
    }
}

PlaceReport places_at_infinity(const Component& comp) {
    long cap = component_precision_cap(comp);
    for (long prec = 4;; prec *= 2) {
        if (prec > cap)
            throw PrecisionExhausted("places_at_infinity: precision cap reached");
        try {
            return analyze(comp, prec);
        } catch (const Unresolved&) {
            continue;
        }
    }
}

PuiseuxSeries expand_on_place(const InfinityPlace& place, const FuncElem& g, long len) {
    return expand_elem(place.field, g, place.t, place.ys, len);
}

long runge_threshold(const PlaceReport& report) { return report.orbit_count; }

std::vector<BoundCheck> theorem_bound_check(const QuadFamily& fam, unsigned N) {
    bool ac = fam.a().is_constant(), bc = fam.b().is_constant(), cc = fam.c().is_constant();
    std::string case_id;
    if (fam.kind() == FamilyKind::PolyQuad) {
        case_id = "poly-generic";  // the degenerate shape is rejected at construction
    } else if (bc && !cc) {
        case_id = "rat-constant-b";
    } else if (ac && cc && !bc) {
        case_id = "rat-constant-ac";
    } else if (!bc && !cc) {
        case_id = "rat-general";
    } else {
        throw NotApplicable("theorem_bound_check: no counting statement covers this shape");
    }
    std::vector<BoundCheck> out;
    for (const auto& comp : components(fam, N)) {
        PlaceReport rep = places_at_infinity(comp);
        BoundCheck check;
        check.case_id = case_id;
        check.deg_x = rep.deg_x;
        double lg = std::log2(static_cast<double>(rep.deg_x));
        if (case_id == "poly-generic") {
            Poly disc = fam.b() * fam.b() - fam.c() * Rational(4) + fam.a() * Rational(4);
            long d0 = std::max<long>(disc.degree(), 0);
            check.bound = static_cast<double>(rep.deg_x) / (4.0 * static_cast<double>(1 + d0));
            check.measured = rep.rational_count;
        } else if (case_id == "rat-constant-b") {
            check.bound = 1.0 + lg;
            check.measured = rep.orbit_count;
            check.orbit_based = true;
        } else if (case_id == "rat-constant-ac") {
            check.bound = lg;
            check.measured = rep.orbit_count;
            check.orbit_based = true;
        } else {
            long da = std::max<long>(fam.a().degree(), 0);
            bool strong = da + fam.c().degree() != fam.b().degree();
            check.bound = strong ? static_cast<double>(rep.deg_x)
                                 : static_cast<double>(rep.deg_x) / 2.0;
            check.measured = rep.rational_count;
        }
        if (static_cast<double>(check.measured) < check.bound - 1e-9)
            throw std::logic_error("theorem_bound_check: measured count below proved bound");
        out.push_back(std::move(check));
    }
    return out;
}

BiPoly component_min_poly(const Component& comp) {
    const FuncTower& tw = comp.tower;
    std::size_t L = tw.levels();
    // X - x over the tower, then one norm per level: write P = A + y_l B and
    // descend to A^2 - g_l B^2 over the subtower (sign flips of y_l alone are
    // honest automorphisms there, unlike global flips in the nested tower)
    std::vector<FuncElem> poly{tw.neg(tw.lift(comp.x, L)), tw.constant(RatFun(1))};
    for (std::size_t l = L; l >= 1; --l) {
        std::size_t bit = std::size_t{1} << (l - 1);
        FuncElem g = FuncTower::lift(tw.radicands()[l - 1], L);
        std::vector<FuncElem> A(poly.size(), FuncTower::lift(tw.zero(), L));
        std::vector<FuncElem> B = A;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            FuncElem p = FuncTower::lift(poly[i], L);
            for (std::size_t m = 0; m < p.size(); ++m)
                (m & bit ? B[i][m & ~bit] : A[i][m]) = p[m];
        }
        std::vector<FuncElem> next(2 * poly.size() - 1, tw.zero());
        for (std::size_t i = 0; i < poly.size(); ++i)
            for (std::size_t j = 0; j < poly.size(); ++j) {
                FuncElem term =
                    tw.sub(tw.mul(A[i], A[j]), tw.mul(g, tw.mul(B[i], B[j])));
                next[i + j] = tw.add(next[i + j], term);
            }
        poly = std::move(next);
    }
    std::vector<RatFun> coeffs;
    for (const auto& c : poly) {
        for (std::size_t m = 1; m < c.size(); ++m)
            if (!c[m].is_zero())
                throw std::logic_error("component_min_poly: norm left the base field");
        coeffs.push_back(c.empty() ? RatFun(0) : c[0]);
    }
    Poly lcm = Poly::constant(Rational(1));
    for (const auto& c : coeffs) {
        Poly g = poly_gcd(lcm, c.den());
        lcm = lcm * c.den().divmod(g).first;
    }
    std::vector<Poly> cleared;
    for (const auto& c : coeffs)
        cleared.push_back(c.num() * lcm.divmod(c.den()).first);
    return BiPoly::from_x_coefficients(cleared).primitive();
}

ProbeResult integral_point_probe(const Component& comp, long t_height_cap, const PrimeSet& S) {
    BiPoly f = component_min_poly(comp);
    ProbeResult out;
    if (t_height_cap < 1) return out;
    // S-smooth denominators up to the cap
    std::vector<long> dens{1};
    for (std::size_t i = 0; i < dens.size(); ++i)
        for (const auto& p : S.primes()) {
            long q = dens[i] * p.get_si();
            if (q <= t_height_cap && dens[i] <= t_height_cap / p.get_si())
                dens.push_back(q);
        }
    std::sort(dens.begin(), dens.end());
    dens.erase(std::unique(dens.begin(), dens.end()), dens.end());
    std::vector<std::pair<long, Rational>> ts;  // (height, t)
    for (long q : dens)
        for (long p = -t_height_cap; p <= t_height_cap; ++p)
            if (std::gcd(std::abs(p), q) == 1)
                ts.emplace_back(std::max(std::abs(p), q), make_rational(p, q));
    std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
        return std::tie(a.first, a.second) < std::tie(b.first, b.second);
    });
    std::vector<std::pair<Rational, Rational>> seen;
    for (const auto& [h, t0] : ts) {
        Poly F = f.eval_t(t0);
        if (F.is_zero() || F.is_constant()) continue;
        for (const auto& x0 : rational_roots(F)) {
            if (!is_s_integer(x0, S)) continue;
            auto pt = std::make_pair(x0, t0);
            if (std::find(seen.begin(), seen.end(), pt) != seen.end()) continue;
            seen.push_back(pt);
            out.last_new_height = h;
        }
    }
    out.points = std::move(seen);
    return out;
}

FamilyPlaces places_summary(const QuadFamily& fam, unsigned N) {
    FamilyPlaces out;
    for (const auto& comp : components(fam, N)) {
        PlaceReport rep = places_at_infinity(comp);
        out.orbits += rep.orbit_count;
        for (const auto& p : rep.places) {
            out.geometric += p.residue_degree;
            for (long i = 0; i < p.residue_degree; ++i) out.ram.push_back(p.e);
        }
    }
    std::sort(out.ram.begin(), out.ram.end());
    return out;
}

namespace {

using Cx = std::complex<double>;

Cx eval_poly_cx(const Poly& p, Cx t) {
    Cx acc = 0;
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
        acc = acc * t + Cx(it->get_d());
    return acc;
}

std::vector<Cx> branch_values(const QuadFamily& fam, unsigned N, Cx t) {
    std::vector<Cx> xs{eval_poly_cx(fam.a(), t)};
    Cx b = eval_poly_cx(fam.b(), t), c = eval_poly_cx(fam.c(), t);
    for (unsigned l = 0; l < N; ++l) {
        std::vector<Cx> next;
        next.reserve(xs.size() * 2);
        for (Cx x : xs) {
            Cx beff = fam.kind() == FamilyKind::PolyQuad ? b : b - c * x;
            Cx disc = fam.kind() == FamilyKind::PolyQuad ? b * b - 4.0 * c + 4.0 * x
                                                         : beff * beff + 4.0 * x;
            Cx r = std::sqrt(disc);
            next.push_back((-beff + r) / 2.0);
            next.push_back((-beff - r) / 2.0);
        }
        xs = std::move(next);
    }
    return xs;
}

/// Globally greedy nearest-distance bijection from -> to.
std::vector<int> match_sets(const std::vector<Cx>& from, const std::vector<Cx>& to) {
    std::vector<std::tuple<double, int, int>> pairs;
    for (int i = 0; i < static_cast<int>(from.size()); ++i)
        for (int j = 0; j < static_cast<int>(to.size()); ++j)
            pairs.emplace_back(std::abs(from[static_cast<std::size_t>(i)] -
                                        to[static_cast<std::size_t>(j)]),
                               i, j);
    std::sort(pairs.begin(), pairs.end());
    std::vector<int> assign(from.size(), -1);
    std::vector<bool> used(to.size(), false);
    for (const auto& [d, i, j] : pairs) {
        (void)d;
        if (assign[static_cast<std::size_t>(i)] < 0 && !used[static_cast<std::size_t>(j)]) {
            assign[static_cast<std::size_t>(i)] = j;
            used[static_cast<std::size_t>(j)] = true;
        }
    }
    return assign;
}

}  // namespace

FamilyPlaces numeric_place_oracle(const QuadFamily& fam, unsigned N, double radius, int steps) {
    const int n = 1 << N;
    std::vector<Cx> start = branch_values(fam, N, Cx(radius, 0));
    std::vector<Cx> cur = start;
    for (int s = 1; s <= steps; ++s) {
        double th = 2.0 * M_PI * static_cast<double>(s) / static_cast<double>(steps);
        auto nxt = branch_values(fam, N, std::polar(radius, th));
        auto as = match_sets(cur, nxt);
        std::vector<Cx> moved(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            moved[static_cast<std::size_t>(i)] = nxt[static_cast<std::size_t>(as[static_cast<std::size_t>(i)])];
        cur = std::move(moved);
    }
    auto perm = match_sets(cur, start);  // monodromy permutation around t = infinity
    std::vector<int> cycle_of(static_cast<std::size_t>(n), -1);
    std::vector<long> lengths;
    for (int i = 0; i < n; ++i) {
        if (cycle_of[static_cast<std::size_t>(i)] >= 0) continue;
        int id = static_cast<int>(lengths.size());
        long len = 0;
        for (int j = i; cycle_of[static_cast<std::size_t>(j)] < 0;
             j = perm[static_cast<std::size_t>(j)]) {
            cycle_of[static_cast<std::size_t>(j)] = id;
            ++len;
        }
        lengths.push_back(len);
    }
    // complex conjugation merges conjugate cycles into one orbit
    std::vector<Cx> conj(start);
    for (auto& v : conj) v = std::conj(v);
    auto cmap = match_sets(conj, start);
    std::vector<int> orbit(lengths.size());
    std::iota(orbit.begin(), orbit.end(), 0);
    std::function<int(int)> find = [&](int a) { return orbit[static_cast<std::size_t>(a)] == a ? a : orbit[static_cast<std::size_t>(a)] = find(orbit[static_cast<std::size_t>(a)]); };
    for (int i = 0; i < n; ++i) {
        int a = find(cycle_of[static_cast<std::size_t>(i)]);
        int b = find(cycle_of[static_cast<std::size_t>(cmap[static_cast<std::size_t>(i)])]);
        if (a != b) orbit[static_cast<std::size_t>(a)] = b;
    }
    FamilyPlaces out;
    out.geometric = static_cast<long>(lengths.size());
    out.ram = lengths;
    std::sort(out.ram.begin(), out.ram.end());
    std::vector<int> roots;
    for (std::size_t c = 0; c < lengths.size(); ++c) {
        int r = find(static_cast<int>(c));
        if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    out.orbits = static_cast<long>(roots.size());
    return out;
}

namespace {

nlohmann::ordered_json scalar_json(const ScalarElem& v) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : v) arr.push_back(c.get_str());
    return arr;
}

std::optional<long> series_ord(const PuiseuxSeries& s) {
    if (s.is_exact_zero() || !s.resolved()) return std::nullopt;
    return s.ord();
}

}  // namespace

nlohmann::ordered_json place_report_to_json(const PlaceReport& report,
                                            const std::string& component_id) {
    nlohmann::ordered_json j;
    j["component_id"] = component_id;
    j["deg_x"] = report.deg_x;
    auto places = nlohmann::ordered_json::array();
    for (const auto& p : report.places) {
        nlohmann::ordered_json pj;
        pj["e"] = p.e;
        pj["f"] = p.residue_degree;
        pj["ord_t"] = -p.e;
        auto ords = nlohmann::ordered_json::array();
        for (const auto& y : p.ys) {
            auto o = series_ord(y);
            if (o)
                ords.push_back(*o);
            else
                ords.push_back(nullptr);
        }
        pj["ord_generators"] = std::move(ords);
        auto rads = nlohmann::ordered_json::array();
        for (const auto& r : p.field.radicands()) rads.push_back(scalar_json(r));
        pj["field_radicands"] = std::move(rads);
        places.push_back(std::move(pj));
    }
    j["places"] = std::move(places);
    j["rational_count"] = report.rational_count;
    j["orbit_count"] = report.orbit_count;
    j["runge_r"] = report.runge_r;
    return j;
}

}  // namespace preim
