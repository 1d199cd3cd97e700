#include "preim/curves.hpp"

#include <deque>

#include "preim/errors.hpp"

namespace preim {

std::string kind_name(FamilyKind k) {
    return k == FamilyKind::PolyQuad ? "PolyQuad" : "RatQuad";
}

QuadFamily::QuadFamily(FamilyKind kind, Poly a, Poly b, Poly c)
    : kind_(kind), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    if (kind_ == FamilyKind::PolyQuad) {
        // b^2 - 4c - 2b drives the level >= 2 relations; when it is constant the
        // whole family is a parameter translate of one quadratic, and preimage
        // counts grow without bound along the parameter line.
        Poly drive = b_ * b_ - c_ * Rational(4) - b_ * Rational(2);
        if (drive.is_constant())
            throw HypothesisViolated(
                "PolyQuad family with constant b^2 - 4c - 2b: degenerate translate family");
    } else {
        // recorded, not fatal: curves still make sense, only the counting
        // theorems refuse to apply
        Poly bc = b_ * c_;
        if (bc.is_constant()) hypotheses_ok_ = false;
        if (c_.is_constant() && !a_.is_constant()) hypotheses_ok_ = false;
    }
}

RatMap QuadFamily::member(const Rational& t0) const {
    Rational b0 = b_.eval(t0), c0 = c_.eval(t0);
    if (kind_ == FamilyKind::PolyQuad)
        return RatMap(Poly(std::vector<Rational>{c0, b0, Rational(1)}),
                      Poly::constant(Rational(1)));
    if (b0 * c0 == Rational(1))
        throw HypothesisViolated("RatQuad member at b(t0)c(t0) = 1 degenerates to a line");
    return RatMap(Poly(std::vector<Rational>{Rational(0), b0, Rational(1)}),
                  Poly(std::vector<Rational>{Rational(1), c0}));
}

bool Component::same_curve(const Component& o) const {
    return kind == o.kind && tower.radicands() == o.tower.radicands() && x == o.x;
}

BiPoly preimage_curve_poly(const QuadFamily& fam, unsigned N) {
    if (N == 0) throw std::domain_error("preimage_curve_poly: N >= 1 required");
    BiPoly b = BiPoly::from_t_poly(fam.b());
    BiPoly c = BiPoly::from_t_poly(fam.c());
    BiPoly A = BiPoly::x();
    BiPoly B = BiPoly::constant(Rational(1));
    for (unsigned i = 0; i < N; ++i) {
        BiPoly AB = A * B;
        if (fam.kind() == FamilyKind::PolyQuad) {
            A = A * A + b * AB + c * (B * B);
            B = B * B;
        } else {
            BiPoly A2 = A * A + b * AB;
            B = c * AB + B * B;
            A = A2;
        }
    }
    BiPoly F = (A - BiPoly::from_t_poly(fam.a()) * B).primitive();
    if (F.deg_x() != (1L << N))
        throw DegreeDrop("preimage_curve_poly: unexpected x-degree");
    return F;
}

std::pair<ProjPoint, Rational> delta_map(const QuadFamily& fam,
                                         const std::pair<Rational, Rational>& P) {
    const auto& [x0, t0] = P;
    Rational b0 = fam.b().eval(t0), c0 = fam.c().eval(t0);
    if (fam.kind() == FamilyKind::PolyQuad)
        return {ProjPoint(x0 * x0 + b0 * x0 + c0), t0};
    Rational den = c0 * x0 + 1;
    if (is_zero(den)) return {ProjPoint::infinity(), t0};
    return {ProjPoint((x0 * x0 + b0 * x0) / den), t0};
}

std::optional<FuncElem> tower_is_square(const FuncTower& tower, const FuncElem& g) {
    if (FuncTower::elem_is_zero(g))
        throw ZeroElement("tower_is_square: zero radicand");
    return tower.is_square(g);
}

namespace {

/// One level of the tower recursion: solve phi_t(x') = x over the component's
/// function field. Quadratic in x' with linear term beff and radicand g; a
/// square g splits the component into two, otherwise g is adjoined.
std::vector<Component> extend_component(const QuadFamily& fam, const Component& comp) {
    const FuncTower& tw = comp.tower;
    RatFun bf(fam.b()), cf(fam.c());
    RatFun half(make_rational(1, 2));
    FuncElem beff, g;
    if (fam.kind() == FamilyKind::PolyQuad) {
        beff = tw.constant(bf);
        g = tw.add(tw.constant(bf * bf - RatFun(4) * cf), tw.scale(comp.x, RatFun(4)));
    } else {
        beff = tw.sub(tw.constant(bf), tw.scale(comp.x, cf));
        g = tw.add(tw.mul(beff, beff), tw.scale(comp.x, RatFun(4)));
    }
    if (FuncTower::elem_is_zero(g))
        throw DegenerateRelation("extend_component: level relation has zero discriminant");
    std::vector<Component> out;
    if (auto r = tw.is_square(tw.lift(g, tw.levels()))) {
        for (int branch = 0; branch < 2; ++branch) {
            Component child = comp;
            child.level += 1;
            FuncElem signed_root = branch == 0 ? *r : tw.neg(*r);
            child.x = tw.scale(tw.sub(signed_root, beff), half);
            child.x_history.push_back(child.x);
            child.levels.push_back(ComponentLevel{true, g, *r, branch});
            out.push_back(std::move(child));
        }
    } else {
        Component child = comp;
        child.level += 1;
        child.tower.adjoin(FuncTower::lift(g, tw.levels()));
        FuncElem y = child.tower.gen(child.tower.levels());
        child.x = child.tower.scale(child.tower.sub(y, beff), half);
        child.x_history.push_back(child.x);
        child.levels.push_back(ComponentLevel{false, g, std::nullopt, 0});
        out.push_back(std::move(child));
    }
    return out;
}

Component root_component(const QuadFamily& fam) {
    Component root;
    root.kind = fam.kind();
    root.level = 0;
    root.x = root.tower.constant(RatFun(fam.a()));
    return root;
}

}  // namespace

std::vector<Component> components(const QuadFamily& fam, unsigned N) {
    if (N == 0) throw std::domain_error("components: N >= 1 required");
    std::vector<Component> frontier{root_component(fam)};
    for (unsigned i = 0; i < N; ++i) {
        std::vector<Component> next;
        for (const auto& comp : frontier)
            for (auto& child : extend_component(fam, comp)) next.push_back(std::move(child));
        frontier = std::move(next);
    }
    long total = 0;
    for (const auto& comp : frontier) total += comp.deg_x();
    if (total != (1L << N))
        throw std::logic_error("components: degrees do not sum to 2^N");
    return frontier;
}

StableSet enumerate_until_stable(const QuadFamily& fam, long delta, unsigned level_cap) {
    StableSet out;
    if (delta < 1) {
        out.stabilized_at = 1;
        return out;
    }
    std::vector<Component> frontier{root_component(fam)};
    for (unsigned N = 1; N <= level_cap; ++N) {
        std::vector<Component> next;
        for (const auto& comp : frontier)
            for (auto& child : extend_component(fam, comp)) {
                if (child.deg_x() > delta) continue;  // degrees never shrink below this
                bool seen = false;
                for (const auto& known : out.components)
                    if (child.same_curve(known)) {
                        seen = true;  // deterministic recursion: children repeat too
                        break;
                    }
                if (seen) continue;
                out.components.push_back(child);
                next.push_back(std::move(child));
            }
        if (next.empty()) {
            out.stabilized_at = N;
            return out;
        }
        frontier = std::move(next);
    }
    throw CapExceeded("enumerate_until_stable: no stabilization within level cap");
}

Poly specialize(const QuadFamily& fam, unsigned N, const Rational& t0) {
    (void)fam.member(t0);  // degree and b(t0)c(t0) = 1 checks
    Poly F = preimage_curve_poly(fam, N).eval_t(t0);
    if (F.degree() != (1L << N))
        throw DegreeDrop("specialize: x-degree dropped at t0");
    return F;
}

namespace {

nlohmann::ordered_json poly_json(const Poly& p) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : p.coeffs()) arr.push_back(c.get_str());
    return arr;
}

nlohmann::ordered_json ratfun_json(const RatFun& f) {
    return {{"num", poly_json(f.num())}, {"den", poly_json(f.den())}};
}

nlohmann::ordered_json elem_json(const FuncElem& e) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& coord : e) arr.push_back(ratfun_json(coord));
    return arr;
}

}  // namespace

nlohmann::ordered_json component_to_json(const QuadFamily& fam, const Component& comp) {
    nlohmann::ordered_json j;
    j["kind"] = kind_name(fam.kind());
    j["a"] = poly_json(fam.a());
    j["b"] = poly_json(fam.b());
    j["c"] = poly_json(fam.c());
    j["level"] = comp.level;
    j["deg_x"] = comp.deg_x();
    auto levels = nlohmann::ordered_json::array();
    for (const auto& lv : comp.levels) {
        nlohmann::ordered_json lj;
        lj["split"] = lv.split;
        lj["g"] = elem_json(lv.g);
        if (lv.root) {
            lj["root"] = elem_json(*lv.root);
            lj["branch"] = lv.branch;
        }
        levels.push_back(std::move(lj));
    }
    j["levels"] = std::move(levels);
    j["x"] = elem_json(comp.x);
    return j;
}

}  // namespace preim
