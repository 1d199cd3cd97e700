#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "preim/bipoly.hpp"
#include "preim/dynamics.hpp"
#include "preim/quadtower.hpp"

namespace preim {

enum class FamilyKind { PolyQuad, RatQuad };

/// One-parameter quadratic family: x^2 + b(t)x + c(t) (PolyQuad) or
/// (x^2 + b(t)x)/(c(t)x + 1) (RatQuad), with target a(t).
class QuadFamily {
public:
    QuadFamily(FamilyKind kind, Poly a, Poly b, Poly c);

    FamilyKind kind() const { return kind_; }
    const Poly& a() const { return a_; }
    const Poly& b() const { return b_; }
    const Poly& c() const { return c_; }

    /// RatQuad counting hypotheses, recorded at construction: b*c nonconstant,
    /// and constant c forces constant a. PolyQuad families always pass here
    /// (their degenerate case is rejected outright by the constructor).
    bool hypotheses_satisfied() const { return hypotheses_ok_; }

    /// The member map at t = t0 (degree 2 verified). Throws HypothesisViolated
    /// when b(t0)c(t0) = 1 for RatQuad, DegreeDrop on degree collapse.
    RatMap member(const Rational& t0) const;

private:
    FamilyKind kind_;
    Poly a_, b_, c_;
    bool hypotheses_ok_ = true;
};

struct ComponentLevel {
    bool split = false;
    FuncElem g;                    // relation radicand, element of the subtower at this level
    std::optional<FuncElem> root;  // split certificate: root^2 = g
    int branch = 0;                // split levels: 0 for +root, 1 for -root
};

/// One irreducible component of the level-N preimage curve, carried as a tower
/// certificate: radicands of the non-split levels plus the branch data of the
/// split levels, and the resulting expression for x_N.
struct Component {
    FamilyKind kind = FamilyKind::PolyQuad;
    long level = 0;
    FuncTower tower;  // one adjoined generator per non-split level
    std::vector<ComponentLevel> levels;
    FuncElem x;  // x_level as a tower element
    std::vector<FuncElem> x_history;  // x_1 .. x_level

    long deg_x() const { return 1L << tower.levels(); }

    /// Curve identity for stabilization: same radicand sequence and the same
    /// coordinate function x (lines reappearing at higher levels compare equal).
    bool same_curve(const Component& o) const;
};

/// Defining polynomial of the level-N preimage curve, denominators cleared,
/// primitive; x-degree 2^N.
BiPoly preimage_curve_poly(const QuadFamily& fam, unsigned N);

/// (x, t) -> (phi_t(x), t); vanishing denominator maps to infinity.
std::pair<ProjPoint, Rational> delta_map(const QuadFamily& fam,
                                         const std::pair<Rational, Rational>& P);

/// Certified square root in the function-field tower; ZeroElement on g = 0.
std::optional<FuncElem> tower_is_square(const FuncTower& tower, const FuncElem& g);

/// All components at level N.
std::vector<Component> components(const QuadFamily& fam, unsigned N);

struct StableSet {
    std::vector<Component> components;  // distinct curves with deg_x <= delta
    unsigned stabilized_at = 0;         // first level where no new small curve appears
};

/// Enumerate components level by level, keeping the distinct curves with
/// deg_x <= delta; stops when every frontier member exceeds delta or repeats an
/// earlier curve. Throws CapExceeded when level_cap is hit first.
StableSet enumerate_until_stable(const QuadFamily& fam, long delta, unsigned level_cap = 24);

/// F_N(x, t0) as a univariate polynomial. Errors as in member().
Poly specialize(const QuadFamily& fam, unsigned N, const Rational& t0);

nlohmann::ordered_json component_to_json(const QuadFamily& fam, const Component& comp);

std::string kind_name(FamilyKind k);

}  // namespace preim
