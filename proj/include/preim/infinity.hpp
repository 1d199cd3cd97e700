#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "preim/curves.hpp"
#include "preim/series.hpp"

namespace preim {

/// A place of a component's function field lying over t = infinity, carried as
/// lazy Puiseux data: uniformizer u with ord t = -e, expansions for t and for
/// every non-split tower generator, and the scalar tower of coefficients
/// adjoined along the way.
struct InfinityPlace {
    long e = 1;               // ramification over t = infinity
    long residue_degree = 1;  // doubles when a conjugate coefficient pair is bundled
    ScalarTower field;        // scalar coefficient extensions made at this place
    PuiseuxSeries t;
    std::vector<PuiseuxSeries> ys;  // expansions of the non-split generators
    std::vector<PuiseuxSeries> xs;  // expansions of x_1 .. x_N
};

struct PlaceReport {
    long deg_x = 1;
    std::vector<InfinityPlace> places;
    long rational_count = 0;  // places with no coefficient extension
    long orbit_count = 0;     // conjugacy bundles over the constructed field
    long runge_r = 0;
    bool extended_field = false;  // some place needed a scalar extension
};

/// Extend a place through y^2 = beta^2 + alpha. Splitting into two places when
/// the combined expansion has even order and square leading coefficient;
/// doubled ramification on odd order (with a uniformizer rescale keeping the
/// residue field fixed); a bundled conjugate pair (residue degree 2) otherwise.
/// Throws DegenerateRelation when beta^2 + alpha is exactly zero and
/// PrecisionExhausted when the leading term cannot be resolved.
std::vector<InfinityPlace> split_or_ramify(const InfinityPlace& place, const PuiseuxSeries& beta,
                                           const PuiseuxSeries& alpha);

/// All places over t = infinity of the component, with sum e*f = deg_x enforced.
PlaceReport places_at_infinity(const Component& comp);

/// Expansion of a tower element at a place, `len` terms.
PuiseuxSeries expand_on_place(const InfinityPlace& place, const FuncElem& g, long len);

struct BoundCheck {
    std::string case_id;  // which counting statement applies to the family shape
    long deg_x = 1;
    double bound = 0;
    long measured = 0;       // rational places, or orbits for the orbit-based cases
    bool orbit_based = false;
};

/// Check the proved lower bounds on points at infinity for every component at
/// level N. A measured count below the bound is an engine bug and throws
/// std::logic_error; a family shape no statement covers throws NotApplicable.
std::vector<BoundCheck> theorem_bound_check(const QuadFamily& fam, unsigned N);

/// r such that integral points are finite over any S with |S| < r.
long runge_threshold(const PlaceReport& report);

/// Minimal polynomial of the component's x over Q(t), primitive in Z[x, t].
BiPoly component_min_poly(const Component& comp);

struct ProbeResult {
    std::vector<std::pair<Rational, Rational>> points;  // (x, t)
    std::optional<long> last_new_height;  // height of t at the last new point
};

/// Height-capped search for S-integral points (x, t) on the component:
/// t ranges over S-integers of multiplicative height <= cap.
ProbeResult integral_point_probe(const Component& comp, long t_height_cap, const PrimeSet& S);

struct FamilyPlaces {
    long geometric = 0;        // places counted over the algebraic closure
    long orbits = 0;           // conjugacy bundles
    std::vector<long> ram;     // ramification indices, one per geometric place, sorted
};

/// Aggregate of places_at_infinity over all components at level N.
FamilyPlaces places_summary(const QuadFamily& fam, unsigned N);

/// Floating-point cross-check: expand all 2^N sign branches numerically on the
/// circle |t| = radius, follow them around t = infinity, and read places off
/// the monodromy cycles (conjugate cycles merge into one orbit).
FamilyPlaces numeric_place_oracle(const QuadFamily& fam, unsigned N, double radius = 1e5,
                                  int steps = 1024);

nlohmann::ordered_json place_report_to_json(const PlaceReport& report,
                                            const std::string& component_id);

}  // namespace preim
