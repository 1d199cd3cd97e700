#pragma once

#include <optional>
#include <vector>

#include "preim/arith.hpp"
#include "preim/errors.hpp"
#include "preim/poly.hpp"
#include "preim/scalarfield.hpp"

namespace preim {

/// Linear fractional transformation x -> (ax+b)/(cx+d) over Q.
struct Moebius {
    Rational a, b, c, d;

    Moebius(Rational a_, Rational b_, Rational c_, Rational d_);
    static Moebius identity() { return Moebius(Rational(1), Rational(0), Rational(0), Rational(1)); }
    static Moebius translation(const Rational& s) {
        return Moebius(Rational(1), s, Rational(0), Rational(1));
    }

    Moebius inverse() const;
    ProjPoint apply(const ProjPoint& P) const;
};

/// Rational self-map of P^1 over Q in lowest terms: joint-primitive integer
/// coefficients, nonvanishing resultant at the declared degree.
class RatMap {
public:
    RatMap(Poly num, Poly den);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    long degree() const { return degree_; }
    /// Resultant of the degree-d homogenizations (nonzero by construction).
    const Rational& rho() const { return rho_; }

    bool operator==(const RatMap& o) const { return num_ == o.num_ && den_ == o.den_; }

private:
    Poly num_, den_;
    long degree_ = 0;
    Rational rho_;
};

ProjPoint evaluate(const RatMap& phi, const ProjPoint& P);
RatMap compose(const RatMap& outer, const RatMap& inner);
RatMap iterate(const RatMap& phi, unsigned N);
RatMap conjugate(const RatMap& phi, const Moebius& L);

struct OrbitResult {
    enum class Verdict { Preperiodic, Wandering };
    Verdict verdict;
    long tail = 0;          // Preperiodic: first index of the cycle
    long cycle_length = 0;  // Preperiodic
    long escape_index = 0;  // Wandering: index where the height bound was crossed
    std::vector<ProjPoint> orbit_prefix;

    bool preperiodic() const { return verdict == Verdict::Preperiodic; }
};

/// Explicit C with |h(phi(Q)) - d*h(Q)| <= C for all Q in P^1(Q), from
/// coefficient sums (upper) and integer-cleared Sylvester cofactors (lower).
/// Also exposes the bad-prime modulus: gcd extraction under iteration is
/// supported only at primes dividing it.
struct DistortionData {
    double C = 0;
    BigInt bad_modulus = 1;
};
DistortionData height_distortion(const RatMap& phi);

OrbitResult is_preperiodic(const RatMap& phi, const ProjPoint& P);

struct HeightInterval {
    double lo = 0, hi = 0;
    double width() const { return hi - lo; }
    double mid() const { return (lo + hi) / 2; }
    bool contains(double v) const { return lo <= v && v <= hi; }
};

/// Interval of width <= eps around the canonical height
/// lim d^{-n} h(phi^n(P)), via local Green's functions: renormalized
/// floating-point iteration at the archimedean place, p-adic gcd tracking at
/// primes of the bad modulus. Preperiodic points give the exact [0,0].
HeightInterval canonical_height(const RatMap& phi, const ProjPoint& P, double eps);

/// Moebius transformation with coefficients in a scalar quadratic tower.
struct TowerMoebius {
    QuadTowerScalar a, b, c, d;

    /// nullopt encodes infinity.
    std::optional<QuadTowerScalar> apply(const ProjPoint& P) const;
    std::optional<QuadTowerScalar> apply(const std::optional<QuadTowerScalar>& v) const;
};

/// phi conjugated to (x^d + a_{d-1}x^{d-1} + ... + a_1 x)/(b_{d-1}x^{d-1} + ... + b_1 x + 1):
/// monic numerator with zero constant term, denominator with constant term 1
/// and degree < d. The witness L satisfies L(a) not in {0, inf}.
struct NormalFormResult {
    TowerMoebius L;
    PolyT<QuadTowerScalar> num, den;
    QuadTowerScalar a_image;
};

bool is_form_one(const PolyT<QuadTowerScalar>& num, const PolyT<QuadTowerScalar>& den);
bool is_form_one(const RatMap& phi);

/// Throws ExtensionUnsupported when no suitable pair of fixed points exists
/// within quadratic-tower reach (or the scaling needs a root of degree > 2).
NormalFormResult to_normal_form(const RatMap& phi, const ProjPoint& a);

}  // namespace preim
