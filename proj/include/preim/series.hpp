#pragma once

#include <vector>

#include "preim/quadtower.hpp"

namespace preim {

/// Coefficients binom(1/2, i) of the square-root binomial series, i = 0..n.
std::vector<Rational> sqrt_binomial_coeffs(unsigned n);

inline constexpr long kSeriesUnbounded = 1L << 40;

/// Truncated Laurent/Puiseux expansion in a local uniformizer u with t = u^{-e}.
/// Coefficients live in a scalar quadratic tower. Exponent k has coefficient
/// coeffs[k - n0]; exponents beyond the stored window are exactly zero when
/// `exact`, unknown otherwise.
struct PuiseuxSeries {
    long e = 1;
    long n0 = 0;
    std::vector<ScalarElem> coeffs;
    bool exact = false;

    long known_until() const {
        return exact ? kSeriesUnbounded : n0 + static_cast<long>(coeffs.size());
    }
    bool is_exact_zero() const { return exact && coeffs.empty(); }
    /// Leading term determined: either a nonzero first stored coefficient or
    /// certified zero.
    bool resolved() const;
    /// Leading exponent. Requires resolved() and not exact zero.
    long ord() const;
    const ScalarElem& leading() const;
};

/// Exact monomial c * u^exponent.
PuiseuxSeries series_term(const ScalarElem& c, long exponent, long e);
PuiseuxSeries series_zero(long e);

/// Drop leading coefficients that are exactly zero.
PuiseuxSeries series_normalize(const PuiseuxSeries& s);

PuiseuxSeries series_neg(const PuiseuxSeries& s);
PuiseuxSeries series_add(const ScalarTower& K, const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries series_sub(const ScalarTower& K, const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries series_mul(const ScalarTower& K, const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries series_scale(const ScalarTower& K, const PuiseuxSeries& a, const ScalarElem& s);

/// Restrict the known window to `len` terms past the leading exponent.
PuiseuxSeries series_truncate(const PuiseuxSeries& s, long len);

/// Reciprocal, `len` terms. Requires a resolved nonzero leading term.
PuiseuxSeries series_inv(const ScalarTower& K, const PuiseuxSeries& s, long len);

/// Square root via the binomial series. Throws NeedsExtension when the leading
/// exponent is odd or the leading coefficient is not a square in the tower.
/// Sign convention: leading coefficient is the canonical tower square root.
/// `len` caps the produced term count (-1: follow the input window, or 8 terms
/// for exact inputs with an infinite tail).
PuiseuxSeries series_sqrt(const ScalarTower& K, const PuiseuxSeries& s, long len = -1);

/// Reinterpret at ramification e*m (exponents scale by m).
PuiseuxSeries series_rescale(const PuiseuxSeries& s, long m);

/// Substitute u -> gamma * u (used to renormalize after ramification so the
/// expansion of t keeps a prescribed leading coefficient).
PuiseuxSeries series_subst_scaled(const ScalarTower& K, const PuiseuxSeries& s,
                                  const ScalarElem& gamma);

}  // namespace preim
