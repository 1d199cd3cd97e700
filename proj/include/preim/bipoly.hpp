#pragma once

#include <map>
#include <string>
#include <utility>

#include "preim/poly.hpp"

namespace preim {

/// Sparse bivariate polynomial in (x, t) over Q. No explicit zeros stored.
class BiPoly {
public:
    using Key = std::pair<long, long>;  // (deg_x, deg_t)

    BiPoly() = default;
    static BiPoly constant(const Rational& v);
    static BiPoly x();
    static BiPoly t();
    /// Lift a polynomial in t (or in x) into the bivariate ring.
    static BiPoly from_t_poly(const Poly& p);
    static BiPoly from_x_poly(const Poly& p);

    bool is_zero() const { return terms_.empty(); }
    long deg_x() const;
    long deg_t() const;
    const std::map<Key, Rational>& terms() const { return terms_; }
    Rational coeff(long dx, long dt) const;
    void set(long dx, long dt, const Rational& v);

    BiPoly operator-() const;
    friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(const BiPoly& a, const Rational& s);
    bool operator==(const BiPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const BiPoly& o) const { return !(*this == o); }

    BiPoly pow(unsigned n) const;

    /// Substitute a numeric t; result is a polynomial in x.
    Poly eval_t(const Rational& t0) const;
    /// Substitute a numeric x; result is a polynomial in t.
    Poly eval_x(const Rational& x0) const;
    Rational eval(const Rational& x0, const Rational& t0) const;

    /// View as polynomial in x with Poly-in-t coefficients.
    std::vector<Poly> x_coefficients() const;
    static BiPoly from_x_coefficients(const std::vector<Poly>& coeffs);

    /// Divide by rational content (primitive integer form, positive content leader).
    BiPoly primitive() const;

    std::string to_string() const;

private:
    std::map<Key, Rational> terms_;
};

/// gcd of two polynomials-in-x with coefficients in Q(t), returned monic over Q(t),
/// then cleared to a primitive BiPoly.
BiPoly bipoly_gcd_x(const BiPoly& a, const BiPoly& b);

}  // namespace preim
