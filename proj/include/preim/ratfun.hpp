#pragma once

#include <optional>
#include <string>

#include "preim/poly.hpp"

namespace preim {

/// Element of Q(t): reduced ratio of polynomials, monic denominator.
class RatFun {
public:
    RatFun() : num_(), den_(Poly::constant(Rational(1))) {}
    RatFun(int v) : RatFun(Rational(v)) {}  // NOLINT: field-from-int conversions
    explicit RatFun(const Rational& v) : num_(Poly::constant(v)), den_(Poly::constant(Rational(1))) {
        if (preim::is_zero(v)) num_ = Poly();
    }
    explicit RatFun(Poly p) : num_(std::move(p)), den_(Poly::constant(Rational(1))) {}
    RatFun(Poly num, Poly den);

    static RatFun t() { return RatFun(Poly::x()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    RatFun operator-() const;
    friend RatFun operator+(const RatFun& a, const RatFun& b);
    friend RatFun operator-(const RatFun& a, const RatFun& b);
    friend RatFun operator*(const RatFun& a, const RatFun& b);
    friend RatFun operator/(const RatFun& a, const RatFun& b);
    bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFun& o) const { return !(*this == o); }

    std::optional<Rational> eval(const Rational& t0) const;  // nullopt at a pole

    std::string to_string() const;

private:
    Poly num_, den_;
};

/// Square root in Q(t) if one exists. Canonical: positive leading coefficient
/// of the numerator.
std::optional<RatFun> ratfun_sqrt(const RatFun& f);

}  // namespace preim
