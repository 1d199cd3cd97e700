#include "preim/ratfun.hpp"

#include <stdexcept>

namespace preim {

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("RatFun: zero denominator");
    if (num_.is_zero()) {
        den_ = Poly::constant(Rational(1));
        return;
    }
    Poly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_.divmod(g).first;
        den_ = den_.divmod(g).first;
    }
    Rational lc = den_.leading();
    if (lc != 1) {
        Rational inv = Rational(1) / lc;
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

RatFun RatFun::operator-() const {
    RatFun r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

RatFun operator*(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.num_, a.den_ * b.den_);
}

RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw std::domain_error("RatFun: division by zero");
    return RatFun(a.num_ * b.den_, a.den_ * b.num_);
}

std::optional<Rational> RatFun::eval(const Rational& t0) const {
    Rational d = den_.eval(t0);
    if (preim::is_zero(d)) return std::nullopt;
    return num_.eval(t0) / d;
}

std::string RatFun::to_string() const {
    if (is_polynomial()) return poly_to_string(num_, "t");
    return "(" + poly_to_string(num_, "t") + ")/(" + poly_to_string(den_, "t") + ")";
}

std::optional<RatFun> ratfun_sqrt(const RatFun& f) {
    if (f.is_zero()) return RatFun();
    // f = lc * monic(num)/monic(den); square iff both monic parts are squares
    // and lc is a rational square (num, den coprime).
    auto sn = poly_sqrt(f.num() * (Rational(1) / f.num().leading()));
    if (!sn) return std::nullopt;
    auto sd = poly_sqrt(f.den());  // den is monic already
    if (!sd) return std::nullopt;
    auto lc = rational_sqrt(f.num().leading());
    if (!lc) return std::nullopt;
    return RatFun(*sn * *lc, *sd);
}

}  // namespace preim
