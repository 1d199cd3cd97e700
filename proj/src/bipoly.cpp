#include "preim/bipoly.hpp"

#include <sstream>

#include "preim/ratfun.hpp"

namespace preim {

BiPoly BiPoly::constant(const Rational& v) {
    BiPoly p;
    p.set(0, 0, v);
    return p;
}

BiPoly BiPoly::x() {
    BiPoly p;
    p.set(1, 0, Rational(1));
    return p;
}

BiPoly BiPoly::t() {
    BiPoly p;
    p.set(0, 1, Rational(1));
    return p;
}

BiPoly BiPoly::from_t_poly(const Poly& p) {
    BiPoly b;
    for (long i = 0; i <= p.degree(); ++i) b.set(0, i, p.coeff(static_cast<std::size_t>(i)));
    return b;
}

BiPoly BiPoly::from_x_poly(const Poly& p) {
    BiPoly b;
    for (long i = 0; i <= p.degree(); ++i) b.set(i, 0, p.coeff(static_cast<std::size_t>(i)));
    return b;
}

long BiPoly::deg_x() const {
    long d = -1;
    for (const auto& [k, v] : terms_) d = std::max(d, k.first);
    return d;
}

long BiPoly::deg_t() const {
    long d = -1;
    for (const auto& [k, v] : terms_) d = std::max(d, k.second);
    return d;
}

Rational BiPoly::coeff(long dx, long dt) const {
    auto it = terms_.find({dx, dt});
    return it == terms_.end() ? Rational(0) : it->second;
}

void BiPoly::set(long dx, long dt, const Rational& v) {
    if (preim::is_zero(v))
        terms_.erase({dx, dt});
    else
        terms_[{dx, dt}] = v;
}

BiPoly BiPoly::operator-() const {
    BiPoly r = *this;
    for (auto& [k, v] : r.terms_) v = -v;
    return r;
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    BiPoly r = a;
    for (const auto& [k, v] : b.terms_) {
        auto it = r.terms_.find(k);
        if (it == r.terms_.end()) {
            r.terms_[k] = v;
        } else {
            it->second += v;
            if (is_zero(it->second)) r.terms_.erase(it);
        }
    }
    return r;
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + (-b); }

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (const auto& [ka, va] : a.terms_)
        for (const auto& [kb, vb] : b.terms_) {
            BiPoly::Key k{ka.first + kb.first, ka.second + kb.second};
            auto it = r.terms_.find(k);
            if (it == r.terms_.end()) {
                r.terms_[k] = va * vb;
            } else {
                it->second += va * vb;
                if (is_zero(it->second)) r.terms_.erase(it);
            }
        }
    return r;
}

BiPoly operator*(const BiPoly& a, const Rational& s) {
    if (is_zero(s)) return BiPoly();
    BiPoly r = a;
    for (auto& [k, v] : r.terms_) v *= s;
    return r;
}

BiPoly BiPoly::pow(unsigned n) const {
    BiPoly r = constant(Rational(1)), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

Poly BiPoly::eval_t(const Rational& t0) const {
    long dx = deg_x();
    if (dx < 0) return Poly();
    std::vector<Rational> c(static_cast<std::size_t>(dx) + 1, Rational(0));
    for (const auto& [k, v] : terms_) {
        Rational tp(1);
        for (long i = 0; i < k.second; ++i) tp *= t0;
        c[static_cast<std::size_t>(k.first)] += v * tp;
    }
    return Poly(std::move(c));
}

Poly BiPoly::eval_x(const Rational& x0) const {
    long dt = deg_t();
    if (dt < 0) return Poly();
    std::vector<Rational> c(static_cast<std::size_t>(dt) + 1, Rational(0));
    for (const auto& [k, v] : terms_) {
        Rational xp(1);
        for (long i = 0; i < k.first; ++i) xp *= x0;
        c[static_cast<std::size_t>(k.second)] += v * xp;
    }
    return Poly(std::move(c));
}

Rational BiPoly::eval(const Rational& x0, const Rational& t0) const {
    return eval_t(t0).eval(x0);
}

std::vector<Poly> BiPoly::x_coefficients() const {
    long dx = deg_x();
    std::vector<Poly> out;
    if (dx < 0) return out;
    long dt = deg_t();
    std::vector<std::vector<Rational>> rows(
        static_cast<std::size_t>(dx) + 1,
        std::vector<Rational>(static_cast<std::size_t>(dt) + 1, Rational(0)));
    for (const auto& [k, v] : terms_)
        rows[static_cast<std::size_t>(k.first)][static_cast<std::size_t>(k.second)] = v;
    for (auto& r : rows) out.emplace_back(std::move(r));
    return out;
}

BiPoly BiPoly::from_x_coefficients(const std::vector<Poly>& coeffs) {
    BiPoly r;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        for (long j = 0; j <= coeffs[i].degree(); ++j)
            r.set(static_cast<long>(i), j, coeffs[i].coeff(static_cast<std::size_t>(j)));
    return r;
}

BiPoly BiPoly::primitive() const {
    if (is_zero()) return *this;
    BigInt den(1);
    for (const auto& [k, v] : terms_)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
    BigInt content(0);
    for (const auto& [k, v] : terms_) {
        BigInt t = v.get_num() * (den / v.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), t.get_mpz_t());
    }
    Rational scale(content, den);
    scale.canonicalize();
    if (sgn(terms_.rbegin()->second) < 0) scale = -scale;
    return *this * (Rational(1) / scale);
}

std::string BiPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [k, v] = *it;
        if (!first) os << (sgn(v) < 0 ? " - " : " + ");
        else if (sgn(v) < 0) os << "-";
        Rational a = abs(v);
        bool unit = (a == 1) && (k.first > 0 || k.second > 0);
        if (!unit) os << a.get_str();
        if (k.first > 0) {
            os << "x";
            if (k.first > 1) os << "^" << k.first;
        }
        if (k.second > 0) {
            os << "t";
            if (k.second > 1) os << "^" << k.second;
        }
        first = false;
    }
    return os.str();
}

BiPoly bipoly_gcd_x(const BiPoly& a, const BiPoly& b) {
    auto lift = [](const BiPoly& p) {
        std::vector<RatFun> c;
        for (const auto& q : p.x_coefficients()) c.emplace_back(q);
        return PolyT<RatFun>(std::move(c));
    };
    PolyT<RatFun> g = poly_gcd(lift(a), lift(b));
    // clear denominators back to a primitive BiPoly
    Poly den = Poly::constant(Rational(1));
    for (const auto& c : g.coeffs()) den = den * c.den();
    std::vector<Poly> cleared;
    for (const auto& c : g.coeffs()) cleared.push_back(c.num() * den.divmod(c.den()).first);
    return BiPoly::from_x_coefficients(cleared).primitive();
}

}  // namespace preim
