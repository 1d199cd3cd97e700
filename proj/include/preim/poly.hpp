#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "preim/numbers.hpp"

namespace preim {

/// Dense univariate polynomial over a field F, coefficients lowest degree first.
/// Invariant: leading coefficient nonzero unless the zero polynomial (empty).
template <class F>
class PolyT {
public:
    PolyT() = default;
    explicit PolyT(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }
    static PolyT constant(F v) { return PolyT(std::vector<F>{std::move(v)}); }
    static PolyT x() { return PolyT(std::vector<F>{F(0), F(1)}); }
    static PolyT monomial(std::size_t deg, F v = F(1)) {
        std::vector<F> c(deg + 1, F(0));
        c[deg] = std::move(v);
        return PolyT(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
    const std::vector<F>& coeffs() const { return c_; }
    F coeff(std::size_t i) const { return i < c_.size() ? c_[i] : F(0); }
    const F& leading() const {
        if (c_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    F eval(const F& x) const {
        F acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    PolyT operator-() const {
        PolyT r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }

    friend PolyT operator+(const PolyT& a, const PolyT& b) {
        std::vector<F> c(std::max(a.c_.size(), b.c_.size()), F(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
        return PolyT(std::move(c));
    }
    friend PolyT operator-(const PolyT& a, const PolyT& b) { return a + (-b); }
    friend PolyT operator*(const PolyT& a, const PolyT& b) {
        if (a.is_zero() || b.is_zero()) return PolyT();
        std::vector<F> c(a.c_.size() + b.c_.size() - 1, F(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        return PolyT(std::move(c));
    }
    friend PolyT operator*(const PolyT& a, const F& s) {
        PolyT r = a;
        for (auto& v : r.c_) v = v * s;
        r.trim();
        return r;
    }
    friend PolyT operator*(const F& s, const PolyT& a) { return a * s; }

    bool operator==(const PolyT& o) const { return c_ == o.c_; }
    bool operator!=(const PolyT& o) const { return !(*this == o); }

    PolyT derivative() const {
        if (c_.size() <= 1) return PolyT();
        std::vector<F> c(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * F(static_cast<int>(i));
        return PolyT(std::move(c));
    }

    /// Euclidean division: *this = q*d + r with deg r < deg d.
    std::pair<PolyT, PolyT> divmod(const PolyT& d) const {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        PolyT r = *this;
        std::vector<F> q;
        long dd = d.degree();
        if (r.degree() >= dd) q.assign(r.degree() - dd + 1, F(0));
        while (!r.is_zero() && r.degree() >= dd) {
            F f = r.leading() / d.leading();
            long shift = r.degree() - dd;
            q[shift] = f;
            for (long i = 0; i <= dd; ++i)
                r.c_[shift + i] = r.c_[shift + i] - f * d.c_[i];
            r.trim();
        }
        return {PolyT(std::move(q)), r};
    }

    PolyT pow(unsigned n) const {
        PolyT r = constant(F(1)), b = *this;
        while (n) {
            if (n & 1) r = r * b;
            b = b * b;
            n >>= 1;
        }
        return r;
    }

    /// Substitution: this(g).
    PolyT compose(const PolyT& g) const {
        PolyT acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * g + constant(*it);
        return acc;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == F(0)) c_.pop_back();
    }
    std::vector<F> c_;
};

using Poly = PolyT<Rational>;

template <class F>
PolyT<F> poly_gcd(PolyT<F> a, PolyT<F> b) {
    while (!b.is_zero()) {
        auto [q, r] = a.divmod(b);
        a = b;
        b = r;
    }
    if (!a.is_zero()) {
        F inv = F(1) / a.leading();
        a = a * inv;  // monic normalization
    }
    return a;
}

/// Exact determinant of a square rational matrix.
Rational matrix_det(std::vector<std::vector<Rational>> m);

/// Sylvester-matrix resultant with respect to declared degrees df >= deg f, dg >= deg g.
Rational resultant(const Poly& f, const Poly& g, long df, long dg);
Rational resultant(const Poly& f, const Poly& g);

/// Clears denominators and divides by integer content; returns (primitive integer
/// polynomial, scale) with f = scale * primitive. Sign: primitive leading coeff > 0.
std::pair<Poly, Rational> integer_primitive(const Poly& f);

/// All rational roots with multiplicity. Throws std::domain_error on the zero polynomial.
std::vector<Rational> rational_roots(const Poly& f);

/// Exact polynomial square root over Q, if any (canonical: positive leading coefficient).
std::optional<Poly> poly_sqrt(const Poly& f);

std::string poly_to_string(const Poly& f, const std::string& var);

}  // namespace preim
