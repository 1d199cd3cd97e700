#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "preim/numbers.hpp"
#include "preim/ratfun.hpp"

namespace preim {

template <class F>
struct FieldOps;

template <>
struct FieldOps<Rational> {
    static std::optional<Rational> sqrt(const Rational& v) { return rational_sqrt(v); }
    static int sign(const Rational& v) { return sgn(v); }
};

template <>
struct FieldOps<RatFun> {
    static std::optional<RatFun> sqrt(const RatFun& v) { return ratfun_sqrt(v); }
    static int sign(const RatFun& v) { return v.is_zero() ? 0 : sgn(v.num().leading()); }
};

/// Tower of quadratic extensions F(y_1)(y_2)...(y_L) with y_i^2 = g_i, where each
/// radicand g_i lives at level i-1 and is certified a non-square there. Elements
/// are multilinear coordinate vectors of length 2^level in the basis of products
/// of the y_i (bitmask indexing, y_i <-> bit i-1).
template <class F>
class QuadTower {
public:
    using Elem = std::vector<F>;

    QuadTower() = default;

    std::size_t levels() const { return radicands_.size(); }
    const std::vector<Elem>& radicands() const { return radicands_; }

    static std::size_t level_of(const Elem& e) {
        std::size_t l = 0;
        while ((std::size_t{1} << l) < e.size()) ++l;
        if ((std::size_t{1} << l) != e.size())
            throw std::logic_error("QuadTower: element size not a power of two");
        return l;
    }

    Elem constant(F v) const { return Elem{std::move(v)}; }
    Elem zero() const { return Elem{F(0)}; }

    /// The generator y_i (1-based) as an element at level i.
    Elem gen(std::size_t i) const {
        if (i == 0 || i > levels()) throw std::logic_error("QuadTower::gen: bad index");
        Elem e(std::size_t{1} << i, F(0));
        e[std::size_t{1} << (i - 1)] = F(1);
        return e;
    }

    static Elem lift(const Elem& e, std::size_t level) {
        std::size_t n = std::size_t{1} << level;
        if (e.size() > n) throw std::logic_error("QuadTower::lift: level too small");
        Elem r(n, F(0));
        for (std::size_t i = 0; i < e.size(); ++i) r[i] = e[i];
        return r;
    }

    static bool elem_is_zero(const Elem& e) {
        for (const auto& v : e)
            if (!(v == F(0))) return false;
        return true;
    }

    bool equal(const Elem& a, const Elem& b) const { return elem_is_zero(sub(a, b)); }

    Elem neg(const Elem& a) const {
        Elem r = a;
        for (auto& v : r) v = -v;
        return r;
    }

    Elem add(const Elem& a, const Elem& b) const {
        std::size_t l = std::max(level_of(a), level_of(b));
        Elem x = lift(a, l), y = lift(b, l);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = x[i] + y[i];
        return x;
    }

    Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

    Elem scale(const Elem& a, const F& s) const {
        Elem r = a;
        for (auto& v : r) v = v * s;
        return r;
    }

    Elem mul(const Elem& a, const Elem& b) const {
        std::size_t l = std::max(level_of(a), level_of(b));
        return mul_level(lift(a, l), lift(b, l), l);
    }

    Elem inv(const Elem& a) const {
        if (elem_is_zero(a)) throw std::domain_error("QuadTower: inverse of zero");
        return inv_level(a, level_of(a));
    }

    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

    /// Exact square root within the tower, if one exists. Canonical sign: the
    /// first nonzero coordinate has positive sign.
    std::optional<Elem> is_square(const Elem& a) const {
        auto r = sqrt_level(a, level_of(a));
        if (!r) return std::nullopt;
        return canonical_sign(*r);
    }

    /// Append a new level. Rejects zero radicands and radicands that are already
    /// squares (keeps the extension degree exactly 2^levels).
    void adjoin(const Elem& radicand) {
        if (elem_is_zero(radicand)) throw std::domain_error("QuadTower::adjoin: zero radicand");
        if (level_of(radicand) != levels())
            throw std::logic_error("QuadTower::adjoin: radicand must live at the top level");
        if (is_square(radicand))
            throw std::domain_error("QuadTower::adjoin: radicand is already a square");
        radicands_.push_back(radicand);
    }

    Elem canonical_sign(const Elem& e) const {
        for (const auto& v : e) {
            int s = FieldOps<F>::sign(v);
            if (s > 0) return e;
            if (s < 0) return neg(e);
        }
        return e;
    }

private:
    static std::pair<Elem, Elem> split(const Elem& e) {
        std::size_t h = e.size() / 2;
        return {Elem(e.begin(), e.begin() + static_cast<long>(h)),
                Elem(e.begin() + static_cast<long>(h), e.end())};
    }
    static Elem join(const Elem& lo, const Elem& hi) {
        Elem r = lo;
        r.insert(r.end(), hi.begin(), hi.end());
        return r;
    }

    Elem mul_level(const Elem& a, const Elem& b, std::size_t l) const {
        if (l == 0) return Elem{a[0] * b[0]};
        auto [a1, b1] = split(a);
        auto [a2, b2] = split(b);
        const Elem& g = radicands_[l - 1];
        Elem lo = add_raw(mul_level(a1, a2, l - 1),
                          mul_level(mul_level(b1, b2, l - 1), g, l - 1));
        Elem hi = add_raw(mul_level(a1, b2, l - 1), mul_level(a2, b1, l - 1));
        return join(lo, hi);
    }

    static Elem add_raw(Elem x, const Elem& y) {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = x[i] + y[i];
        return x;
    }

    Elem inv_level(const Elem& a, std::size_t l) const {
        if (l == 0) {
            if (a[0] == F(0)) throw std::domain_error("QuadTower: inverse of zero");
            return Elem{F(1) / a[0]};
        }
        auto [A, B] = split(a);
        const Elem& g = radicands_[l - 1];
        // (A + B y)^{-1} = (A - B y) / (A^2 - B^2 g)
        Elem norm = sub(mul_level(A, A, l - 1),
                        mul_level(mul_level(B, B, l - 1), g, l - 1));
        Elem ninv = inv_level(norm, l - 1);
        return join(mul_level(A, ninv, l - 1), mul_level(neg(B), ninv, l - 1));
    }

    std::optional<Elem> sqrt_level(const Elem& a, std::size_t l) const {
        if (elem_is_zero(a)) return zero();
        if (l == 0) {
            auto r = FieldOps<F>::sqrt(a[0]);
            if (!r) return std::nullopt;
            return Elem{*r};
        }
        auto [A, B] = split(a);
        const Elem& g = radicands_[l - 1];
        if (elem_is_zero(B)) {
            if (auto r = sqrt_level(A, l - 1)) return lift(*r, l);
            // A = (b y)^2 = b^2 g: try A / g
            Elem q = mul_level(A, inv_level(g, l - 1), l - 1);
            if (auto b = sqrt_level(q, l - 1)) {
                Elem r(std::size_t{1} << l, F(0));
                for (std::size_t i = 0; i < b->size(); ++i) r[b->size() + i] = (*b)[i];
                return r;
            }
            return std::nullopt;
        }
        // root = a0 + b0 y with a0^2 + b0^2 g = A and 2 a0 b0 = B, so
        // a0^2 = (A +- D)/2 with D = sqrt(A^2 - B^2 g) in the subtower.
        Elem disc = sub(mul_level(A, A, l - 1),
                        mul_level(mul_level(B, B, l - 1), g, l - 1));
        auto D = sqrt_level(disc, l - 1);
        if (!D) return std::nullopt;
        for (int s = 0; s < 2; ++s) {
            Elem half = scale(s == 0 ? add(A, *D) : sub(A, *D), F(1) / F(2));
            if (elem_is_zero(half)) continue;
            auto a0 = sqrt_level(half, l - 1);
            if (!a0 || elem_is_zero(*a0)) continue;
            Elem b0 = mul_level(B, inv_level(scale(*a0, F(2)), l - 1), l - 1);
            Elem root = join(*a0, b0);
            if (equal(mul_level(root, root, l), lift(a, l))) return root;
        }
        return std::nullopt;
    }

    std::vector<Elem> radicands_;
};

/// Scalar coefficient field built as a tower of adjoined square roots over Q.
using ScalarTower = QuadTower<Rational>;
using ScalarElem = ScalarTower::Elem;

/// Function-field tower over Q(t) (components of preimage curves live here).
using FuncTower = QuadTower<RatFun>;
using FuncElem = FuncTower::Elem;

inline std::optional<ScalarElem> scalar_is_square(const ScalarTower& tower, const ScalarElem& x) {
    return tower.is_square(x);
}

}  // namespace preim
