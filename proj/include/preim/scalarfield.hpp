#pragma once

#include <memory>
#include <optional>

#include "preim/errors.hpp"
#include "preim/quadtower.hpp"

namespace preim {

/// Field-concept wrapper: an element of a shared scalar quadratic tower, usable
/// as the coefficient type of PolyT. A null tower means a plain rational.
class QuadTowerScalar {
public:
    QuadTowerScalar() : v_{Rational(0)} {}
    QuadTowerScalar(int n) : v_{Rational(n)} {}  // NOLINT: field-from-int conversions
    explicit QuadTowerScalar(Rational r) : v_{std::move(r)} {}
    QuadTowerScalar(std::shared_ptr<const ScalarTower> tower, ScalarElem v)
        : tower_(std::move(tower)), v_(std::move(v)) {}

    const ScalarElem& elem() const { return v_; }
    const std::shared_ptr<const ScalarTower>& tower_ptr() const { return tower_; }
    const ScalarTower& tower() const { return tower_ ? *tower_ : trivial_tower(); }

    bool is_zero() const { return ScalarTower::elem_is_zero(v_); }
    bool is_rational() const {
        for (std::size_t i = 1; i < v_.size(); ++i)
            if (!(v_[i] == Rational(0))) return false;
        return true;
    }
    Rational as_rational() const {
        if (!is_rational()) throw ExtensionUnsupported("value is not rational");
        return v_.empty() ? Rational(0) : v_[0];
    }

    QuadTowerScalar operator-() const {
        QuadTowerScalar r = *this;
        r.v_ = tower().neg(r.v_);
        return r;
    }
    friend QuadTowerScalar operator+(const QuadTowerScalar& a, const QuadTowerScalar& b) {
        auto [K, Kp] = join(a, b);
        return QuadTowerScalar(Kp, K->add(a.v_, b.v_));
    }
    friend QuadTowerScalar operator-(const QuadTowerScalar& a, const QuadTowerScalar& b) {
        auto [K, Kp] = join(a, b);
        return QuadTowerScalar(Kp, K->sub(a.v_, b.v_));
    }
    friend QuadTowerScalar operator*(const QuadTowerScalar& a, const QuadTowerScalar& b) {
        auto [K, Kp] = join(a, b);
        return QuadTowerScalar(Kp, K->mul(a.v_, b.v_));
    }
    friend QuadTowerScalar operator/(const QuadTowerScalar& a, const QuadTowerScalar& b) {
        auto [K, Kp] = join(a, b);
        return QuadTowerScalar(Kp, K->div(a.v_, b.v_));
    }
    bool operator==(const QuadTowerScalar& o) const {
        auto [K, Kp] = join(*this, o);
        (void)Kp;
        return K->equal(v_, o.v_);
    }
    bool operator!=(const QuadTowerScalar& o) const { return !(*this == o); }

    std::optional<QuadTowerScalar> sqrt() const {
        auto r = tower().is_square(v_);
        if (!r) return std::nullopt;
        return QuadTowerScalar(tower_, *r);
    }

private:
    static const ScalarTower& trivial_tower() {
        static const ScalarTower K;
        return K;
    }
    static std::pair<const ScalarTower*, std::shared_ptr<const ScalarTower>> join(
        const QuadTowerScalar& a, const QuadTowerScalar& b) {
        if (a.tower_ && b.tower_ && a.tower_ != b.tower_)
            throw ExtensionUnsupported("mixing elements of different towers");
        auto p = a.tower_ ? a.tower_ : b.tower_;
        return {p ? p.get() : &trivial_tower(), p};
    }

    std::shared_ptr<const ScalarTower> tower_;
    ScalarElem v_;
};

template <>
struct FieldOps<QuadTowerScalar> {
    static std::optional<QuadTowerScalar> sqrt(const QuadTowerScalar& v) { return v.sqrt(); }
    static int sign(const QuadTowerScalar& v) {
        for (const auto& c : v.elem()) {
            int s = sgn(c);
            if (s) return s;
        }
        return 0;
    }
};

}  // namespace preim
