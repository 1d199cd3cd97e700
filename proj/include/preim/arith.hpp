#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "preim/numbers.hpp"

namespace preim {

/// A point of P^1(Q): a rational value or the point at infinity.
class ProjPoint {
public:
    ProjPoint() : finite_(true), value_(0) {}
    explicit ProjPoint(Rational v) : finite_(true), value_(std::move(v)) {}
    static ProjPoint infinity() {
        ProjPoint p;
        p.finite_ = false;
        p.value_ = 0;
        return p;
    }

    bool is_infinity() const { return !finite_; }
    bool is_finite() const { return finite_; }
    const Rational& value() const;

    bool operator==(const ProjPoint& o) const {
        if (finite_ != o.finite_) return false;
        return !finite_ || value_ == o.value_;
    }
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }

private:
    bool finite_;
    Rational value_;
};

struct ProjPointHash {
    std::size_t operator()(const ProjPoint& p) const {
        return p.is_infinity() ? 0x1d2e3f4a5b6c7d8eULL : hash_rational(p.value());
    }
};

/// A finite set of places of Q: rational primes, optionally the archimedean place.
class PrimeSet {
public:
    PrimeSet() = default;
    PrimeSet(std::vector<BigInt> primes, bool includes_archimedean = true);

    const std::vector<BigInt>& primes() const { return primes_; }
    bool includes_archimedean() const { return includes_archimedean_; }
    bool contains(const BigInt& p) const;
    std::size_t size() const { return primes_.size() + (includes_archimedean_ ? 1 : 0); }

    bool operator==(const PrimeSet& o) const {
        return primes_ == o.primes_ && includes_archimedean_ == o.includes_archimedean_;
    }

private:
    std::vector<BigInt> primes_;
    bool includes_archimedean_ = true;
};

/// p-adic order of a rational; +infinity sentinel for zero.
struct Valuation {
    bool infinite = false;
    long value = 0;

    static Valuation plus_infinity() { return {true, 0}; }
    static Valuation finite(long v) { return {false, v}; }
    bool operator==(const Valuation& o) const {
        return infinite == o.infinite && (infinite || value == o.value);
    }
};

/// Exponent of p in x. Throws InvalidPrime for non-prime p.
Valuation padic_ord(const Rational& x, const BigInt& p);

/// The set {p : padic_ord(x, p) < 0}; its size is s(x).
PrimeSet denominator_primes(const Rational& x);

/// log max(|p|, q) for x = p/q in lowest terms; 0 at infinity.
double weil_height(const ProjPoint& P);
double weil_height(const Rational& x);

/// True iff x != 0 and every prime of numerator and denominator lies in S.
bool is_s_unit(const Rational& x, const PrimeSet& S);

/// True iff x has no prime outside S in its denominator.
bool is_s_integer(const Rational& x, const PrimeSet& S);

}  // namespace preim
