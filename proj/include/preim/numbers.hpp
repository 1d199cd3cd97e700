#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace preim {

using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline BigInt numerator(const Rational& q) { return q.get_num(); }
inline BigInt denominator(const Rational& q) { return q.get_den(); }

/// Truncated natural log of a positive big integer, accurate to ~1e-12 relative.
double log_bigint(const BigInt& n);

/// Floor square root; exact root detection.
BigInt isqrt(const BigInt& n);
bool is_perfect_square(const BigInt& n);

/// Exact square root of a rational if one exists (nonnegative root).
std::optional<Rational> rational_sqrt(const Rational& q);

/// Exact k-th root of a rational if one exists. For even k the nonnegative root.
std::optional<Rational> rational_kth_root(const Rational& q, unsigned k);

/// Primality via GMP's probabilistic test (exact for word-sized inputs).
bool is_prime(const BigInt& n);

/// Full factorization, smallest prime first. Trial division up to `trial_bound`
/// then Pollard rho on the cofactor.
std::vector<std::pair<BigInt, unsigned>> factorize(const BigInt& n,
                                                   unsigned long trial_bound = 100000);

/// All positive divisors of |n| (unordered).
std::vector<BigInt> divisors(const BigInt& n);

std::size_t hash_bigint(const BigInt& n);
std::size_t hash_rational(const Rational& q);

struct RationalHash {
    std::size_t operator()(const Rational& q) const { return hash_rational(q); }
};

}  // namespace preim
