#include "preim/arith.hpp"

#include <algorithm>
#include <cmath>

#include "preim/errors.hpp"

namespace preim {

const Rational& ProjPoint::value() const {
    if (!finite_) throw std::logic_error("ProjPoint::value on infinity");
    return value_;
}

PrimeSet::PrimeSet(std::vector<BigInt> primes, bool includes_archimedean)
    : primes_(std::move(primes)), includes_archimedean_(includes_archimedean) {
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
}

bool PrimeSet::contains(const BigInt& p) const {
    return std::binary_search(primes_.begin(), primes_.end(), p);
}

Valuation padic_ord(const Rational& x, const BigInt& p) {
    if (!is_prime(p)) throw InvalidPrime("padic_ord: " + p.get_str() + " is not prime");
    if (is_zero(x)) return Valuation::plus_infinity();
    long v = 0;
    BigInt num = x.get_num();
    while (mpz_divisible_p(num.get_mpz_t(), p.get_mpz_t())) {
        num /= p;
        ++v;
    }
    if (v > 0) return Valuation::finite(v);
    BigInt den = x.get_den();
    while (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t())) {
        den /= p;
        --v;
    }
    return Valuation::finite(v);
}

PrimeSet denominator_primes(const Rational& x) {
    if (is_zero(x)) return PrimeSet({}, false);
    BigInt den = x.get_den();
    std::vector<BigInt> primes;
    if (den > 1)
        for (const auto& [p, e] : factorize(den)) primes.push_back(p);
    return PrimeSet(std::move(primes), false);
}

double weil_height(const Rational& x) {
    BigInt m = std::max(BigInt(abs(x.get_num())), x.get_den());
    return m == 0 ? 0.0 : log_bigint(m);
}

double weil_height(const ProjPoint& P) {
    if (P.is_infinity()) return 0.0;
    if (is_zero(P.value())) return 0.0;
    return weil_height(P.value());
}

bool is_s_unit(const Rational& x, const PrimeSet& S) {
    if (is_zero(x)) return false;
    auto strip = [&](BigInt n) {
        n = abs(n);
        for (const auto& p : S.primes())
            while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) n /= p;
        return n;
    };
    return strip(x.get_num()) == 1 && strip(x.get_den()) == 1;
}

bool is_s_integer(const Rational& x, const PrimeSet& S) {
    if (is_zero(x)) return true;
    BigInt den = x.get_den();
    for (const auto& p : S.primes())
        while (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t())) den /= p;
    return den == 1;
}

}  // namespace preim
