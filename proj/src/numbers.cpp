#include "preim/numbers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace preim {

double log_bigint(const BigInt& n) {
    if (sgn(n) <= 0) throw std::domain_error("log_bigint: nonpositive argument");
    signed long exp2;
    double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

BigInt isqrt(const BigInt& n) {
    if (sgn(n) < 0) throw std::domain_error("isqrt: negative argument");
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_perfect_square(const BigInt& n) {
    if (sgn(n) < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    const BigInt num = q.get_num(), den = q.get_den();
    if (!is_perfect_square(num) || !is_perfect_square(den)) return std::nullopt;
    return Rational(isqrt(num), isqrt(den));
}

std::optional<Rational> rational_kth_root(const Rational& q, unsigned k) {
    if (k == 0) throw std::domain_error("rational_kth_root: k = 0");
    if (k == 1) return q;
    bool neg = sgn(q) < 0;
    if (neg && k % 2 == 0) return std::nullopt;
    BigInt num = abs(q.get_num()), den = q.get_den(), rn, rd;
    if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), k)) return std::nullopt;
    if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), k)) return std::nullopt;
    Rational r(neg ? BigInt(-rn) : rn, rd);
    r.canonicalize();
    return r;
}

bool is_prime(const BigInt& n) {
    if (sgn(n) <= 0) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

namespace {

BigInt pollard_rho(const BigInt& n) {
    // n odd composite, not a prime power of interest; returns a nontrivial factor.
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0x5eedUL);
    while (true) {
        BigInt c = rng.get_z_range(n - 3) + 1;
        BigInt x = rng.get_z_range(n - 2) + 2, y = x, d = 1;
        auto f = [&](const BigInt& v) { return BigInt((v * v + c) % n); };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            if (x == y) break;
            BigInt diff = abs(x - y);
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_rec(const BigInt& n, std::vector<BigInt>& primes) {
    if (n == 1) return;
    if (is_prime(n)) {
        primes.push_back(n);
        return;
    }
    if (is_perfect_square(n)) {
        BigInt r = isqrt(n);
        factor_rec(r, primes);
        factor_rec(r, primes);
        return;
    }
    BigInt d = pollard_rho(n);
    factor_rec(d, primes);
    factor_rec(n / d, primes);
}

}  // namespace

std::vector<std::pair<BigInt, unsigned>> factorize(const BigInt& n_in, unsigned long trial_bound) {
    BigInt n = abs(n_in);
    if (n == 0) throw std::domain_error("factorize: zero");
    std::vector<std::pair<BigInt, unsigned>> out;
    auto push = [&](const BigInt& p, unsigned e) {
        if (e > 0) out.emplace_back(p, e);
    };
    unsigned e = 0;
    while (mpz_even_p(n.get_mpz_t())) {
        n /= 2;
        ++e;
    }
    push(2, e);
    for (unsigned long p = 3; p <= trial_bound && BigInt(p) * p <= n; p += 2) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                ++e;
            }
            push(p, e);
        }
    }
    if (n > 1) {
        std::vector<BigInt> primes;
        factor_rec(n, primes);
        std::sort(primes.begin(), primes.end());
        for (std::size_t i = 0; i < primes.size();) {
            std::size_t j = i;
            while (j < primes.size() && primes[j] == primes[i]) ++j;
            push(primes[i], static_cast<unsigned>(j - i));
            i = j;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::vector<BigInt> divisors(const BigInt& n) {
    auto fac = factorize(n);
    std::vector<BigInt> out{1};
    for (const auto& [p, e] : fac) {
        std::size_t base = out.size();
        BigInt pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
        }
    }
    return out;
}

std::size_t hash_bigint(const BigInt& n) {
    unsigned long r = mpz_fdiv_ui(n.get_mpz_t(), 0xffffffffffc5UL);
    std::size_t h = static_cast<std::size_t>(r) * 0x9e3779b97f4a7c15ULL;
    return h ^ static_cast<std::size_t>(sgn(n) < 0 ? 0x55u : 0u);
}

std::size_t hash_rational(const Rational& q) {
    std::size_t h = hash_bigint(q.get_num());
    h ^= hash_bigint(q.get_den()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

}  // namespace preim
