#include "preim/series.hpp"

#include <algorithm>
#include <stdexcept>

#include "preim/errors.hpp"

namespace preim {

std::vector<Rational> sqrt_binomial_coeffs(unsigned n) {
    std::vector<Rational> out;
    out.reserve(n + 1);
    Rational c(1);
    out.push_back(c);
    for (unsigned i = 1; i <= n; ++i) {
        // binom(1/2,i) = binom(1/2,i-1) * (1/2 - (i-1)) / i
        c *= make_rational(3 - 2 * static_cast<long>(i), 2 * static_cast<long>(i));
        out.push_back(c);
    }
    return out;
}

namespace {

bool scalar_zero(const ScalarElem& v) { return ScalarTower::elem_is_zero(v); }

ScalarElem scalar_pow(const ScalarTower& K, ScalarElem base, long n) {
    if (n < 0) {
        base = K.inv(base);
        n = -n;
    }
    ScalarElem r = K.constant(Rational(1));
    while (n) {
        if (n & 1) r = K.mul(r, base);
        base = K.mul(base, base);
        n >>= 1;
    }
    return r;
}

}  // namespace

bool PuiseuxSeries::resolved() const {
    if (is_exact_zero()) return true;
    return !coeffs.empty() && !scalar_zero(coeffs.front());
}

long PuiseuxSeries::ord() const {
    if (!resolved() || is_exact_zero())
        throw std::logic_error("PuiseuxSeries::ord: leading term not determined");
    return n0;
}

const ScalarElem& PuiseuxSeries::leading() const {
    if (!resolved() || is_exact_zero())
        throw std::logic_error("PuiseuxSeries::leading: leading term not determined");
    return coeffs.front();
}

PuiseuxSeries series_term(const ScalarElem& c, long exponent, long e) {
    PuiseuxSeries s;
    s.e = e;
    s.exact = true;
    if (!scalar_zero(c)) {
        s.n0 = exponent;
        s.coeffs.push_back(c);
    }
    return s;
}

PuiseuxSeries series_zero(long e) {
    PuiseuxSeries s;
    s.e = e;
    s.exact = true;
    return s;
}

PuiseuxSeries series_normalize(const PuiseuxSeries& s) {
    PuiseuxSeries r = s;
    std::size_t drop = 0;
    while (drop < r.coeffs.size() && scalar_zero(r.coeffs[drop])) ++drop;
    if (drop) {
        r.coeffs.erase(r.coeffs.begin(), r.coeffs.begin() + static_cast<long>(drop));
        r.n0 += static_cast<long>(drop);
    }
    if (r.coeffs.empty() && r.exact) r.n0 = 0;
    return r;
}

PuiseuxSeries series_neg(const PuiseuxSeries& s) {
    PuiseuxSeries r = s;
    for (auto& c : r.coeffs)
        for (auto& v : c) v = -v;
    return r;
}

PuiseuxSeries series_add(const ScalarTower& K, const PuiseuxSeries& a, const PuiseuxSeries& b) {
    if (a.e != b.e) throw std::logic_error("series_add: ramification mismatch");
    if (a.is_exact_zero()) return series_normalize(b);
    if (b.is_exact_zero()) return series_normalize(a);
    PuiseuxSeries r;
    r.e = a.e;
    r.exact = a.exact && b.exact;
    long start = std::min(a.n0, b.n0);
    long end = std::min(a.known_until(), b.known_until());
    if (r.exact)
        end = std::max(a.n0 + static_cast<long>(a.coeffs.size()),
                       b.n0 + static_cast<long>(b.coeffs.size()));
    if (end <= start) {
        r.n0 = start;
        return r;  // empty known window
    }
    r.n0 = start;
    r.coeffs.assign(static_cast<std::size_t>(end - start), K.zero());
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        long k = a.n0 + static_cast<long>(i);
        if (k < end) r.coeffs[static_cast<std::size_t>(k - start)] = a.coeffs[i];
    }
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) {
        long k = b.n0 + static_cast<long>(i);
        if (k < end) {
            auto& slot = r.coeffs[static_cast<std::size_t>(k - start)];
            slot = K.add(slot, b.coeffs[i]);
        }
    }
    return series_normalize(r);
}

PuiseuxSeries series_sub(const ScalarTower& K, const PuiseuxSeries& a, const PuiseuxSeries& b) {
    return series_add(K, a, series_neg(b));
}

PuiseuxSeries series_mul(const ScalarTower& K, const PuiseuxSeries& a, const PuiseuxSeries& b) {
    if (a.e != b.e) throw std::logic_error("series_mul: ramification mismatch");
    if (a.is_exact_zero() || b.is_exact_zero()) return series_zero(a.e);
    PuiseuxSeries r;
    r.e = a.e;
    r.exact = a.exact && b.exact;
    r.n0 = a.n0 + b.n0;
    long end;
    if (r.exact)
        end = r.n0 + static_cast<long>(a.coeffs.size() + b.coeffs.size()) - 1;
    else
        end = std::min(a.n0 + b.known_until(), b.n0 + a.known_until());
    if (end <= r.n0) return r;
    r.coeffs.assign(static_cast<std::size_t>(end - r.n0), K.zero());
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
            long k = a.n0 + static_cast<long>(i) + b.n0 + static_cast<long>(j);
            if (k >= end) break;
            auto& slot = r.coeffs[static_cast<std::size_t>(k - r.n0)];
            slot = K.add(slot, K.mul(a.coeffs[i], b.coeffs[j]));
        }
    return series_normalize(r);
}

PuiseuxSeries series_scale(const ScalarTower& K, const PuiseuxSeries& a, const ScalarElem& s) {
    if (scalar_zero(s)) return series_zero(a.e);
    PuiseuxSeries r = a;
    for (auto& c : r.coeffs) c = K.mul(c, s);
    return series_normalize(r);
}

PuiseuxSeries series_truncate(const PuiseuxSeries& s, long len) {
    PuiseuxSeries r = s;
    if (static_cast<long>(r.coeffs.size()) > len) {
        r.coeffs.resize(static_cast<std::size_t>(std::max<long>(len, 0)));
        r.exact = false;
    }
    return r;
}

PuiseuxSeries series_inv(const ScalarTower& K, const PuiseuxSeries& s_in, long len) {
    PuiseuxSeries s = series_normalize(s_in);
    if (!s.resolved() || s.is_exact_zero())
        throw std::domain_error("series_inv: leading term not determined or zero");
    if (!s.exact) len = std::min(len, s.known_until() - s.n0);
    ScalarElem c0i = K.inv(s.coeffs.front());
    PuiseuxSeries r;
    r.e = s.e;
    r.n0 = -s.n0;
    r.exact = s.exact && s.coeffs.size() == 1;
    r.coeffs.assign(static_cast<std::size_t>(std::max<long>(len, 1)), K.zero());
    r.coeffs[0] = c0i;
    for (std::size_t k = 1; k < r.coeffs.size(); ++k) {
        ScalarElem acc = K.zero();
        for (std::size_t j = 1; j <= k && j < s.coeffs.size(); ++j)
            acc = K.add(acc, K.mul(s.coeffs[j], r.coeffs[k - j]));
        r.coeffs[k] = K.neg(K.mul(c0i, acc));
    }
    if (r.exact) r.coeffs.resize(1);
    return r;
}

PuiseuxSeries series_sqrt(const ScalarTower& K, const PuiseuxSeries& s_in, long len) {
    PuiseuxSeries s = series_normalize(s_in);
    if (s.is_exact_zero()) return series_zero(s.e);
    if (!s.resolved())
        throw PrecisionExhausted("series_sqrt: leading term not determined");
    if (((s.n0 % 2) + 2) % 2 != 0)
        throw NeedsExtension(NeedsExtension::Kind::OddExponent,
                             "series_sqrt: odd leading exponent");
    auto c0r = K.is_square(s.coeffs.front());
    if (!c0r)
        throw NeedsExtension(NeedsExtension::Kind::NonSquareCoefficient,
                             "series_sqrt: leading coefficient is not a square");
    long window = s.exact ? static_cast<long>(s.coeffs.size())
                          : s.known_until() - s.n0;
    if (len < 0) len = s.exact && s.coeffs.size() > 1 ? std::max<long>(window, 8) : window;
    // h_j = c_{n0+j} / c_{n0}, j >= 1; result = sqrt(c0) u^{n0/2} * F(h)
    ScalarElem c0i = K.inv(s.coeffs.front());
    std::vector<ScalarElem> h(static_cast<std::size_t>(len), K.zero());
    for (std::size_t j = 1; j < s.coeffs.size() && j < h.size(); ++j)
        h[j] = K.mul(s.coeffs[j], c0i);
    bool h_zero = true;
    for (const auto& v : h)
        if (!scalar_zero(v)) h_zero = false;
    auto bin = sqrt_binomial_coeffs(static_cast<unsigned>(len));
    std::vector<ScalarElem> acc(static_cast<std::size_t>(len), K.zero());
    std::vector<ScalarElem> pw(static_cast<std::size_t>(len), K.zero());
    pw[0] = K.constant(Rational(1));
    for (long i = 0; i < len; ++i) {
        ScalarElem bi = K.constant(bin[static_cast<std::size_t>(i)]);
        bool pw_zero = true;
        for (std::size_t k = 0; k < acc.size(); ++k) {
            if (scalar_zero(pw[k])) continue;
            pw_zero = false;
            acc[k] = K.add(acc[k], K.mul(bi, pw[k]));
        }
        if (pw_zero) break;
        if (i + 1 < len) {
            // pw *= h, truncated
            std::vector<ScalarElem> next(pw.size(), K.zero());
            for (std::size_t a = 0; a < pw.size(); ++a) {
                if (scalar_zero(pw[a])) continue;
                for (std::size_t b = 1; b < h.size() && a + b < next.size(); ++b) {
                    if (scalar_zero(h[b])) continue;
                    next[a + b] = K.add(next[a + b], K.mul(pw[a], h[b]));
                }
            }
            pw = std::move(next);
        }
    }
    PuiseuxSeries r;
    r.e = s.e;
    r.n0 = s.n0 / 2;
    r.exact = s.exact && h_zero;
    for (auto& v : acc) r.coeffs.push_back(K.mul(*c0r, v));
    if (r.exact) r.coeffs.resize(1);
    return series_normalize(r);
}

PuiseuxSeries series_rescale(const PuiseuxSeries& s, long m) {
    if (m <= 0) throw std::logic_error("series_rescale: nonpositive factor");
    if (m == 1) return s;
    PuiseuxSeries r;
    r.e = s.e * m;
    r.n0 = s.n0 * m;
    r.exact = s.exact;
    if (!s.coeffs.empty()) {
        r.coeffs.assign(static_cast<std::size_t>(s.coeffs.size() - 1) * m + 1,
                        std::vector<Rational>{Rational(0)});
        for (std::size_t i = 0; i < s.coeffs.size(); ++i) r.coeffs[i * m] = s.coeffs[i];
        if (!s.exact) {
            // window end scales too: pad so known_until = (old known_until) * m
            long want = s.known_until() * m - r.n0;
            r.coeffs.resize(static_cast<std::size_t>(want), std::vector<Rational>{Rational(0)});
        }
    }
    return r;
}

PuiseuxSeries series_subst_scaled(const ScalarTower& K, const PuiseuxSeries& s,
                                  const ScalarElem& gamma) {
    PuiseuxSeries r = s;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
        long k = r.n0 + static_cast<long>(i);
        r.coeffs[i] = K.mul(r.coeffs[i], scalar_pow(K, gamma, k));
    }
    return series_normalize(r);
}

}  // namespace preim
