#include "preim/poly.hpp"

#include <map>
#include <sstream>

namespace preim {

/// Determinant by Gaussian elimination over Q.
Rational matrix_det(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    Rational d(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && is_zero(m[piv][col])) ++piv;
        if (piv == n) return Rational(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            d = -d;
        }
        d *= m[col][col];
        Rational inv = Rational(1) / m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (is_zero(m[r][col])) continue;
            Rational f = m[r][col] * inv;
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return d;
}

Rational resultant(const Poly& f, const Poly& g, long df, long dg) {
    if (f.is_zero() && g.is_zero())
        throw std::domain_error("resultant: both polynomials zero");
    if (df < f.degree() || dg < g.degree())
        throw std::domain_error("resultant: declared degree below actual degree");
    if (df == 0 && dg == 0) return Rational(1);
    if (dg == 0) {
        Rational r(1);
        for (long i = 0; i < df; ++i) r *= g.coeff(0);
        return r;
    }
    if (df == 0) {
        Rational r(1);
        for (long i = 0; i < dg; ++i) r *= f.coeff(0);
        if ((static_cast<unsigned long>(df) * static_cast<unsigned long>(dg)) & 1) r = -r;
        return r;
    }
    const std::size_t n = static_cast<std::size_t>(df + dg);
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
    for (long row = 0; row < dg; ++row)
        for (long i = 0; i <= df; ++i) m[row][row + i] = f.coeff(static_cast<std::size_t>(df - i));
    for (long row = 0; row < df; ++row)
        for (long i = 0; i <= dg; ++i)
            m[dg + row][row + i] = g.coeff(static_cast<std::size_t>(dg - i));
    return matrix_det(std::move(m));
}

Rational resultant(const Poly& f, const Poly& g) {
    return resultant(f, g, std::max(f.degree(), 0L), std::max(g.degree(), 0L));
}

std::pair<Poly, Rational> integer_primitive(const Poly& f) {
    if (f.is_zero()) return {f, Rational(1)};
    BigInt den(1);
    for (const auto& c : f.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    BigInt content(0);
    for (const auto& c : f.coeffs()) {
        BigInt t = c.get_num() * (den / c.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), t.get_mpz_t());
    }
    Rational scale(content, den);
    scale.canonicalize();
    if (sgn(f.leading()) < 0) scale = -scale;
    Poly prim = f * (Rational(1) / scale);
    return {prim, scale};
}

std::vector<Rational> rational_roots(const Poly& f) {
    if (f.is_zero()) throw std::domain_error("rational_roots: zero polynomial");
    std::vector<Rational> roots;
    auto [g, scale] = integer_primitive(f);
    // strip trailing zero coefficients: roots at 0
    std::vector<Rational> c = g.coeffs();
    std::size_t low = 0;
    while (low < c.size() && is_zero(c[low])) ++low;
    for (std::size_t i = 0; i < low; ++i) roots.push_back(Rational(0));
    c.erase(c.begin(), c.begin() + static_cast<long>(low));
    Poly h((std::vector<Rational>(c)));
    while (h.degree() >= 1) {
        std::optional<Rational> root;
        if (h.degree() == 1) {
            root = -h.coeff(0) / h.coeff(1);
        } else if (h.degree() == 2) {
            // exact quadratic formula
            Rational a = h.coeff(2), b = h.coeff(1), cc = h.coeff(0);
            Rational disc = b * b - 4 * a * cc;
            auto s = rational_sqrt(disc);
            if (!s) break;
            root = (-b + *s) / (2 * a);
        } else {
            // rational root theorem: p | constant term, q | leading coefficient
            auto [hi, hscale] = integer_primitive(h);
            BigInt a0 = hi.coeff(0).get_num();
            BigInt an = hi.leading().get_num();
            if (a0 == 0) {
                root = Rational(0);
            } else {
                bool found = false;
                for (const auto& p : divisors(a0)) {
                    for (const auto& q : divisors(an)) {
                        for (int s = 0; s < 2 && !found; ++s) {
                            Rational cand(s ? BigInt(-p) : p, q);
                            cand.canonicalize();
                            if (is_zero(hi.eval(cand))) {
                                root = cand;
                                found = true;
                            }
                        }
                        if (found) break;
                    }
                    if (found) break;
                }
            }
        }
        if (!root) break;
        roots.push_back(*root);
        Poly lin({-*root, Rational(1)});
        auto [q, r] = h.divmod(lin);
        if (!r.is_zero()) throw std::logic_error("rational_roots: inexact deflation");
        h = q;
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::optional<Poly> poly_sqrt(const Poly& f) {
    if (f.is_zero()) return Poly();
    if (f.degree() % 2 != 0) return std::nullopt;
    auto lead = rational_sqrt(f.leading());
    if (!lead) return std::nullopt;
    long m = f.degree() / 2;
    std::vector<Rational> r(static_cast<std::size_t>(m) + 1, Rational(0));
    r[static_cast<std::size_t>(m)] = *lead;
    // match coefficients from the top down
    for (long k = m - 1; k >= 0; --k) {
        // coefficient of x^{m+k} in r^2: sum_{i+j=m+k} r_i r_j = 2 r_k r_m + (known)
        Rational known(0);
        for (long i = k + 1; i <= m - 1; ++i) {
            long j = m + k - i;
            if (j > m || j < 0) continue;
            known += r[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(j)];
        }
        r[static_cast<std::size_t>(k)] =
            (f.coeff(static_cast<std::size_t>(m + k)) - known) / (2 * *lead);
    }
    Poly cand{std::vector<Rational>(r)};
    if (cand * cand == f) return cand;
    return std::nullopt;
}

std::string poly_to_string(const Poly& f, const std::string& var) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = f.degree(); i >= 0; --i) {
        Rational c = f.coeff(static_cast<std::size_t>(i));
        if (is_zero(c)) continue;
        if (!first) os << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0) os << "-";
        Rational a = abs(c);
        bool unit = (a == 1) && i > 0;
        if (!unit) os << a.get_str();
        if (i > 0) {
            if (!unit) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

}  // namespace preim
