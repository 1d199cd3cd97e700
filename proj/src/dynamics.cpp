#include "preim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <unordered_map>

namespace preim {

namespace {

/// Homogeneous evaluation sum f_i A^i B^(deg-i) for f of declared degree deg.
template <class F>
PolyT<F> hom_eval(const PolyT<F>& f, long deg, const PolyT<F>& A, const PolyT<F>& B) {
    PolyT<F> acc;
    PolyT<F> bpow = PolyT<F>::constant(F(1));
    std::vector<PolyT<F>> bpows;
    for (long i = 0; i <= deg; ++i) {
        bpows.push_back(bpow);
        bpow = bpow * B;
    }
    PolyT<F> apow = PolyT<F>::constant(F(1));
    for (long i = 0; i <= deg; ++i) {
        F c = f.coeff(static_cast<std::size_t>(i));
        if (!(c == F(0))) acc = acc + apow * bpows[static_cast<std::size_t>(deg - i)] * c;
        apow = apow * A;
    }
    return acc;
}

/// Exact solve M v = rhs by Gaussian elimination; nullopt when singular.
std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> M,
                                                  std::vector<Rational> rhs) {
    std::size_t n = M.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && sgn(M[piv][col]) == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(M[piv], M[col]);
        std::swap(rhs[piv], rhs[col]);
        Rational inv = Rational(1) / M[col][col];
        for (std::size_t j = col; j < n; ++j) M[col][j] *= inv;
        rhs[col] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || sgn(M[r][col]) == 0) continue;
            Rational f = M[r][col];
            for (std::size_t j = col; j < n; ++j) M[r][j] -= f * M[col][j];
            rhs[r] -= f * rhs[col];
        }
    }
    return rhs;
}

}  // namespace

Moebius::Moebius(Rational a_, Rational b_, Rational c_, Rational d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    if (is_zero(a * d - b * c)) throw std::domain_error("Moebius: zero determinant");
}

Moebius Moebius::inverse() const { return Moebius(d, -b, -c, a); }

ProjPoint Moebius::apply(const ProjPoint& P) const {
    if (P.is_infinity()) {
        if (is_zero(c)) return ProjPoint::infinity();
        return ProjPoint(a / c);
    }
    Rational den = c * P.value() + d;
    if (is_zero(den)) return ProjPoint::infinity();
    return ProjPoint((a * P.value() + b) / den);
}

RatMap::RatMap(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.is_zero() && den_.is_zero())
        throw std::domain_error("RatMap: zero numerator and denominator");
    // joint integer-primitive form
    BigInt lcm(1);
    for (const auto& c : num_.coeffs())
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    for (const auto& c : den_.coeffs())
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    BigInt content(0);
    auto acc_content = [&](const Poly& p) {
        for (const auto& c : p.coeffs()) {
            BigInt t = c.get_num() * (lcm / c.get_den());
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), t.get_mpz_t());
        }
    };
    acc_content(num_);
    acc_content(den_);
    Rational scale = make_rational(lcm, content);
    if (!num_.is_zero() ? sgn(num_.leading() * scale) < 0 : sgn(den_.leading() * scale) < 0)
        scale = -scale;
    num_ = num_ * scale;
    den_ = den_ * scale;
    degree_ = std::max(num_.degree(), den_.degree());
    if (degree_ < 0) degree_ = 0;
    rho_ = resultant(num_, den_, degree_, degree_);
    if (is_zero(rho_))
        throw DegreeDrop("RatMap: vanishing resultant (common factor or degree collapse)");
}

ProjPoint evaluate(const RatMap& phi, const ProjPoint& P) {
    if (P.is_infinity()) {
        long dn = phi.num().degree(), dd = phi.den().degree();
        if (dn > dd) return ProjPoint::infinity();
        if (dn < dd) return ProjPoint(Rational(0));
        return ProjPoint(phi.num().leading() / phi.den().leading());
    }
    Rational d = phi.den().eval(P.value());
    if (is_zero(d)) return ProjPoint::infinity();
    return ProjPoint(phi.num().eval(P.value()) / d);
}

RatMap compose(const RatMap& outer, const RatMap& inner) {
    long d = outer.degree();
    Poly N = hom_eval(outer.num(), d, inner.num(), inner.den());
    Poly D = hom_eval(outer.den(), d, inner.num(), inner.den());
    return RatMap(N, D);
}

RatMap iterate(const RatMap& phi, unsigned N) {
    if (N == 0) return RatMap(Poly::x(), Poly::constant(Rational(1)));
    RatMap r = phi;
    for (unsigned i = 1; i < N; ++i) r = compose(phi, r);
    return r;
}

RatMap conjugate(const RatMap& phi, const Moebius& L) {
    // L o phi o L^-1
    Poly li_num(std::vector<Rational>{-L.b, L.d});
    Poly li_den(std::vector<Rational>{L.a, -L.c});
    long d = phi.degree();
    Poly N1 = hom_eval(phi.num(), d, li_num, li_den);
    Poly D1 = hom_eval(phi.den(), d, li_num, li_den);
    return RatMap(N1 * L.a + D1 * L.b, N1 * L.c + D1 * L.d);
}

DistortionData height_distortion(const RatMap& phi) {
    long d = phi.degree();
    DistortionData out;
    Rational sum(0);
    for (const auto& c : phi.num().coeffs()) sum += abs(c);
    for (const auto& c : phi.den().coeffs()) sum += abs(c);
    double C1 = sum > 1 ? log_bigint(sum.get_num()) - log_bigint(sum.get_den()) : 0.0;
    if (d == 0) {
        out.C = std::max(C1, 1.0);
        return out;
    }
    // cofactor identities p1*F + p2*G = x^(2d-1), q1*F + q2*G = y^(2d-1)
    // over the degree-d homogenizations; unknowns are the 2d coefficients of
    // each cofactor pair (degree d-1 forms).
    std::size_t n = static_cast<std::size_t>(2 * d);
    std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n, Rational(0)));
    for (long i = 0; i < d; ++i)
        for (long j = 0; j <= d; ++j) {
            long k = i + j;
            M[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] +=
                phi.num().coeff(static_cast<std::size_t>(j));
            M[static_cast<std::size_t>(k)][static_cast<std::size_t>(d + i)] +=
                phi.den().coeff(static_cast<std::size_t>(j));
        }
    std::vector<Rational> e_top(n, Rational(0)), e_bot(n, Rational(0));
    e_top[n - 1] = Rational(1);
    e_bot[0] = Rational(1);
    auto sol1 = solve_linear(M, e_top);
    auto sol2 = solve_linear(M, e_bot);
    if (!sol1 || !sol2)
        throw std::logic_error("height_distortion: singular system despite nonzero resultant");
    BigInt R(1);
    for (const auto& v : *sol1) mpz_lcm(R.get_mpz_t(), R.get_mpz_t(), v.get_den().get_mpz_t());
    for (const auto& v : *sol2) mpz_lcm(R.get_mpz_t(), R.get_mpz_t(), v.get_den().get_mpz_t());
    BigInt pmax(1);
    auto track = [&](const std::vector<Rational>& sol) {
        for (const auto& v : sol) {
            BigInt c = abs(v.get_num() * (R / v.get_den()));
            if (c > pmax) pmax = c;
        }
    };
    track(*sol1);
    track(*sol2);
    double C2 = log_bigint(BigInt(2 * d) * pmax);
    out.C = std::max({C1, C2, 1.0});
    out.bad_modulus = R;
    return out;
}

OrbitResult is_preperiodic(const RatMap& phi, const ProjPoint& P) {
    if (phi.degree() < 2) throw HypothesisViolated("is_preperiodic: degree < 2 required");
    DistortionData dd = height_distortion(phi);
    double bound = dd.C / static_cast<double>(phi.degree() - 1) + 1.0;
    OrbitResult res;
    std::unordered_map<ProjPoint, long, ProjPointHash> seen;
    ProjPoint cur = P;
    long i = 0;
    while (true) {
        auto it = seen.find(cur);
        if (it != seen.end()) {
            res.verdict = OrbitResult::Verdict::Preperiodic;
            res.tail = it->second;
            res.cycle_length = i - it->second;
            return res;
        }
        if (weil_height(cur) > bound) {
            res.verdict = OrbitResult::Verdict::Wandering;
            res.escape_index = i;
            return res;
        }
        seen.emplace(cur, i);
        res.orbit_prefix.push_back(cur);
        cur = evaluate(phi, cur);
        ++i;
    }
}

HeightInterval canonical_height(const RatMap& phi, const ProjPoint& P, double eps) {
    long d = phi.degree();
    if (d < 2) throw HypothesisViolated("canonical_height: degree < 2 required");
    if (eps <= 0) throw std::domain_error("canonical_height: eps must be positive");
    if (is_preperiodic(phi, P).preperiodic()) return HeightInterval{0.0, 0.0};
    DistortionData dd = height_distortion(phi);
    // truncation depth: C / (d^n (d-1)) <= eps/2
    double need = 2.0 * dd.C / (eps * static_cast<double>(d - 1));
    long n = 4;
    while (std::pow(static_cast<double>(d), static_cast<double>(n)) < need) ++n;

    BigInt p0, q0;
    if (P.is_infinity()) {
        p0 = 1;
        q0 = 0;
    } else {
        p0 = P.value().get_num();
        q0 = P.value().get_den();
    }
    BigInt m0 = abs(p0) > q0 ? abs(p0) : q0;
    long double total = m0 > 1 ? log_bigint(m0) : 0.0L;

    // archimedean Green term: renormalized floating-point iteration
    {
        long double z = static_cast<long double>(Rational(p0, m0).get_d());
        long double w = static_cast<long double>(Rational(q0, m0).get_d());
        std::vector<long double> fc, gc;
        for (long i = 0; i <= d; ++i) {
            fc.push_back(static_cast<long double>(phi.num().coeff(static_cast<std::size_t>(i)).get_d()));
            gc.push_back(static_cast<long double>(phi.den().coeff(static_cast<std::size_t>(i)).get_d()));
        }
        long double scale = 1.0L / static_cast<long double>(d);
        long double weight = scale;
        for (long k = 0; k < n; ++k) {
            long double zf = 0, zg = 0, zp = 1;
            std::vector<long double> zpows(static_cast<std::size_t>(d) + 1);
            for (long i = 0; i <= d; ++i) {
                zpows[static_cast<std::size_t>(i)] = zp;
                zp *= z;
            }
            long double wp = 1;
            for (long i = d; i >= 0; --i) {
                zf += fc[static_cast<std::size_t>(i)] * zpows[static_cast<std::size_t>(i)] * wp;
                zg += gc[static_cast<std::size_t>(i)] * zpows[static_cast<std::size_t>(i)] * wp;
                wp *= w;
            }
            long double mx = std::max(std::fabs((double)zf), std::fabs((double)zg));
            total += weight * std::log(mx);
            z = zf / mx;
            w = zg / mx;
            weight *= scale;
        }
    }

    // finite places: gcd extraction happens only at primes of the bad modulus
    if (dd.bad_modulus > 1) {
        for (const auto& [p, mult] : factorize(dd.bad_modulus)) {
            long mp = static_cast<long>(mult);
            long prec = (n + 2) * mp + 8;
            BigInt pk;
            mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(prec));
            BigInt a = p0 % pk, b = q0 % pk;
            if (a < 0) a += pk;
            if (b < 0) b += pk;
            long double lp = log_bigint(p);
            long double weight = 1.0L / static_cast<long double>(d);
            for (long k = 0; k < n; ++k) {
                BigInt fa(0), ga(0), ap(1);
                std::vector<BigInt> apows;
                for (long i = 0; i <= d; ++i) {
                    apows.push_back(ap);
                    ap = (ap * a) % pk;
                }
                BigInt bp(1);
                for (long i = d; i >= 0; --i) {
                    fa = (fa + phi.num().coeff(static_cast<std::size_t>(i)).get_num() *
                                   apows[static_cast<std::size_t>(i)] * bp) % pk;
                    ga = (ga + phi.den().coeff(static_cast<std::size_t>(i)).get_num() *
                                   apows[static_cast<std::size_t>(i)] * bp) % pk;
                    bp = (bp * b) % pk;
                }
                auto val = [&](const BigInt& x) -> long {
                    if (x == 0) return prec;
                    BigInt tmp;
                    return static_cast<long>(
                        mpz_remove(tmp.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
                };
                long delta = std::min(val(fa), val(ga));
                if (delta > mp) delta = mp;  // gcd exponent is capped by the bad modulus
                if (delta > 0) {
                    total -= weight * static_cast<long double>(delta) * lp;
                    BigInt pd;
                    mpz_pow_ui(pd.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(delta));
                    fa /= pd;
                    ga /= pd;
                    prec -= delta;
                    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(prec));
                }
                a = fa % pk;
                b = ga % pk;
                weight /= static_cast<long double>(d);
            }
        }
    }

    double err = dd.C / (std::pow(static_cast<double>(d), static_cast<double>(n)) *
                         static_cast<double>(d - 1)) +
                 1e-12 * static_cast<double>(n + 10);
    return HeightInterval{static_cast<double>(total) - err, static_cast<double>(total) + err};
}

std::optional<QuadTowerScalar> TowerMoebius::apply(const ProjPoint& P) const {
    if (P.is_infinity()) return apply(std::optional<QuadTowerScalar>{});
    return apply(std::optional<QuadTowerScalar>{QuadTowerScalar(P.value())});
}

std::optional<QuadTowerScalar> TowerMoebius::apply(const std::optional<QuadTowerScalar>& v) const {
    if (!v) {
        if (c.is_zero()) return std::nullopt;
        return a / c;
    }
    QuadTowerScalar den = c * *v + d;
    if (den.is_zero()) return std::nullopt;
    return (a * *v + b) / den;
}

bool is_form_one(const PolyT<QuadTowerScalar>& num, const PolyT<QuadTowerScalar>& den) {
    long d = num.degree();
    if (d < 2) return false;
    if (den.degree() >= d) return false;
    if (!(num.leading() == QuadTowerScalar(1))) return false;
    if (!(num.coeff(0) == QuadTowerScalar(0))) return false;
    if (!(den.coeff(0) == QuadTowerScalar(1))) return false;
    return true;
}

bool is_form_one(const RatMap& phi) {
    auto lift = [](const Poly& p) {
        std::vector<QuadTowerScalar> c;
        for (const auto& v : p.coeffs()) c.emplace_back(v);
        return PolyT<QuadTowerScalar>(std::move(c));
    };
    return is_form_one(lift(phi.num()), lift(phi.den()));
}

NormalFormResult to_normal_form(const RatMap& phi, const ProjPoint& a) {
    long d = phi.degree();
    if (d < 2) throw HypothesisViolated("to_normal_form: degree < 2 required");

    struct Cand {
        bool inf = false;
        QuadTowerScalar v;
    };
    std::vector<Cand> cands;
    bool inf_fixed = phi.num().degree() > phi.den().degree();
    if (inf_fixed) cands.push_back(Cand{true, QuadTowerScalar()});

    Poly fixpoly = phi.num() - Poly::x() * phi.den();
    std::shared_ptr<ScalarTower> tower;
    if (!fixpoly.is_zero()) {
        auto roots = rational_roots(fixpoly);
        std::vector<Rational> uniq;
        for (const auto& r : roots)
            if (std::find(uniq.begin(), uniq.end(), r) == uniq.end()) uniq.push_back(r);
        std::sort(uniq.begin(), uniq.end(), [](const Rational& x, const Rational& y) {
            double hx = weil_height(x), hy = weil_height(y);
            if (hx != hy) return hx < hy;
            return x < y;
        });
        Poly residual = fixpoly;
        for (const auto& r : roots) {
            Poly lin(std::vector<Rational>{-r, Rational(1)});
            residual = residual.divmod(lin).first;
        }
        for (const auto& r : uniq) cands.push_back(Cand{false, QuadTowerScalar(r)});
        if (cands.size() < 2 || (cands.size() == 2 && !a.is_infinity())) {
            // may need the quadratic pair; only a degree-2 residual is in reach
            if (residual.degree() == 2) {
                Rational A = residual.coeff(2), B = residual.coeff(1), Cc = residual.coeff(0);
                Rational disc = B * B - A * Cc * 4;
                tower = std::make_shared<ScalarTower>();
                tower->adjoin(tower->constant(disc));
                for (int s = 0; s < 2; ++s) {
                    ScalarElem y = tower->gen(1);
                    if (s) y = tower->neg(y);
                    ScalarElem root = tower->div(
                        tower->add(ScalarTower::lift(tower->constant(-B), 1), y),
                        ScalarTower::lift(tower->constant(A * 2), 1));
                    cands.push_back(Cand{false, QuadTowerScalar(tower, root)});
                }
            }
        }
    }

    auto equals_a = [&](const Cand& c) {
        if (a.is_infinity()) return c.inf;
        if (c.inf) return false;
        return c.v == QuadTowerScalar(a.value());
    };
    std::vector<Cand> usable;
    for (const auto& c : cands)
        if (!equals_a(c)) usable.push_back(c);
    if (usable.size() < 2)
        throw ExtensionUnsupported(
            "to_normal_form: not enough fixed points within quadratic-tower reach");

    // prefer keeping a fixed point at infinity in place
    Cand pinf, p0;
    if (usable.front().inf) {
        pinf = usable[0];
        p0 = usable[1];
    } else {
        p0 = usable[0];
        pinf = usable[1];
    }

    // base Moebius L(x) = (x - p0) / (x - pinf), or x - p0 when pinf = infinity
    TowerMoebius L;
    if (pinf.inf) {
        L.a = QuadTowerScalar(1);
        L.b = -p0.v;
        L.c = QuadTowerScalar(0);
        L.d = QuadTowerScalar(1);
    } else {
        L.a = QuadTowerScalar(1);
        L.b = -p0.v;
        L.c = QuadTowerScalar(1);
        L.d = -pinf.v;
    }

    using QP = PolyT<QuadTowerScalar>;
    auto lift = [](const Poly& p) {
        std::vector<QuadTowerScalar> c;
        for (const auto& v : p.coeffs()) c.emplace_back(v);
        return QP(std::move(c));
    };
    QP li_num(std::vector<QuadTowerScalar>{-L.b, L.d});
    QP li_den(std::vector<QuadTowerScalar>{L.a, -L.c});
    QP N1 = hom_eval(lift(phi.num()), d, li_num, li_den);
    QP D1 = hom_eval(lift(phi.den()), d, li_num, li_den);
    QP N = N1 * L.a + D1 * L.b;
    QP D = N1 * L.c + D1 * L.d;
    if (N.degree() != d || D.degree() >= d || N.coeff(0) != QuadTowerScalar(0) ||
        D.coeff(0) == QuadTowerScalar(0))
        throw std::logic_error("to_normal_form: conjugation did not fix 0 and infinity");
    QuadTowerScalar d0inv = QuadTowerScalar(1) / D.coeff(0);
    N = N * d0inv;
    D = D * d0inv;

    // scaling conjugation x -> s x with s^(d-1) = leading coefficient
    QuadTowerScalar lc = N.leading();
    QuadTowerScalar s;
    if (d == 2) {
        s = lc;
    } else if (d == 3) {
        auto r = lc.sqrt();
        if (!r) {
            if (!lc.tower_ptr() && !tower) {
                tower = std::make_shared<ScalarTower>();
                tower->adjoin(tower->constant(lc.as_rational()));
                s = QuadTowerScalar(tower, tower->gen(1));
            } else {
                throw ExtensionUnsupported("to_normal_form: scaling needs a new square root");
            }
        } else {
            s = *r;
        }
    } else {
        if (!lc.is_rational()) throw ExtensionUnsupported("to_normal_form: scaling root");
        auto r = rational_kth_root(lc.as_rational(), static_cast<unsigned>(d - 1));
        if (!r) throw ExtensionUnsupported("to_normal_form: scaling root not rational");
        s = QuadTowerScalar(*r);
    }
    std::vector<QuadTowerScalar> npow(static_cast<std::size_t>(d) + 1, QuadTowerScalar(0));
    QuadTowerScalar sp = QuadTowerScalar(1);
    std::vector<QuadTowerScalar> spows;
    for (long i = 0; i <= d; ++i) {
        spows.push_back(sp);
        sp = sp * s;
    }
    std::vector<QuadTowerScalar> nc, dc;
    for (long i = 0; i <= N.degree(); ++i)
        nc.push_back(N.coeff(static_cast<std::size_t>(i)) * s / spows[static_cast<std::size_t>(i)]);
    for (long i = 0; i <= D.degree(); ++i)
        dc.push_back(D.coeff(static_cast<std::size_t>(i)) / spows[static_cast<std::size_t>(i)]);
    NormalFormResult out;
    out.num = QP(std::move(nc));
    out.den = QP(std::move(dc));
    out.L = TowerMoebius{s * L.a, s * L.b, L.c, L.d};
    auto img = out.L.apply(a);
    if (!img || img->is_zero())
        throw std::logic_error("to_normal_form: L(a) landed on 0 or infinity");
    out.a_image = *img;
    if (!is_form_one(out.num, out.den))
        throw std::logic_error("to_normal_form: result is not of the required form");
    return out;
}

}  // namespace preim
