#include "preim/preimage.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace preim {

std::vector<ProjPoint> preimages_one_step(const RatMap& phi, const ProjPoint& v) {
    if (phi.degree() < 2) throw HypothesisViolated("preimages_one_step: degree < 2 required");
    std::vector<ProjPoint> out;
    auto push = [&](const ProjPoint& p) {
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    };
    if (v.is_infinity()) {
        if (!phi.den().is_constant())
            for (const auto& r : rational_roots(phi.den())) push(ProjPoint(r));
    } else {
        Poly P = phi.num() - phi.den() * v.value();
        if (!P.is_zero() && !P.is_constant())
            for (const auto& r : rational_roots(P)) push(ProjPoint(r));
    }
    if (evaluate(phi, ProjPoint::infinity()) == v) push(ProjPoint::infinity());
    return out;
}

PreimageTree preimage_set(const RatMap& phi, const ProjPoint& a) {
    PreimageTree tree;
    tree.root = a;
    tree.nodes.push_back(PreimageNode{a, 0, -1});
    std::unordered_set<ProjPoint, ProjPointHash> visited{a};
    std::size_t head = 0;
    while (head < tree.nodes.size()) {
        const auto node = tree.nodes[head];
        for (const auto& p : preimages_one_step(phi, node.point)) {
            if (p == a) {
                tree.root_rediscovered = true;
                tree.max_depth = std::max(tree.max_depth, node.depth + 1);
            }
            if (visited.count(p)) continue;  // ancestor or sibling: marked, not re-expanded
            visited.insert(p);
            tree.nodes.push_back(PreimageNode{p, node.depth + 1, static_cast<long>(head)});
            tree.max_depth = std::max(tree.max_depth, node.depth + 1);
        }
        ++head;
    }
    return tree;
}

bool verify_s_unit_chain(const RatMap& phi, const PrimeSet& S, const Rational& a,
                         const std::vector<Rational>& chain) {
    if (!is_form_one(phi))
        throw HypothesisViolated("verify_s_unit_chain: map must be of form (1)");
    for (const auto& c : phi.num().coeffs())
        if (!is_s_integer(c, S))
            throw HypothesisViolated("verify_s_unit_chain: numerator coefficient not S-integral");
    for (const auto& c : phi.den().coeffs())
        if (!is_s_integer(c, S))
            throw HypothesisViolated("verify_s_unit_chain: denominator coefficient not S-integral");
    if (chain.empty() || chain.front() != a)
        throw ChainBroken("verify_s_unit_chain: chain must start at a");
    for (std::size_t i = 1; i < chain.size(); ++i)
        if (evaluate(phi, ProjPoint(chain[i])) != ProjPoint(chain[i - 1]))
            throw ChainBroken("verify_s_unit_chain: phi(x_i) != x_{i-1}");
    for (const auto& x : chain)
        if (!is_s_unit(x, S)) return false;
    return true;
}

Rational chain_matrix_det(long d, const std::vector<Rational>& chain) {
    if (d < 2) throw std::domain_error("chain_matrix_det: d >= 2 required");
    if (static_cast<long>(chain.size()) != 2 * d)
        throw std::domain_error("chain_matrix_det: chain must have length 2d");
    std::size_t n = static_cast<std::size_t>(2 * d - 1);
    std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n, Rational(0)));
    for (long i = 1; i <= 2 * d - 1; ++i) {
        const Rational& xi = chain[static_cast<std::size_t>(i)];
        const Rational& xp = chain[static_cast<std::size_t>(i - 1)];
        auto& row = M[static_cast<std::size_t>(i - 1)];
        Rational pw(1);
        std::vector<Rational> pows;  // xi^0 .. xi^d
        for (long j = 0; j <= d; ++j) {
            pows.push_back(pw);
            pw *= xi;
        }
        row[0] = pows[static_cast<std::size_t>(d)] - xp;
        for (long j = 1; j <= d - 1; ++j)
            row[static_cast<std::size_t>(j)] = pows[static_cast<std::size_t>(d - j)];
        for (long j = 1; j <= d - 1; ++j)
            row[static_cast<std::size_t>(d - 1 + j)] = pows[static_cast<std::size_t>(d - j)] * xp;
    }
    return matrix_det(std::move(M));
}

BigInt evertse_bound(long n, long s) {
    if (n < 2 || s < 1) throw std::domain_error("evertse_bound: need n >= 2, s >= 1");
    BigInt base = (BigInt(1) << 35) * n * n;
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(),
               static_cast<unsigned long>(n) * static_cast<unsigned long>(n) *
                   static_cast<unsigned long>(n) * static_cast<unsigned long>(s));
    return r;
}

std::pair<BigInt, BigInt> mu_bound(long d) {
    if (d < 2) throw std::domain_error("mu_bound: d >= 2 required");
    BigInt refined, coarse;
    mpz_ui_pow_ui(refined.get_mpz_t(), static_cast<unsigned long>(d),
                  static_cast<unsigned long>((2 * d - 1) * (d + 1)));
    refined *= 2 * d - 1;
    mpz_ui_pow_ui(coarse.get_mpz_t(), static_cast<unsigned long>(d),
                  static_cast<unsigned long>(3 * d * d));
    return {refined, coarse};
}

KappaInfo kappa_prime_loglog(long d, long s) {
    if (d < 2 || s < 1) throw std::domain_error("kappa_prime_loglog: need d >= 2, s >= 1");
    KappaInfo out;
    out.loglog = 20.0 * static_cast<double>(d) * std::log(static_cast<double>(d)) +
                 std::log(static_cast<double>(s));
    auto [mu, coarse] = mu_bound(d);
    (void)coarse;
    double m_fact = 1;  // (2d)!
    for (long i = 2; i <= 2 * d; ++i) m_fact *= static_cast<double>(i);
    double log2_ev = static_cast<double>(2 * d) * static_cast<double>(2 * d) *
                     static_cast<double>(2 * d) * static_cast<double>(s) *
                     (35.0 + 2.0 * std::log2(static_cast<double>(2 * d)));
    out.depth_bound_log2 = log_bigint(mu) / std::log(2.0) + m_fact + log2_ev;
    if (d <= 5) {
        // exact integer feasible while (2d)! stays below a few million bits
        BigInt fact(1);
        for (long i = 2; i <= 2 * d; ++i) fact *= i;
        BigInt pow2 = BigInt(1) << fact.get_ui();
        out.depth_bound_exact = BigInt(2 * d - 1) + mu * pow2 * evertse_bound(2 * d, s);
    }
    return out;
}

}  // namespace preim
