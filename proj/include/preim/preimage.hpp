#pragma once

#include <optional>
#include <vector>

#include "preim/dynamics.hpp"

namespace preim {

struct PreimageNode {
    ProjPoint point;
    long depth = 0;
    long parent = -1;  // index into nodes; -1 for the root
};

/// BFS tree of rational iterated preimages of the root.
struct PreimageTree {
    ProjPoint root;
    std::vector<PreimageNode> nodes;  // nodes[0] is the root at depth 0
    bool root_rediscovered = false;   // some node at depth >= 1 maps onto the root chain
    long max_depth = 0;

    /// |Preim(phi, root, Q)|: every non-root node, plus the root itself when it
    /// reappears as a preimage at depth >= 1.
    std::size_t preim_count() const {
        return nodes.size() - 1 + (root_rediscovered ? 1 : 0);
    }
};

/// All rational solutions of phi(x) = v, including infinity.
std::vector<ProjPoint> preimages_one_step(const RatMap& phi, const ProjPoint& v);

PreimageTree preimage_set(const RatMap& phi, const ProjPoint& a);

/// chain = (x_0, ..., x_N) with x_0 = a and phi(x_i) = x_{i-1}. Requires phi in
/// form (1) with S-integral coefficients and a an S-unit; throws ChainBroken on
/// malformed input. Returns whether every x_i is an S-unit.
bool verify_s_unit_chain(const RatMap& phi, const PrimeSet& S, const Rational& a,
                         const std::vector<Rational>& chain);

/// Determinant of the (2d-1)x(2d-1) matrix with rows
/// [x_i^d - x_{i-1}, x_i^{d-1},...,x_i, x_i^{d-1}x_{i-1},...,x_i x_{i-1}],
/// i = 1..2d-1, over a chain x_0..x_{2d-1}. Zero on genuine preimage chains of
/// form-(1) maps (the coefficient vector is a kernel vector).
Rational chain_matrix_det(long d, const std::vector<Rational>& chain);

/// (2^35 n^2)^(n^3 s), exactly.
BigInt evertse_bound(long n, long s);

/// ((2d-1) d^((2d-1)(d+1)), d^(3d^2)): refined and coarse monomial-count bounds.
std::pair<BigInt, BigInt> mu_bound(long d);

struct KappaInfo {
    double loglog = 0;  // log log kappa' = 20 d log d + log s
    /// Depth bound N = 2d-1 + mu * 2^((2d)!) * evertse(2d, s). The exact integer
    /// is materialized only while (2d)! stays small (d <= 5); the log2 value is
    /// always available.
    std::optional<BigInt> depth_bound_exact;
    double depth_bound_log2 = 0;
};
KappaInfo kappa_prime_loglog(long d, long s);

}  // namespace preim
