#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "preim/curves.hpp"
#include "preim/preimage.hpp"

namespace preim {

/// All reduced p/q with max(|p|, q) <= H, ordered by height then numerator.
std::vector<Rational> enumerate_rationals(long H);

struct SweepSpec {
    QuadFamily family;
    long height_cap = 1;        // multiplicative height bound on t
    std::optional<long> s_cap;  // keep only t whose denominator has at most this many primes
    int workers = 1;
};

struct SweepRecord {
    Rational t;
    long s_t = 0;                      // number of primes in the denominator of t
    std::optional<long> preim_count;   // absent iff skipped
    long max_depth = 0;
    std::string skipped_reason;        // "", "DegreeDrop" or "HypothesisViolated"
};

/// One record per enumerated t, in enumeration order regardless of worker
/// count. Degenerate parameters are recorded with a reason, never dropped.
std::vector<SweepRecord> sweep(const SweepSpec& spec);

struct SweepSummary {
    std::map<long, std::map<long, long>> histogram;  // s_t -> (preim_count -> frequency)
    long max_count = 0;
    std::vector<Rational> argmax;  // every t attaining max_count
};

SweepSummary summarize(const std::vector<SweepRecord>& records);

/// Fixed column order: t_num,t_den,s_t,preim_count,max_depth,skipped_reason.
std::string sweep_csv(const std::vector<SweepRecord>& records);

struct SwapCheckRecord {
    Rational t;
    std::optional<bool> equal;  // absent when the parameter degenerates (b(t)c(t) = 1)
    long count_infinity = 0;    // |Preim((x^2+bx)/(cx+1), infinity)|
    long count_zero = 0;        // |Preim((x^2+cx)/(bx+1), 0)|
};

/// |Preim(phi_{b,c,t}, infinity)| = |Preim(phi_{c,b,t}, 0)| at each t.
std::vector<SwapCheckRecord> swap_identity_check(const Poly& b, const Poly& c,
                                                 const std::vector<Rational>& t_values);

/// For phi_t(x) = (x+t)^2 - t and N = 1..N_max: the iterate is exactly
/// (x+t)^(2^N) - t, the point 2 - 2^(2^N) dies at the origin after N steps of
/// phi at t = 2^(2^N), and the preimage count of 0 there is at least N.
bool example21_check(unsigned N_max);

}  // namespace preim
