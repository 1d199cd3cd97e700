#include "preim/harness.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <sstream>

#include "preim/errors.hpp"

namespace preim {

std::vector<Rational> enumerate_rationals(long H) {
    if (H < 1) throw std::domain_error("enumerate_rationals: H >= 1 required");
    std::vector<Rational> out;
    for (long h = 1; h <= H; ++h) {
        std::vector<std::pair<long, long>> layer;  // (p, q), max(|p|, q) = h
        for (long q = 1; q <= h; ++q)
            for (long p = -h; p <= h; ++p)
                if (std::max(std::abs(p), q) == h && std::gcd(std::abs(p), q) == 1)
                    layer.emplace_back(p, q);
        std::sort(layer.begin(), layer.end(), [](const auto& a, const auto& b) {
            return std::tuple(std::abs(a.first), a.first < 0, a.second) <
                   std::tuple(std::abs(b.first), b.first < 0, b.second);
        });
        for (const auto& [p, q] : layer) out.push_back(make_rational(p, q));
    }
    return out;
}

namespace {

SweepRecord sweep_one(const QuadFamily& fam, const Rational& t) {
    SweepRecord rec;
    rec.t = t;
    rec.s_t = static_cast<long>(denominator_primes(t).primes().size());
    try {
        RatMap phi = fam.member(t);
        PreimageTree tree = preimage_set(phi, ProjPoint(fam.a().eval(t)));
        rec.preim_count = static_cast<long>(tree.preim_count());
        rec.max_depth = tree.max_depth;
    } catch (const DegreeDrop&) {
        rec.skipped_reason = "DegreeDrop";
    } catch (const HypothesisViolated&) {
        rec.skipped_reason = "HypothesisViolated";
    }
    return rec;
}

}  // namespace

std::vector<SweepRecord> sweep(const SweepSpec& spec) {
    std::vector<Rational> grid;
    for (const auto& t : enumerate_rationals(spec.height_cap)) {
        if (spec.s_cap &&
            static_cast<long>(denominator_primes(t).primes().size()) > *spec.s_cap)
            continue;
        grid.push_back(t);
    }
    std::vector<SweepRecord> out(grid.size());
    int workers = std::max(spec.workers, 1);
    if (workers == 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) out[i] = sweep_one(spec.family, grid[i]);
        return out;
    }
    // strided tasks over an immutable grid; the indexed writes make the merge
    // order-independent of scheduling
    std::vector<std::future<void>> tasks;
    for (int w = 0; w < workers; ++w)
        tasks.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = static_cast<std::size_t>(w); i < grid.size();
                 i += static_cast<std::size_t>(workers))
                out[i] = sweep_one(spec.family, grid[i]);
        }));
    for (auto& task : tasks) task.get();
    return out;
}

SweepSummary summarize(const std::vector<SweepRecord>& records) {
    SweepSummary s;
    bool any = false;
    for (const auto& rec : records) {
        if (!rec.preim_count) continue;
        s.histogram[rec.s_t][*rec.preim_count] += 1;
        if (!any || *rec.preim_count > s.max_count) {
            s.max_count = *rec.preim_count;
            s.argmax.clear();
            any = true;
        }
        if (*rec.preim_count == s.max_count) s.argmax.push_back(rec.t);
    }
    return s;
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
    std::ostringstream os;
    os << "t_num,t_den,s_t,preim_count,max_depth,skipped_reason\n";
    for (const auto& rec : records) {
        os << rec.t.get_num().get_str() << ',' << rec.t.get_den().get_str() << ',' << rec.s_t
           << ',';
        if (rec.preim_count)
            os << *rec.preim_count << ',' << rec.max_depth << ',';
        else
            os << ",,";
        os << rec.skipped_reason << '\n';
    }
    return os.str();
}

std::vector<SwapCheckRecord> swap_identity_check(const Poly& b, const Poly& c,
                                                 const std::vector<Rational>& t_values) {
    std::vector<SwapCheckRecord> out;
    for (const auto& t : t_values) {
        SwapCheckRecord rec;
        rec.t = t;
        Rational b0 = b.eval(t), c0 = c.eval(t);
        if (b0 * c0 == Rational(1)) {
            out.push_back(std::move(rec));
            continue;
        }
        try {
            RatMap fwd(Poly(std::vector<Rational>{Rational(0), b0, Rational(1)}),
                       Poly(std::vector<Rational>{Rational(1), c0}));
            RatMap swp(Poly(std::vector<Rational>{Rational(0), c0, Rational(1)}),
                       Poly(std::vector<Rational>{Rational(1), b0}));
            rec.count_infinity = static_cast<long>(
                preimage_set(fwd, ProjPoint::infinity()).preim_count());
            rec.count_zero =
                static_cast<long>(preimage_set(swp, ProjPoint(Rational(0))).preim_count());
            rec.equal = rec.count_infinity == rec.count_zero;
        } catch (const DegreeDrop&) {
        }
        out.push_back(std::move(rec));
    }
    return out;
}

bool example21_check(unsigned N_max) {
    if (N_max > 4) throw std::domain_error("example21_check: N_max <= 4 (doubly exponential t)");
    for (unsigned N = 1; N <= N_max; ++N) {
        BigInt tz = BigInt(1) << (1U << N);  // t = 2^(2^N)
        Rational t(tz);
        // phi_t(x) = (x + t)^2 - t; its N-th iterate collapses to a pure power
        // shifted back by t, which is what makes the preimage count grow
        Poly phi_num(std::vector<Rational>{t * t - t, t * Rational(2), Rational(1)});
        RatMap phi(phi_num, Poly::constant(Rational(1)));
        RatMap phiN = iterate(phi, N);
        Poly expect = Poly(std::vector<Rational>{t, Rational(1)}).pow(1U << N) -
                      Poly::constant(t);
        if (phiN.num() != expect || !phiN.den().is_constant()) return false;
        if (evaluate(phiN, ProjPoint(Rational(2) - t)) != ProjPoint(Rational(0))) return false;
        if (preimage_set(phi, ProjPoint(Rational(0))).preim_count() < N) return false;
    }
    return true;
}

}  // namespace preim
