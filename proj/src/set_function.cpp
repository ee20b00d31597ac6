#include "ccpart/set_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ccpart/rng.hpp"

namespace ccpart {

double SetFunctionOracle::evaluate(const IndexSet& A) const {
    if (A.universe() != ground_.size)
        throw std::invalid_argument("SetFunctionOracle: set universe " +
                                    std::to_string(A.universe()) + " != ground size " +
                                    std::to_string(ground_.size));
    if (memoize_) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = memo_.find(A);
        if (it != memo_.end()) return it->second;
        double v = fn_(A);
        evals_.fetch_add(1, std::memory_order_relaxed);
        memo_.emplace(A, v);
        return v;
    }
    evals_.fetch_add(1, std::memory_order_relaxed);
    return fn_(A);
}

namespace {

// random subset chain A subseteq B subset J plus j notin B
void sample_chain(Rng& rng, std::size_t r, IndexSet& a, IndexSet& b, int& j) {
    b = IndexSet(r);
    a = IndexSet(r);
    for (std::size_t k = 0; k < r; ++k)
        if (rng.uniform() < 0.5) b.insert(static_cast<int>(k));
    // pick j outside B
    std::vector<int> outside = b.complement().members();
    if (outside.empty()) {
        int drop = static_cast<int>(rng.uniform_int(0, static_cast<std::int64_t>(r) - 1));
        b.erase(drop);
        outside = {drop};
    }
    j = outside[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(outside.size()) - 1))];
    for (int m : b.members())
        if (rng.uniform() < 0.5) a.insert(m);
}

double min_ratio_over_pairs(const SetFunctionOracle& oracle,
                            const std::vector<std::pair<IndexSet, IndexSet>>& pairs) {
    double best = 1.0;
    bool seen = false;
    for (const auto& [a, b] : pairs) {
        double ga = oracle(a);
        double gab = oracle(a.united(b));
        double denom = gab - ga;
        if (!(denom > 0)) continue;
        double num = 0;
        for (int j : b.members()) {
            IndexSet aj = a;
            aj.insert(j);
            double marg = oracle(aj) - ga;
            if (marg < -1e-9 * (1.0 + std::fabs(ga)))
                throw std::runtime_error("estimate_submodularity_ratio: non-monotone marginal at A=" +
                                         a.to_string() + ", j=" + std::to_string(j));
            num += marg;
        }
        double ratio = num / denom;
        if (!seen || ratio < best) best = ratio, seen = true;
    }
    if (!seen) return 1.0;
    return std::clamp(best, std::numeric_limits<double>::min(), 1.0);
}

}  // namespace

SubmodularityReport check_monotone_submodular(const SetFunctionOracle& oracle, CheckMode mode,
                                              std::size_t trials, std::uint64_t seed) {
    const std::size_t r = oracle.ground().size;
    SubmodularityReport rep;
    const double tol = 1e-9;

    if (mode == CheckMode::Exhaustive) {
        if (r > 16)
            throw std::invalid_argument("check_monotone_submodular: exhaustive mode limited to r <= 16, got r = " +
                                        std::to_string(r));
        const std::uint64_t full = (r == 64) ? ~0ull : ((1ull << r) - 1);
        // precompute all values
        std::vector<double> val(static_cast<std::size_t>(full) + 1);
        for (std::uint64_t m = 0; m <= full; ++m)
            val[m] = oracle(IndexSet::from_mask(m, r));
        for (std::uint64_t bm = 0; bm <= full; ++bm) {
            // monotonicity along single-element extensions implies it on all chains
            for (std::size_t jj = 0; jj < r; ++jj) {
                if (bm & (1ull << jj)) continue;
                std::uint64_t bj = bm | (1ull << jj);
                if (val[bj] < val[bm] - tol)
                    rep.violations.push_back({IndexSet::from_mask(bm, r), IndexSet::from_mask(bj, r),
                                              -1, val[bm], val[bj]});
            }
            if (bm == full) continue;
            // diminishing returns for every A subseteq B and j notin B
            std::uint64_t am = bm;
            while (true) {
                for (std::size_t jj = 0; jj < r; ++jj) {
                    if (bm & (1ull << jj)) continue;
                    std::uint64_t bit = 1ull << jj;
                    double lhs = val[am | bit] - val[am];
                    double rhs = val[bm | bit] - val[bm];
                    ++rep.checked_triples;
                    if (lhs < rhs - tol)
                        rep.violations.push_back({IndexSet::from_mask(am, r), IndexSet::from_mask(bm, r),
                                                  static_cast<int>(jj), lhs, rhs});
                }
                if (am == 0) break;
                am = (am - 1) & bm;
            }
        }
        if (rep.ok()) {
            if (r <= 12) {
                // exact ratio over all disjoint pairs
                std::vector<std::pair<IndexSet, IndexSet>> pairs;
                for (std::uint64_t am = 0; am <= full; ++am) {
                    std::uint64_t rest = full & ~am;
                    std::uint64_t bm2 = rest;
                    while (bm2) {
                        pairs.emplace_back(IndexSet::from_mask(am, r), IndexSet::from_mask(bm2, r));
                        bm2 = (bm2 - 1) & rest;
                    }
                }
                rep.mu_hat = min_ratio_over_pairs(oracle, pairs);
            } else {
                rep.mu_hat = estimate_submodularity_ratio(oracle, trials ? trials : 10000, seed);
            }
        }
        return rep;
    }

    // sampled mode
    Rng rng(derive_seed(seed, 0xd1a6));
    for (std::size_t t = 0; t < trials; ++t) {
        IndexSet a, b;
        int j;
        sample_chain(rng, r, a, b, j);
        ++rep.checked_triples;
        double ga = oracle(a), gb = oracle(b);
        if (gb < ga - tol) rep.violations.push_back({a, b, -1, ga, gb});
        IndexSet aj = a, bj = b;
        aj.insert(j);
        bj.insert(j);
        double lhs = oracle(aj) - ga;
        double rhs = oracle(bj) - gb;
        if (lhs < rhs - tol) rep.violations.push_back({a, b, j, lhs, rhs});
    }
    if (rep.ok()) rep.mu_hat = estimate_submodularity_ratio(oracle, trials, seed);
    return rep;
}

double estimate_submodularity_ratio(const SetFunctionOracle& oracle, std::size_t trials,
                                    std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("estimate_submodularity_ratio: trials must be >= 1");
    const std::size_t r = oracle.ground().size;
    Rng rng(derive_seed(seed, 0x3a7f));
    std::vector<std::pair<IndexSet, IndexSet>> pairs;
    pairs.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        IndexSet a(r), b(r);
        for (std::size_t k = 0; k < r; ++k) {
            double u = rng.uniform();
            if (u < 1.0 / 3)
                a.insert(static_cast<int>(k));
            else if (u < 2.0 / 3)
                b.insert(static_cast<int>(k));
        }
        if (b.is_empty()) continue;
        pairs.emplace_back(std::move(a), std::move(b));
    }
    return min_ratio_over_pairs(oracle, pairs);
}

double mu_lower_bound_product(const std::vector<double>& nu_weights) {
    if (nu_weights.empty()) throw std::invalid_argument("mu_lower_bound_product: empty weight vector");
    double total = 0, wmin = std::numeric_limits<double>::infinity();
    for (double w : nu_weights) {
        if (!(w > 0)) throw std::domain_error("mu_lower_bound_product: weights must be positive");
        total += w;
        wmin = std::min(wmin, w);
    }
    return wmin / total;
}

}  // namespace ccpart
