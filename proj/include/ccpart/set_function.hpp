#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "ccpart/index_set.hpp"

namespace ccpart {

// Counted, optionally memoized set-function evaluator A -> R.
// Immutable after construction except for the cache and the miss counter;
// concurrent evaluation is safe.
class SetFunctionOracle {
public:
    using Fn = std::function<double(const IndexSet&)>;

    SetFunctionOracle(GroundSet ground, Fn fn, bool memoize = true)
        : ground_(ground), fn_(std::move(fn)), memoize_(memoize) {}

    SetFunctionOracle(const SetFunctionOracle&) = delete;
    SetFunctionOracle& operator=(const SetFunctionOracle&) = delete;

    double evaluate(const IndexSet& A) const;
    double operator()(const IndexSet& A) const { return evaluate(A); }

    // Number of underlying evaluations (cache misses only).
    std::size_t eval_count() const { return evals_.load(std::memory_order_relaxed); }

    const GroundSet& ground() const { return ground_; }
    bool memoized() const { return memoize_; }

private:
    GroundSet ground_;
    Fn fn_;
    bool memoize_;
    mutable std::atomic<std::size_t> evals_{0};
    mutable std::mutex mutex_;
    mutable std::unordered_map<IndexSet, double, IndexSetHash> memo_;
};

struct SubmodViolation {
    IndexSet a, b;
    int j;  // -1 marks a monotonicity violation (gamma(a) > gamma(b) with a subset of b)
    double lhs, rhs;
};

struct SubmodularityReport {
    std::size_t checked_triples = 0;
    std::vector<SubmodViolation> violations;
    double mu_hat = 1.0;  // estimated submodularity ratio in (0,1]
    bool ok() const { return violations.empty(); }
};

enum class CheckMode { Exhaustive, Sampled };

// Checks monotonicity and diminishing returns. Exhaustive mode enumerates all
// chains A subseteq B subset J, j notin B and requires r <= 16.
SubmodularityReport check_monotone_submodular(const SetFunctionOracle& oracle,
                                              CheckMode mode,
                                              std::size_t trials = 10000,
                                              std::uint64_t seed = 0);

// min over sampled disjoint pairs (A, B), B nonempty with gamma(B|A) > 0, of
// sum_{j in B} gamma(j|A) / gamma(B|A), clamped to (0, 1]. Returns 1 when no
// sampled pair has a positive denominator. Throws if a sampled marginal is
// negative (non-monotone input).
double estimate_submodularity_ratio(const SetFunctionOracle& oracle,
                                    std::size_t trials, std::uint64_t seed);

// mu(empty, J) = min_j nu({j}) / nu(J) for the zero-offset modular function
// with the given per-index weights (all > 0).
double mu_lower_bound_product(const std::vector<double>& nu_weights);

}  // namespace ccpart
