#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "ccpart/index_set.hpp"
#include "ccpart/partition.hpp"
#include "ccpart/rng.hpp"

namespace ccpart {

// Structural description of one constraint row: which continuous variables it
// touches and its cost weights. flops = 2 * nnz under the default FLOP model.
struct RowStructure {
    int row_id = 0;
    IndexSet var_support;  // over continuous variables 0..n-1
    long long nnz = 0;
    long long flops = 0;
};

// Variable-support proxy: |union of supports|, an upper bound on the support rank.
std::size_t support_proxy_rank(const std::vector<RowStructure>& rows, const IndexSet& A);

// Draws one coefficient matrix: fills `out` (row-major, |rows| x n) with the
// x-gradients of the requested rows at a single shared parameter sample.
using CoefficientSampler =
    std::function<void(Rng&, const std::vector<int>& rows, std::vector<double>& out)>;

// Memoized support-rank oracle. Either the structural proxy or a sampled
// numeric rank for rows linear in the continuous decision.
class RankOracle {
public:
    static RankOracle support_proxy(std::vector<RowStructure> rows, std::size_t n);
    static RankOracle sampled_linear(std::vector<RowStructure> rows, std::size_t n,
                                     CoefficientSampler sampler, std::size_t sample_count,
                                     double tolerance, std::uint64_t seed);

    std::size_t rank(const IndexSet& A) const;
    std::size_t eval_count() const;
    // true once some queried set produced an all-zero sample stack
    bool degenerate_seen() const;

    std::size_t n() const;

    // adapter for the partitioning layer; shares this oracle's memo
    RhoFn as_rho_fn() const;

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

// One-off sampled numeric rank (no memo); deterministic given seed.
std::size_t sampled_linear_rank(const std::vector<RowStructure>& rows, std::size_t n,
                                const CoefficientSampler& sampler, const IndexSet& A,
                                std::size_t sample_count, double tolerance, std::uint64_t seed,
                                bool* degenerate = nullptr);

}  // namespace ccpart
