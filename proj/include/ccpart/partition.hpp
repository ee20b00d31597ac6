#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "ccpart/bounds.hpp"
#include "ccpart/index_set.hpp"
#include "ccpart/set_function.hpp"

namespace ccpart {

// Monotone modular computational cost metric nu with nu({j}) > 0.
// nu(A) = offset + sum_{j in A} weights[j]; the sample-complexity metric is
// the constant-1 function (offset 1, zero weights).
struct CostMetric {
    enum class Kind { Rows, Nnz, Flops, Samples, Custom };

    Kind kind = Kind::Rows;
    std::vector<double> weights;
    double offset = 0;

    static CostMetric rows(std::size_t r);
    static CostMetric nnz(const std::vector<long long>& row_nnz);
    static CostMetric flops(const std::vector<long long>& row_flops);
    static CostMetric samples(std::size_t r);
    static CostMetric custom(std::vector<double> weights, double offset = 0);

    double value(const IndexSet& A) const;
    std::size_t ground_size() const { return weights.size(); }
    void validate() const;  // nu({j}) > 0 for all j
};

using RhoFn = std::function<std::size_t(const IndexSet&)>;

// sigma(A) = (ln(config_count * P / beta) + rho(A) - 1) * nu(A); A nonempty.
double sigma(const IndexSet& A, std::size_t P, double beta, std::uint64_t config_count,
             const RhoFn& rho, const CostMetric& metric);

struct EpsilonAllocation {
    std::vector<double> epsilons;  // sums to eps
    double objective;              // e/(e-1) * (1/eps) * (sum sqrt(sigma_i))^2
};

// Closed-form risk allocation eps_i = eps * sqrt(sigma_i) / sum_j sqrt(sigma_j).
EpsilonAllocation optimal_epsilon(const std::vector<double>& sigmas, double eps);

// sum_i K_i * nu(P_i) with integer K_i from the requested bound.
double total_cost(const Partition& partition, const std::vector<double>& epsilons,
                  const std::vector<double>& betas, const RhoFn& rho, const CostMetric& metric,
                  std::uint64_t config_count, BoundKind bound);

struct AllocatedPlan {
    Partition partition;
    std::vector<double> epsilons;  // sum = eps
    std::vector<double> betas;     // beta / P each
    std::vector<SampleSizeResult> sizes_explicit;
    std::vector<SampleSizeResult> sizes_implicit;
    double predicted_cost_explicit = 0;
    double predicted_cost_implicit = 0;
    double continuous_objective = 0;  // selection objective (no ceiling)
    // trivial-partition reference, for reporting
    double trivial_continuous_objective = 0;
    double trivial_cost_explicit = 0;
    std::size_t oracle_eval_count = 0;
};

// Greedy partition search: trivial partition as incumbent, then GSA on
// gamma_P = sqrt(sigma(.; P)) for P = 2..P_max, selecting by the continuous
// objective; integer sample sizes for both bounds are attached to the winner.
AllocatedPlan efficient_partition(const GroundSet& ground, const CostMetric& metric, double eps,
                                  double beta, std::size_t P_max, const RhoFn& rho,
                                  std::uint64_t config_count = 1);

// The four reference NNZ costs of the two-block structure (m=r=10,n=20 and
// m=10,r=n=100): trivial and two-way split, at eps = 0.05, beta = 1e-3 with
// the even (eps/2, beta/2) allocation. eps_perturb shifts eps (test hook).
std::array<long long, 4> block_example_reference_costs(double eps_perturb = 0.0);

}  // namespace ccpart
