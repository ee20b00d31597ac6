#include "ccpart/partition.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "ccpart/submod.hpp"

namespace ccpart {

namespace {
constexpr double kEulerFactor = 1.5819767068693265;  // e / (e - 1)
}

void Partition::canonicalize() {
    std::sort(parts.begin(), parts.end(), [](const IndexSet& a, const IndexSet& b) {
        return a.min_element() < b.min_element();
    });
}

void Partition::validate(const GroundSet& ground) const {
    IndexSet seen(ground.size);
    for (const IndexSet& p : parts) {
        if (p.universe() != ground.size)
            throw std::invalid_argument("Partition: part universe does not match ground set");
        if (p.is_empty()) throw std::invalid_argument("Partition: empty part");
        if (seen.intersects(p)) throw std::invalid_argument("Partition: overlapping parts");
        seen = seen.united(p);
    }
    if (seen != IndexSet::full(ground.size))
        throw std::invalid_argument("Partition: parts do not cover the ground set");
}

CostMetric CostMetric::rows(std::size_t r) {
    return {Kind::Rows, std::vector<double>(r, 1.0), 0.0};
}

CostMetric CostMetric::nnz(const std::vector<long long>& row_nnz) {
    CostMetric m{Kind::Nnz, {}, 0.0};
    m.weights.reserve(row_nnz.size());
    for (long long v : row_nnz) m.weights.push_back(static_cast<double>(v));
    m.validate();
    return m;
}

CostMetric CostMetric::flops(const std::vector<long long>& row_flops) {
    CostMetric m{Kind::Flops, {}, 0.0};
    m.weights.reserve(row_flops.size());
    for (long long v : row_flops) m.weights.push_back(static_cast<double>(v));
    m.validate();
    return m;
}

CostMetric CostMetric::samples(std::size_t r) {
    return {Kind::Samples, std::vector<double>(r, 0.0), 1.0};
}

CostMetric CostMetric::custom(std::vector<double> weights, double offset) {
    CostMetric m{Kind::Custom, std::move(weights), offset};
    m.validate();
    return m;
}

double CostMetric::value(const IndexSet& A) const {
    if (A.universe() != weights.size())
        throw std::invalid_argument("CostMetric: set universe does not match metric size");
    double v = offset;
    A.for_each([&](int j) { v += weights[static_cast<std::size_t>(j)]; });
    return v;
}

void CostMetric::validate() const {
    for (std::size_t j = 0; j < weights.size(); ++j)
        if (!(offset + weights[j] > 0))
            throw std::domain_error("CostMetric: nu({" + std::to_string(j) + "}) must be positive");
}

double sigma(const IndexSet& A, std::size_t P, double beta, std::uint64_t config_count,
             const RhoFn& rho, const CostMetric& metric) {
    if (A.is_empty()) throw std::domain_error("sigma: empty set");
    if (!(beta > 0 && beta < 1.0 / std::exp(1.0))) throw std::domain_error("sigma: beta must lie in (0, 1/e)");
    double log_term = std::log(static_cast<double>(config_count) * static_cast<double>(P) / beta);
    return (log_term + static_cast<double>(rho(A)) - 1.0) * metric.value(A);
}

EpsilonAllocation optimal_epsilon(const std::vector<double>& sigmas, double eps) {
    if (sigmas.empty()) throw std::domain_error("optimal_epsilon: empty sigma vector");
    if (!(eps > 0 && eps < 1)) throw std::domain_error("optimal_epsilon: eps must lie in (0,1)");
    double sum_sqrt = 0;
    for (double s : sigmas) {
        if (!(s > 0)) throw std::domain_error("optimal_epsilon: sigmas must be positive");
        sum_sqrt += std::sqrt(s);
    }
    EpsilonAllocation out;
    out.epsilons.reserve(sigmas.size());
    for (double s : sigmas) out.epsilons.push_back(eps * std::sqrt(s) / sum_sqrt);
    out.objective = kEulerFactor / eps * sum_sqrt * sum_sqrt;
    return out;
}

double total_cost(const Partition& partition, const std::vector<double>& epsilons,
                  const std::vector<double>& betas, const RhoFn& rho, const CostMetric& metric,
                  std::uint64_t config_count, BoundKind bound) {
    const std::size_t P = partition.parts.size();
    if (epsilons.size() != P || betas.size() != P)
        throw std::invalid_argument("total_cost: epsilons/betas length does not match partition size");
    double total = 0;
    for (std::size_t i = 0; i < P; ++i) {
        const IndexSet& part = partition.parts[i];
        std::size_t rho_i = rho(part);
        SampleSizeResult k = bound == BoundKind::Explicit
                                 ? explicit_sample_size(epsilons[i], betas[i], rho_i, config_count)
                                 : implicit_sample_size(epsilons[i], betas[i], rho_i, config_count);
        total += static_cast<double>(k.K) * metric.value(part);
    }
    return total;
}

namespace {

AllocatedPlan finish_plan(Partition partition, const std::vector<double>& sigmas, double eps,
                          double beta, const RhoFn& rho, const CostMetric& metric,
                          std::uint64_t config_count) {
    AllocatedPlan plan;
    const std::size_t P = partition.parts.size();
    EpsilonAllocation alloc = optimal_epsilon(sigmas, eps);
    plan.partition = std::move(partition);
    plan.epsilons = alloc.epsilons;
    plan.betas = allocate_beta(beta, P);
    plan.continuous_objective = alloc.objective;
    for (std::size_t i = 0; i < P; ++i) {
        std::size_t rho_i = rho(plan.partition.parts[i]);
        plan.sizes_explicit.push_back(
            explicit_sample_size(plan.epsilons[i], plan.betas[i], rho_i, config_count));
        plan.sizes_implicit.push_back(
            implicit_sample_size(plan.epsilons[i], plan.betas[i], rho_i, config_count));
        double nu_i = metric.value(plan.partition.parts[i]);
        plan.predicted_cost_explicit += static_cast<double>(plan.sizes_explicit.back().K) * nu_i;
        plan.predicted_cost_implicit += static_cast<double>(plan.sizes_implicit.back().K) * nu_i;
    }
    return plan;
}

}  // namespace

AllocatedPlan efficient_partition(const GroundSet& ground, const CostMetric& metric, double eps,
                                  double beta, std::size_t P_max, const RhoFn& rho,
                                  std::uint64_t config_count) {
    const std::size_t r = ground.size;
    if (r < 1) throw std::domain_error("efficient_partition: empty ground set");
    if (metric.ground_size() != r)
        throw std::invalid_argument("efficient_partition: metric size does not match ground set");
    if (!(beta > 0 && beta < 1.0 / std::exp(1.0)))
        throw std::domain_error("efficient_partition: beta must lie in (0, 1/e)");

    const IndexSet all = IndexSet::full(r);

    // incumbent: trivial partition at P = 1
    Partition trivial;
    trivial.parts.push_back(all);
    std::vector<double> trivial_sigma = {sigma(all, 1, beta, config_count, rho, metric)};
    double trivial_objective = optimal_epsilon(trivial_sigma, eps).objective;

    Partition best = trivial;
    std::vector<double> best_sigmas = trivial_sigma;
    double best_objective = trivial_objective;
    std::size_t eval_count = 0;

    if (r >= 2) {
        if (P_max < 2 || P_max > r)
            throw std::domain_error("efficient_partition: P_max must satisfy 2 <= P_max <= r");
        for (std::size_t P = 2; P <= P_max; ++P) {
            SetFunctionOracle gamma_p(ground,
                                      [&, P](const IndexSet& a) {
                                          if (a.is_empty()) return 0.0;
                                          return std::sqrt(sigma(a, P, beta, config_count, rho, metric));
                                      },
                                      /*memoize=*/true);
            Partition cand = gsa(gamma_p, ground, P);
            std::vector<double> sigmas;
            sigmas.reserve(P);
            for (const IndexSet& part : cand.parts)
                sigmas.push_back(sigma(part, P, beta, config_count, rho, metric));
            double objective = optimal_epsilon(sigmas, eps).objective;
            eval_count += gamma_p.eval_count();
            if (objective < best_objective) {
                best_objective = objective;
                best = std::move(cand);
                best_sigmas = std::move(sigmas);
            }
        }
    }

    AllocatedPlan plan = finish_plan(std::move(best), best_sigmas, eps, beta, rho, metric, config_count);
    plan.trivial_continuous_objective = trivial_objective;
    plan.trivial_cost_explicit =
        total_cost(trivial, {eps}, {beta}, rho, metric, config_count, BoundKind::Explicit);
    plan.oracle_eval_count = eval_count;
    return plan;
}

std::array<long long, 4> block_example_reference_costs(double eps_perturb) {
    const double eps = 0.05 + eps_perturb;
    const double beta = 1e-3;
    std::array<long long, 4> cells{};
    struct Case {
        std::size_t m, n, r;
    };
    const Case cases[2] = {{10, 20, 10}, {10, 100, 100}};
    for (int c = 0; c < 2; ++c) {
        auto [m, n, r] = cases[c];
        double nu1 = static_cast<double>((r - 1) * m);
        double nu2 = static_cast<double>(n);
        long long k_trivial = explicit_sample_size(eps, beta, n, 1).K;
        cells[2 * c] = k_trivial * static_cast<long long>(nu1 + nu2);
        long long k1 = explicit_sample_size(eps / 2, beta / 2, m, 1).K;
        long long k2 = explicit_sample_size(eps / 2, beta / 2, n, 1).K;
        cells[2 * c + 1] =
            k1 * static_cast<long long>(nu1) + k2 * static_cast<long long>(nu2);
    }
    return cells;
}

}  // namespace ccpart
