#pragma once

#include <cstdint>
#include <vector>

namespace ccpart {

// (epsilon, beta) risk budget plus the feasible-binary-configuration count
// used in place of 2^b when known.
struct RiskSpec {
    double epsilon;
    double beta;  // must be < 1/e
    std::uint64_t config_count = 1;

    void validate() const;
};

std::uint64_t config_count_from_binary_dim(std::size_t b);

enum class BoundKind { Explicit, Implicit };

struct SampleSizeResult {
    long long K;
    BoundKind kind;
    // inputs echoed
    double eps_i;
    double beta_i;
    std::size_t rho;
    std::uint64_t config_count;
};

// K = ceil( e/(e-1) * (1/eps) * ( ln(config_count/beta) + rho - 1 ) ), with
// values within 1e-9 of an integer snapped to that integer before ceiling.
SampleSizeResult explicit_sample_size(double eps_i, double beta_i, std::size_t rho,
                                      std::uint64_t config_count = 1);

// ln of sum_{l=0}^{rho-1} C(K,l) eps^l (1-eps)^{K-l}, via log-gamma terms and
// log-sum-exp accumulation.
double binomial_tail_log(std::size_t rho, long long K, double eps);

// Smallest K with ln(config_count) + binomial_tail_log(rho, K, eps) <= ln(beta),
// by binary search bracketed above by the explicit bound. Minimality is
// certified by checking that K-1 fails the condition.
SampleSizeResult implicit_sample_size(double eps_i, double beta_i, std::size_t rho,
                                      std::uint64_t config_count = 1);

// (beta/P, ..., beta/P)
std::vector<double> allocate_beta(double beta, std::size_t P);

}  // namespace ccpart
