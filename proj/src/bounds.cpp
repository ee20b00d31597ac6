#include "ccpart/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ccpart {

namespace {
constexpr double kEulerFactor = 1.5819767068693265;  // e / (e - 1)

void check_common(double eps, double beta, std::size_t rho, std::uint64_t config) {
    if (!(eps > 0 && eps < 1)) throw std::domain_error("sample size: eps must lie in (0,1), got " + std::to_string(eps));
    if (!(beta > 0 && beta < 1)) throw std::domain_error("sample size: beta must lie in (0,1), got " + std::to_string(beta));
    if (rho < 1) throw std::domain_error("sample size: rho must be >= 1");
    if (config < 1) throw std::domain_error("sample size: config_count must be >= 1");
}
}  // namespace

void RiskSpec::validate() const {
    if (!(epsilon > 0 && epsilon < 1)) throw std::domain_error("RiskSpec: epsilon must lie in (0,1)");
    if (!(beta > 0 && beta < 1.0 / std::exp(1.0))) throw std::domain_error("RiskSpec: beta must lie in (0, 1/e)");
    if (config_count < 1) throw std::domain_error("RiskSpec: config_count must be >= 1");
}

std::uint64_t config_count_from_binary_dim(std::size_t b) {
    if (b > 62) throw std::domain_error("config_count_from_binary_dim: b too large, pass the count directly");
    return std::uint64_t{1} << b;
}

SampleSizeResult explicit_sample_size(double eps_i, double beta_i, std::size_t rho,
                                      std::uint64_t config_count) {
    check_common(eps_i, beta_i, rho, config_count);
    double v = kEulerFactor / eps_i *
               (std::log(static_cast<double>(config_count) / beta_i) + static_cast<double>(rho) - 1.0);
    double snapped = std::round(v);
    long long K;
    if (std::fabs(v - snapped) <= 1e-9)
        K = static_cast<long long>(snapped);
    else
        K = static_cast<long long>(std::ceil(v));
    K = std::max(K, static_cast<long long>(rho));
    return {K, BoundKind::Explicit, eps_i, beta_i, rho, config_count};
}

double binomial_tail_log(std::size_t rho, long long K, double eps) {
    if (rho < 1) throw std::domain_error("binomial_tail_log: rho must be >= 1");
    if (static_cast<long long>(rho) > K)
        throw std::domain_error("binomial_tail_log: rho = " + std::to_string(rho) +
                                " exceeds K = " + std::to_string(K));
    if (!(eps > 0 && eps < 1)) throw std::domain_error("binomial_tail_log: eps must lie in (0,1)");

    const double log_eps = std::log(eps);
    const double log_1me = std::log1p(-eps);
    const double lgK = std::lgamma(static_cast<double>(K) + 1.0);

    // log-sum-exp over l = 0 .. rho-1
    double max_term = -std::numeric_limits<double>::infinity();
    std::vector<double> terms(rho);
    for (std::size_t l = 0; l < rho; ++l) {
        double dl = static_cast<double>(l);
        double t = lgK - std::lgamma(dl + 1.0) - std::lgamma(static_cast<double>(K) - dl + 1.0) +
                   dl * log_eps + (static_cast<double>(K) - dl) * log_1me;
        terms[l] = t;
        max_term = std::max(max_term, t);
    }
    double acc = 0;
    for (double t : terms) acc += std::exp(t - max_term);
    return max_term + std::log(acc);
}

SampleSizeResult implicit_sample_size(double eps_i, double beta_i, std::size_t rho,
                                      std::uint64_t config_count) {
    check_common(eps_i, beta_i, rho, config_count);
    const double log_beta = std::log(beta_i);
    const double log_cfg = std::log(static_cast<double>(config_count));
    auto holds = [&](long long K) {
        return log_cfg + binomial_tail_log(rho, K, eps_i) <= log_beta;
    };

    long long hi = explicit_sample_size(eps_i, beta_i, rho, config_count).K;
    long long lo = static_cast<long long>(rho);
    if (!holds(hi)) {
        // the explicit bound guarantees the condition; reaching this indicates
        // a numerical pathology
        throw std::runtime_error("implicit_sample_size: explicit bracket K = " + std::to_string(hi) +
                                 " fails the tail condition (eps = " + std::to_string(eps_i) +
                                 ", beta = " + std::to_string(beta_i) + ", rho = " + std::to_string(rho) + ")");
    }
    while (lo < hi) {
        long long mid = lo + (hi - lo) / 2;
        if (holds(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    // certify minimality
    if (lo > static_cast<long long>(rho) && holds(lo - 1))
        throw std::runtime_error("implicit_sample_size: minimality certificate failed at K = " +
                                 std::to_string(lo));
    return {lo, BoundKind::Implicit, eps_i, beta_i, rho, config_count};
}

std::vector<double> allocate_beta(double beta, std::size_t P) {
    if (P < 1) throw std::domain_error("allocate_beta: P must be >= 1");
    return std::vector<double>(P, beta / static_cast<double>(P));
}

}  // namespace ccpart
