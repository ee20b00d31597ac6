#include "ccpart/validate.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ccpart {

double wilson_upper95(long long violations, long long trials) {
    if (trials <= 0) return 1.0;
    const double z = 1.644853626951473;  // one-sided 95%
    const double nt = static_cast<double>(trials);
    const double p = static_cast<double>(violations) / nt;
    const double z2 = z * z;
    double denom = 1.0 + z2 / nt;
    double center = (p + z2 / (2.0 * nt)) / denom;
    double margin = z * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt)) / denom;
    return std::min(1.0, center + margin);
}

ViolationEstimate empirical_violation(const ProblemSpec& problem, const std::vector<double>& x,
                                      const Partition& partition, long long trials,
                                      std::uint64_t seed, unsigned threads) {
    if (trials < 1) throw std::domain_error("empirical_violation: trials must be >= 1");
    if (x.size() < problem.n)
        throw std::invalid_argument("empirical_violation: x shorter than problem dimension");
    partition.validate(problem.ground());
    if (threads == 0) threads = 1;

    const std::size_t P = partition.parts.size();
    std::vector<int> part_of_row(problem.r(), -1);
    for (std::size_t i = 0; i < P; ++i)
        partition.parts[i].for_each([&](int j) { part_of_row[static_cast<std::size_t>(j)] = static_cast<int>(i); });

    constexpr long long kChunk = 4096;
    const long long n_chunks = (trials + kChunk - 1) / kChunk;
    // per-chunk counts, reduced in chunk order afterwards
    std::vector<std::vector<long long>> part_hits(static_cast<std::size_t>(n_chunks),
                                                  std::vector<long long>(P, 0));
    std::vector<long long> total_hits(static_cast<std::size_t>(n_chunks), 0);

    auto run_chunk = [&](long long c) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(c) + 1));
        const long long lo = c * kChunk;
        const long long count = std::min(kChunk, trials - lo);
        std::vector<char> part_hit(P);
        for (long long t = 0; t < count; ++t) {
            std::vector<double> w = problem.sample_params(rng);
            std::fill(part_hit.begin(), part_hit.end(), 0);
            bool any = false;
            for (std::size_t j = 0; j < problem.r(); ++j) {
                if (problem.row_value(j, x, w) > 1e-12) {
                    part_hit[static_cast<std::size_t>(part_of_row[j])] = 1;
                    any = true;
                }
            }
            if (any) ++total_hits[static_cast<std::size_t>(c)];
            for (std::size_t i = 0; i < P; ++i)
                if (part_hit[i]) ++part_hits[static_cast<std::size_t>(c)][i];
        }
    };

    if (threads == 1 || n_chunks == 1) {
        for (long long c = 0; c < n_chunks; ++c) run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (long long c = t; c < n_chunks; c += threads) run_chunk(c);
            });
        for (auto& th : pool) th.join();
    }

    ViolationEstimate est;
    est.seed = seed;
    est.per_part.resize(P);
    for (std::size_t i = 0; i < P; ++i) {
        ViolationEntry& e = est.per_part[i];
        e.part = static_cast<int>(i);
        e.trials = trials;
        for (long long c = 0; c < n_chunks; ++c) e.violations += part_hits[static_cast<std::size_t>(c)][i];
        e.rate = static_cast<double>(e.violations) / static_cast<double>(trials);
        e.wilson95 = wilson_upper95(e.violations, trials);
    }
    est.total.part = -1;
    est.total.trials = trials;
    for (long long c = 0; c < n_chunks; ++c) est.total.violations += total_hits[static_cast<std::size_t>(c)];
    est.total.rate = static_cast<double>(est.total.violations) / static_cast<double>(trials);
    est.total.wilson95 = wilson_upper95(est.total.violations, trials);
    return est;
}

std::string violation_csv(const ViolationEstimate& est) {
    std::ostringstream out;
    out.precision(10);
    out << "part,violations,trials,rate,wilson95\n";
    for (const ViolationEntry& e : est.per_part)
        out << e.part << "," << e.violations << "," << e.trials << "," << e.rate << ","
            << e.wilson95 << "\n";
    out << "TOTAL," << est.total.violations << "," << est.total.trials << "," << est.total.rate
        << "," << est.total.wilson95 << "\n";
    return out.str();
}

}  // namespace ccpart
