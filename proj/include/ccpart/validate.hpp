#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccpart/model.hpp"

namespace ccpart {

struct ViolationEntry {
    int part = -1;  // -1 for the total row
    long long violations = 0;
    long long trials = 0;
    double rate = 0;
    double wilson95 = 0;  // one-sided 95% upper bound
};

struct ViolationEstimate {
    std::vector<ViolationEntry> per_part;
    ViolationEntry total;
    std::uint64_t seed = 0;
};

double wilson_upper95(long long violations, long long trials);

// Monte-Carlo estimate of per-part and total violation probabilities of the
// continuous point x (size problem.n) under fresh parameter draws. Chunked
// into 4096-trial blocks with per-chunk substreams, so the result is
// independent of the thread count.
ViolationEstimate empirical_violation(const ProblemSpec& problem, const std::vector<double>& x,
                                      const Partition& partition, long long trials,
                                      std::uint64_t seed, unsigned threads = 1);

// columns part,violations,trials,rate,wilson95; last row TOTAL
std::string violation_csv(const ViolationEstimate& est);

}  // namespace ccpart
