#pragma once

#include "ccpart/index_set.hpp"
#include "ccpart/set_function.hpp"

namespace ccpart {

struct MinCutResult {
    IndexSet cut;  // proper nonempty subset of V
    double value;
};

// Queyranne's pendant-pair procedure for minimizing a symmetric set function g
// over proper nonempty subsets of V. Exact when g is submodular; otherwise the
// best candidate cut produced by the same sweep (a heuristic). Symmetry
// g(S) = g(V \ S) is the caller's contract and is spot-checked on a few sets.
MinCutResult queyranne_minimize(const SetFunctionOracle& g, const IndexSet& V);

struct SplitResult {
    IndexSet part;
    IndexSet side_s;  // contains the smallest index of part
    IndexSet side_t;
    double split_cost;  // gamma(S) + gamma(T)
    double gain;        // split_cost - gamma(part)
};

// Best two-way split of `part` under gamma, via queyranne_minimize applied to
// the symmetrized g(S) = gamma(S) + gamma(part \ S).
SplitResult min_split(const SetFunctionOracle& gamma, const IndexSet& part);

// Greedy splitting: starting from {J}, apply P-1 smallest-gain splits.
// Ties: the part containing the smallest index. Deterministic.
Partition gsa(const SetFunctionOracle& gamma, const GroundSet& ground, std::size_t P);

}  // namespace ccpart
