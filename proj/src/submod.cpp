#include "ccpart/submod.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "ccpart/rng.hpp"

namespace ccpart {

namespace {

void spot_check_symmetry(const SetFunctionOracle& g, const IndexSet& V) {
    Rng rng(0x53c4a11edull);
    std::vector<int> members = V.members();
    for (int t = 0; t < 3; ++t) {
        IndexSet s(V.universe());
        for (int m : members)
            if (rng.uniform() < 0.5) s.insert(m);
        if (s.is_empty() || s == V) continue;
        double a = g(s), b = g(V.minus(s));
        if (std::fabs(a - b) > 1e-9 * (1.0 + std::fabs(a)))
            throw std::runtime_error("queyranne_minimize: symmetry contract violated at S = " +
                                     s.to_string() + " (g(S) = " + std::to_string(a) +
                                     ", g(V\\S) = " + std::to_string(b) + ")");
    }
}

bool cut_less(double va, const IndexSet& a, double vb, const IndexSet& b) {
    if (va != vb) return va < vb;
    if (a.min_element() != b.min_element()) return a.min_element() < b.min_element();
    return a < b;
}

}  // namespace

MinCutResult queyranne_minimize(const SetFunctionOracle& g, const IndexSet& V) {
    if (V.count() < 2) throw std::domain_error("queyranne_minimize: |V| must be >= 2");
    spot_check_symmetry(g, V);

    // super-elements, kept ordered by their smallest underlying index
    std::vector<IndexSet> super;
    for (int m : V.members()) super.push_back(IndexSet::singleton(m, V.universe()));

    bool have_best = false;
    IndexSet best_cut;
    double best_value = 0;

    while (super.size() > 1) {
        // pendant-pair sweep: u_1 = element with lowest underlying index,
        // then u_i = argmin over remaining x of g(W + x) - g({x})
        std::vector<std::size_t> remaining(super.size());
        for (std::size_t i = 0; i < super.size(); ++i) remaining[i] = i;
        std::vector<std::size_t> order;
        IndexSet w_union(V.universe());

        // super is sorted by min element, so the first entry starts the sweep
        order.push_back(0);
        w_union = super[0];
        remaining.erase(remaining.begin());

        while (!remaining.empty()) {
            std::size_t best_idx = 0;
            double best_key = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < remaining.size(); ++k) {
                const IndexSet& x = super[remaining[k]];
                double key = g(w_union.united(x)) - g(x);
                if (key < best_key ||
                    (key == best_key && x.min_element() < super[remaining[best_idx]].min_element())) {
                    best_key = key;
                    best_idx = k;
                }
            }
            order.push_back(remaining[best_idx]);
            w_union = w_union.united(super[remaining[best_idx]]);
            remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best_idx));
        }

        std::size_t last = order[order.size() - 1];
        std::size_t second_last = order[order.size() - 2];
        const IndexSet candidate = super[last];
        double value = g(candidate);
        if (!have_best || cut_less(value, candidate, best_value, best_cut)) {
            best_value = value;
            best_cut = candidate;
            have_best = true;
        }

        // merge the pendant pair (u_{k-1}, u_k)
        IndexSet merged = super[second_last].united(super[last]);
        std::vector<IndexSet> next;
        next.reserve(super.size() - 1);
        for (std::size_t i = 0; i < super.size(); ++i)
            if (i != last && i != second_last) next.push_back(super[i]);
        next.push_back(merged);
        std::sort(next.begin(), next.end(), [](const IndexSet& a, const IndexSet& b) {
            return a.min_element() < b.min_element();
        });
        super = std::move(next);
    }

    return {best_cut, best_value};
}

SplitResult min_split(const SetFunctionOracle& gamma, const IndexSet& part) {
    if (part.count() < 2) throw std::domain_error("min_split: |part| must be >= 2");

    // symmetric by construction on ground set `part`
    SetFunctionOracle g(gamma.ground(),
                        [&gamma, part](const IndexSet& s) {
                            return gamma(s) + gamma(part.minus(s));
                        },
                        /*memoize=*/true);
    MinCutResult cut = queyranne_minimize(g, part);

    IndexSet s = cut.cut;
    IndexSet t = part.minus(s);
    if (!s.contains(part.min_element())) std::swap(s, t);
    double cost = gamma(s) + gamma(t);  // re-evaluated exactly
    return {part, s, t, cost, cost - gamma(part)};
}

Partition gsa(const SetFunctionOracle& gamma, const GroundSet& ground, std::size_t P) {
    const std::size_t r = ground.size;
    if (P < 2 || P > r) throw std::domain_error("gsa: P must satisfy 2 <= P <= r (P = " +
                                                std::to_string(P) + ", r = " + std::to_string(r) + ")");

    Partition partition;
    partition.parts.push_back(IndexSet::full(r));

    // cache best splits: untouched parts keep their result across rounds
    std::map<IndexSet, SplitResult> split_cache;

    for (std::size_t round = 1; round < P; ++round) {
        const SplitResult* best = nullptr;
        for (const IndexSet& part : partition.parts) {
            if (part.count() < 2) continue;
            auto it = split_cache.find(part);
            if (it == split_cache.end())
                it = split_cache.emplace(part, min_split(gamma, part)).first;
            const SplitResult& cand = it->second;
            if (!best || cand.gain < best->gain ||
                (cand.gain == best->gain && cand.part.min_element() < best->part.min_element()))
                best = &cand;
        }
        if (!best) throw std::logic_error("gsa: no splittable part before reaching P");

        SplitResult chosen = *best;
        std::vector<IndexSet> next;
        for (const IndexSet& part : partition.parts)
            if (part != chosen.part) next.push_back(part);
        next.push_back(chosen.side_s);
        next.push_back(chosen.side_t);
        partition.parts = std::move(next);
        partition.canonicalize();
        split_cache.erase(chosen.part);
    }

    partition.validate(ground);
    return partition;
}

}  // namespace ccpart
