#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>

#include "ccpart/partition.hpp"
#include "ccpart/rng.hpp"

using namespace ccpart;

namespace {
constexpr double kEuler = 1.5819767068693265;  // e / (e - 1)
}

TEST_CASE("metric values and validation") {
    CostMetric rows = CostMetric::rows(4);
    CHECK(rows.value(IndexSet::of({0, 3}, 4)) == 2.0);

    CostMetric nnz = CostMetric::nnz({3, 5, 7});
    CHECK(nnz.value(IndexSet::of({0, 2}, 3)) == 10.0);

    CostMetric samples = CostMetric::samples(3);
    CHECK(samples.value(IndexSet::of({1}, 3)) == 1.0);
    CHECK(samples.value(IndexSet::full(3)) == 1.0);  // constant-1 metric

    CHECK_THROWS_AS(CostMetric::nnz({3, 0}), std::domain_error);
    CHECK_THROWS_AS(nnz.value(IndexSet::of({0}, 5)), std::invalid_argument);
}

TEST_CASE("sigma formula") {
    CostMetric nnz = CostMetric::nnz({3, 5, 7});
    RhoFn rho = [](const IndexSet& a) { return a.count(); };
    IndexSet a = IndexSet::of({0, 1}, 3);
    double expect = (std::log(4.0 * 3.0 / 1e-3) + 2.0 - 1.0) * 8.0;
    CHECK(sigma(a, 3, 1e-3, 4, rho, nnz) == doctest::Approx(expect).epsilon(1e-14));
    CHECK_THROWS_AS(sigma(IndexSet(3), 1, 1e-3, 1, rho, nnz), std::domain_error);
    CHECK_THROWS_AS(sigma(a, 1, 0.5, 1, rho, nnz), std::domain_error);  // beta >= 1/e
}

TEST_CASE("optimal epsilon matches pairwise ternary search") {
    Rng rng(5150);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t P = 2 + static_cast<std::size_t>(rng.uniform_int(0, 4));
        std::vector<double> s(P);
        for (double& v : s) v = rng.uniform(0.1, 50.0);
        double eps = rng.uniform(0.01, 0.4);

        EpsilonAllocation got = optimal_epsilon(s, eps);
        CHECK(std::accumulate(got.epsilons.begin(), got.epsilons.end(), 0.0) ==
              doctest::Approx(eps).epsilon(1e-12));

        // closed-form identity: J = e/(e-1) * sum sigma_i / eps_i at the optimum
        double direct = 0;
        for (std::size_t i = 0; i < P; ++i) direct += s[i] / got.epsilons[i];
        direct *= kEuler;
        CHECK(std::abs(direct - got.objective) <= 1e-9 * direct);

        // convex objective: cyclic pairwise 1-D minimization converges globally
        std::vector<double> e(P, eps / double(P));
        auto obj = [&] {
            double v = 0;
            for (std::size_t i = 0; i < P; ++i) v += s[i] / e[i];
            return kEuler * v;
        };
        for (int sweep = 0; sweep < 200; ++sweep)
            for (std::size_t i = 0; i < P; ++i)
                for (std::size_t j = i + 1; j < P; ++j) {
                    double tot = e[i] + e[j];
                    double lo = 1e-9, hi = 1.0 - 1e-9;
                    for (int it = 0; it < 200; ++it) {
                        double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
                        auto val = [&](double t) { return s[i] / (t * tot) + s[j] / ((1 - t) * tot); };
                        if (val(m1) < val(m2)) hi = m2;
                        else lo = m1;
                    }
                    e[i] = 0.5 * (lo + hi) * tot;
                    e[j] = tot - e[i];
                }
        CHECK(got.objective == doctest::Approx(obj()).epsilon(1e-7));
        CHECK(got.objective <= obj() + 1e-9 * got.objective);
    }
    CHECK_THROWS_AS(optimal_epsilon({}, 0.1), std::domain_error);
    CHECK_THROWS_AS(optimal_epsilon({1.0, -1.0}, 0.1), std::domain_error);
    CHECK_THROWS_AS(optimal_epsilon({1.0}, 0.0), std::domain_error);
}

TEST_CASE("total_cost against hand computation") {
    GroundSet g{3};
    Partition p;
    p.parts = {IndexSet::of({0, 1}, 3), IndexSet::of({2}, 3)};
    CostMetric nnz = CostMetric::nnz({3, 5, 7});
    RhoFn rho = [](const IndexSet& a) { return a.count(); };
    long long k1 = explicit_sample_size(0.05, 5e-4, 2).K;
    long long k2 = explicit_sample_size(0.05, 5e-4, 1).K;
    double expect = double(k1) * 8.0 + double(k2) * 7.0;
    CHECK(total_cost(p, {0.05, 0.05}, {5e-4, 5e-4}, rho, nnz, 1, BoundKind::Explicit) ==
          doctest::Approx(expect));
    CHECK_THROWS_AS(total_cost(p, {0.05}, {5e-4, 5e-4}, rho, nnz, 1, BoundKind::Explicit),
                    std::invalid_argument);
}

TEST_CASE("reference block costs and the perturbation hook") {
    std::array<long long, 4> cells = block_example_reference_costs();
    CHECK(cells[0] == 90200);
    CHECK(cells[1] == 128270);
    CHECK(cells[2] == 3652590);
    CHECK(cells[3] == 1715090);
    CHECK(block_example_reference_costs(0.01) != cells);
}

namespace {

// two-block support structure: rows 0..r-2 over the first m variables,
// row r-1 over all n
RhoFn block_rho(std::size_t m, std::size_t n, std::size_t r) {
    return [m, n, r](const IndexSet& a) -> std::size_t {
        bool small = false, big = false;
        a.for_each([&](int j) { (static_cast<std::size_t>(j) == r - 1 ? big : small) = true; });
        if (big) return n;
        return small ? m : 0;
    };
}

std::vector<long long> block_nnz(std::size_t m, std::size_t n, std::size_t r) {
    std::vector<long long> v(r, static_cast<long long>(m));
    v[r - 1] = static_cast<long long>(n);
    return v;
}

}  // namespace

TEST_CASE("efficient_partition keeps the trivial plan when splitting hurts") {
    // m=r=10, n=20: reference costs say trivial (90200) beats the split (128270)
    GroundSet g{10};
    AllocatedPlan plan = efficient_partition(g, CostMetric::nnz(block_nnz(10, 20, 10)), 0.05, 1e-3,
                                             8, block_rho(10, 20, 10));
    CHECK(plan.partition.size() == 1);
    CHECK(plan.predicted_cost_explicit == doctest::Approx(90200));
    CHECK(plan.trivial_cost_explicit == doctest::Approx(90200));
    CHECK(plan.continuous_objective == doctest::Approx(plan.trivial_continuous_objective));
}

TEST_CASE("efficient_partition splits the large block instance profitably") {
    GroundSet g{100};
    AllocatedPlan plan = efficient_partition(g, CostMetric::nnz(block_nnz(10, 100, 100)), 0.05,
                                             1e-3, 8, block_rho(10, 100, 100));
    CHECK(plan.trivial_cost_explicit == doctest::Approx(3652590));
    CHECK(plan.predicted_cost_explicit <= 1715090);
    CHECK(plan.predicted_cost_explicit < plan.trivial_cost_explicit);
    CHECK(plan.partition.size() >= 2);
    // allocation consistency on the winner
    CHECK(std::accumulate(plan.epsilons.begin(), plan.epsilons.end(), 0.0) ==
          doctest::Approx(0.05).epsilon(1e-12));
    for (std::size_t i = 0; i < plan.partition.size(); ++i) {
        CHECK(plan.sizes_implicit[i].K <= plan.sizes_explicit[i].K);
        CHECK(plan.betas[i] == doctest::Approx(1e-3 / double(plan.partition.size())));
    }
    CHECK(plan.predicted_cost_implicit <= plan.predicted_cost_explicit);
}
