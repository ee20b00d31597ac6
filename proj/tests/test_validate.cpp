#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "ccpart/validate.hpp"

using namespace ccpart;

namespace {

// two uncertain rows: w - x_0 <= 0 and w - x_1 <= 0 with w ~ U[0,1], so the
// violation probability of row j at x is exactly 1 - x_j
ProblemSpec threshold_problem() {
    ProblemSpec p;
    p.n = 2;
    p.objective = {0, 0};
    p.lower = {0, 0};
    p.upper = {1, 1};
    p.param_names = {"w0", "w1"};
    p.params = {Dist::uniform(0, 1), Dist::uniform(0, 1)};
    for (int j = 0; j < 2; ++j) {
        UncertainRow row;
        row.id = j;
        row.support = IndexSet::singleton(j, 2);
        row.coeffs = {{j, AffineExpr{-1.0, {}}}};
        row.offset = AffineExpr{0.0, {{j, 1.0}}};
        row.nnz = 1;
        row.flops = 2;
        p.rows.push_back(row);
    }
    p.validate();
    return p;
}

Partition singletons() {
    Partition part;
    part.parts = {IndexSet::singleton(0, 2), IndexSet::singleton(1, 2)};
    return part;
}

}  // namespace

TEST_CASE("vacuous constraints never fire") {
    ProblemSpec p = threshold_problem();
    ViolationEstimate est = empirical_violation(p, {1.0, 1.0}, singletons(), 5000, 3);
    CHECK(est.total.violations == 0);
    for (const auto& e : est.per_part) CHECK(e.violations == 0);
}

TEST_CASE("rates track the analytic violation probability") {
    ProblemSpec p = threshold_problem();
    // P(viol row0) = 0.3, P(viol row1) = 0.1, independent
    ViolationEstimate est = empirical_violation(p, {0.7, 0.9}, singletons(), 200000, 9);
    CHECK(est.per_part[0].rate == doctest::Approx(0.3).epsilon(0.02));
    CHECK(est.per_part[1].rate == doctest::Approx(0.1).epsilon(0.03));
    CHECK(est.total.rate == doctest::Approx(1 - 0.7 * 0.9).epsilon(0.02));
    // Wilson upper bound sits above the rate
    for (const auto& e : est.per_part) CHECK(e.wilson95 > e.rate);
}

TEST_CASE("union bound holds exactly per run") {
    ProblemSpec p = threshold_problem();
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
        ViolationEstimate est = empirical_violation(p, {0.5, 0.25}, singletons(), 20000, seed);
        long long sum = 0, mx = 0;
        for (const auto& e : est.per_part) {
            sum += e.violations;
            mx = std::max(mx, e.violations);
        }
        CHECK(est.total.violations <= sum);
        CHECK(est.total.violations >= mx);
    }
}

TEST_CASE("thread count does not change the counts") {
    ProblemSpec p = threshold_problem();
    ViolationEstimate a = empirical_violation(p, {0.6, 0.8}, singletons(), 50000, 17, 1);
    ViolationEstimate b = empirical_violation(p, {0.6, 0.8}, singletons(), 50000, 17, 4);
    ViolationEstimate c = empirical_violation(p, {0.6, 0.8}, singletons(), 50000, 17, 3);
    CHECK(a.total.violations == b.total.violations);
    CHECK(a.total.violations == c.total.violations);
    for (std::size_t i = 0; i < a.per_part.size(); ++i) {
        CHECK(a.per_part[i].violations == b.per_part[i].violations);
        CHECK(a.per_part[i].violations == c.per_part[i].violations);
    }
}

TEST_CASE("wilson upper bound basics") {
    CHECK(wilson_upper95(0, 1000) > 0.0);
    CHECK(wilson_upper95(0, 1000) < 0.01);
    CHECK(wilson_upper95(1000, 1000) == doctest::Approx(1.0));
    CHECK(wilson_upper95(100, 1000) > 0.1);
    CHECK(wilson_upper95(100, 1000) < 0.13);
    // tighter with more trials at the same rate
    CHECK(wilson_upper95(1000, 10000) < wilson_upper95(100, 1000));
}

TEST_CASE("csv report shape") {
    ProblemSpec p = threshold_problem();
    ViolationEstimate est = empirical_violation(p, {0.9, 0.9}, singletons(), 4096, 5);
    std::string csv = violation_csv(est);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "part,violations,trials,rate,wilson95");
    int rows = 0;
    std::string last;
    while (std::getline(in, line))
        if (!line.empty()) {
            ++rows;
            last = line;
        }
    CHECK(rows == 3);
    CHECK(last.rfind("TOTAL,", 0) == 0);
}

TEST_CASE("argument validation") {
    ProblemSpec p = threshold_problem();
    CHECK_THROWS_AS(empirical_violation(p, {0.5, 0.5}, singletons(), 0, 1), std::domain_error);
    CHECK_THROWS_AS(empirical_violation(p, {0.5}, singletons(), 10, 1), std::invalid_argument);
}
