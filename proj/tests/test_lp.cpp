#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>

#include "ccpart/lp.hpp"
#include "ccpart/rng.hpp"

using namespace ccpart;

namespace {

// exhaustive vertex enumeration: every n-subset of {rows + box faces} that
// yields a nonsingular system; feasible vertices score the objective
double vertex_oracle(const LpProblem& lp, bool* feasible) {
    const std::size_t n = lp.n;
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    for (std::size_t i = 0; i < lp.rows(); ++i) {
        rows.push_back({lp.a.begin() + static_cast<long>(i * n),
                        lp.a.begin() + static_cast<long>((i + 1) * n)});
        rhs.push_back(lp.rhs[i]);
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> up(n, 0.0), lo(n, 0.0);
        up[j] = 1.0;
        lo[j] = -1.0;
        rows.push_back(up);
        rhs.push_back(lp.upper[j]);
        rows.push_back(lo);
        rhs.push_back(-lp.lower[j]);
    }
    const std::size_t m = rows.size();
    double best = std::numeric_limits<double>::infinity();
    *feasible = false;

    std::vector<std::size_t> pick(n);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t k) {
        if (k == n) {
            Eigen::MatrixXd A(n, n);
            Eigen::VectorXd b(n);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) A(i, j) = rows[pick[i]][j];
                b(i) = rhs[pick[i]];
            }
            Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
            if (!lu.isInvertible()) return;
            Eigen::VectorXd x = lu.solve(b);
            for (std::size_t i = 0; i < m; ++i) {
                double v = -rhs[i];
                for (std::size_t j = 0; j < n; ++j) v += rows[i][j] * x(j);
                if (v > 1e-7) return;
            }
            double obj = 0;
            for (std::size_t j = 0; j < n; ++j) obj += lp.c[j] * x(j);
            *feasible = true;
            best = std::min(best, obj);
            return;
        }
        for (std::size_t i = start; i < m; ++i) {
            pick[k] = i;
            rec(i + 1, k + 1);
        }
    };
    rec(0, 0);
    return best;
}

}  // namespace

TEST_CASE("textbook one-liners") {
    LpProblem lp;
    lp.n = 1;
    lp.c = {-1.0};
    lp.lower = {0.0};
    lp.upper = {1e6};
    lp.add_row({1.0}, 1.0);  // x <= 1
    LpSolution s = solve_lp_dense(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.x[0] == doctest::Approx(1.0));
    CHECK(s.objective == doctest::Approx(-1.0));
    CHECK(s.max_residual <= 1e-7);
    CHECK(s.compl_residual <= 1e-6);
}

TEST_CASE("epigraph of a max") {
    LpProblem lp;
    lp.n = 1;
    lp.c = {1.0};
    lp.lower = {-1e6};
    lp.upper = {1e6};
    double as[] = {0.3, -2.0, 5.5, 1.25, 5.4999};
    for (double a : as) lp.add_row({-1.0}, -a);  // tau >= a
    LpSolution s = solve_lp_dense(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == doctest::Approx(5.5));
}

TEST_CASE("infeasible systems are certified") {
    LpProblem lp;
    lp.n = 1;
    lp.c = {0.0};
    lp.lower = {0.0};
    lp.upper = {10.0};
    lp.add_row({1.0}, 1.0);    // x <= 1
    lp.add_row({-1.0}, -2.0);  // x >= 2
    LpSolution s = solve_lp_dense(lp);
    CHECK(s.status == LpStatus::Infeasible);
    CHECK(s.infeasible_row >= 0);
    CHECK(s.infeasible_row <= 1);
}

TEST_CASE("degenerate overlapping rows still solve") {
    LpProblem lp;
    lp.n = 2;
    lp.c = {-1.0, -1.0};
    lp.lower = {0.0, 0.0};
    lp.upper = {10.0, 10.0};
    for (int k = 0; k < 30; ++k) lp.add_row({1.0, 1.0}, 1.0);  // same face 30 times
    lp.add_row({1.0, 0.0}, 0.6);
    LpSolution s = solve_lp_dense(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == doctest::Approx(-1.0));
}

TEST_CASE("random LPs match the vertex-enumeration oracle") {
    Rng rng(424242);
    int solved = 0;
    for (int trial = 0; trial < 60; ++trial) {
        LpProblem lp;
        lp.n = 2 + static_cast<std::size_t>(rng.uniform_int(0, 3));  // up to 5 vars
        std::size_t m = 3 + static_cast<std::size_t>(rng.uniform_int(0, 17));
        lp.c.resize(lp.n);
        lp.lower.assign(lp.n, -3.0);
        lp.upper.assign(lp.n, 3.0);
        for (double& v : lp.c) v = rng.uniform(-1, 1);
        // interior point keeps the instance feasible by construction
        std::vector<double> x0(lp.n);
        for (double& v : x0) v = rng.uniform(-1, 1);
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<double> a(lp.n);
            double dot = 0;
            for (std::size_t j = 0; j < lp.n; ++j) {
                a[j] = rng.uniform(-1, 1);
                dot += a[j] * x0[j];
            }
            lp.add_row(a, dot + rng.uniform(0.01, 1.5));
        }
        bool feasible = false;
        double expect = vertex_oracle(lp, &feasible);
        REQUIRE(feasible);
        LpSolution s = solve_lp_dense(lp);
        REQUIRE(s.status == LpStatus::Optimal);
        CHECK(s.objective ==
              doctest::Approx(expect).epsilon(1e-6));
        CHECK(s.max_residual <= 1e-7);
        CHECK(s.compl_residual <= 1e-6);
        ++solved;
    }
    CHECK(solved == 60);
}

TEST_CASE("tall instances: many rows, three variables") {
    Rng rng(5);
    LpProblem lp;
    lp.n = 3;
    lp.c = {1.0, 0.5, -0.25};
    lp.lower.assign(3, -2.0);
    lp.upper.assign(3, 2.0);
    for (int i = 0; i < 5000; ++i) {
        std::vector<double> a = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        lp.add_row(a, rng.uniform(0.2, 2.0));  // origin stays feasible
    }
    bool feasible = false;
    LpSolution s = solve_lp_dense(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.max_residual <= 1e-7);
    // oracle on the subset of rows active near the optimum is impractical here;
    // check optimality via a small random neighborhood instead
    for (int t = 0; t < 200; ++t) {
        std::vector<double> x = s.x;
        for (double& v : x) v += rng.uniform(-1e-3, 1e-3);
        bool ok = true;
        for (std::size_t j = 0; j < 3; ++j)
            if (x[j] < lp.lower[j] || x[j] > lp.upper[j]) ok = false;
        for (std::size_t i = 0; i < lp.rows() && ok; ++i) {
            double v = -lp.rhs[i];
            for (std::size_t j = 0; j < 3; ++j) v += lp.a[i * 3 + j] * x[j];
            if (v > 0) ok = false;
        }
        if (!ok) continue;
        double obj = 0;
        for (std::size_t j = 0; j < 3; ++j) obj += lp.c[j] * x[j];
        CHECK(obj >= s.objective - 1e-6);
    }
    (void)feasible;
}

TEST_CASE("input validation") {
    LpProblem lp;
    lp.n = 2;
    lp.c = {1.0, 1.0};
    lp.lower = {0.0, 0.0};
    lp.upper = {1.0, std::numeric_limits<double>::infinity()};
    CHECK_THROWS_AS(solve_lp_dense(lp), std::invalid_argument);
    CHECK_THROWS_AS(lp.add_row({1.0}, 0.0), std::invalid_argument);
}
