#pragma once

#include <cstddef>
#include <vector>

namespace ccpart {

// min c.x  s.t.  a_i . x <= rhs_i,  lower <= x <= upper  (finite box).
// Dense row-major coefficient storage; built for few variables, many rows.
struct LpProblem {
    std::size_t n = 0;
    std::vector<double> c;
    std::vector<double> lower, upper;
    std::vector<double> a;    // rows() x n, row-major
    std::vector<double> rhs;  // one entry per row

    std::size_t rows() const { return rhs.size(); }
    void add_row(const std::vector<double>& coef, double b);
    void validate() const;
};

enum class LpStatus { Optimal, Infeasible, IterationLimit };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> x;
    double objective = 0;
    double max_residual = 0;    // max_i (a_i.x - rhs_i) / (1 + |a_i|_inf), all rows
    double compl_residual = 0;  // relative duality gap on the final working set
    std::size_t iterations = 0;
    long long infeasible_row = -1;  // a row of an infeasible working set
};

// Row-generation outer loop around a dense two-phase tableau simplex: only
// violated rows enter the working set, so basis work stays near the variable
// dimension instead of the row count.
LpSolution solve_lp_dense(const LpProblem& lp);

}  // namespace ccpart
