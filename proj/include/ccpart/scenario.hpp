#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccpart/lp.hpp"
#include "ccpart/model.hpp"
#include "ccpart/partition.hpp"

namespace ccpart {

// One sampled instantiation block plus deterministic rows, assembled from a
// plan. Continuous columns may extend past the original n with epigraph
// variables when the source problem has a diagonal quadratic cost.
struct ScenarioProgram {
    std::size_t n = 0;       // continuous columns incl. epigraph extras
    std::size_t n_orig = 0;  // columns of the source problem
    std::size_t b = 0;
    std::vector<double> objective, lower, upper;

    // sampled rows: x-only, coef.x <= rhs
    std::vector<double> coef;  // sampled_rows() x n, row-major
    std::vector<double> rhs;
    std::vector<int> row_part;  // part index per sampled row
    std::vector<int> row_id;    // source row id per sampled row
    std::vector<int> row_draw;  // draw index within the part

    // deterministic rows over (x, y): y columns stored sparsely
    struct DetBlock {
        std::vector<double> xcoef;               // over n columns
        std::vector<std::pair<int, double>> y;   // (binary index, coefficient)
        double rhs = 0;
    };
    std::vector<DetBlock> det;

    std::uint64_t seed = 0;
    std::vector<long long> draws_per_part;

    std::size_t sampled_rows() const { return rhs.size(); }
};

struct Solution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> x;  // first n_orig entries of the continuous optimizer
    std::vector<int> y;     // empty when b = 0
    double objective_value = 0;
    double max_residual = 0;
    double compl_residual = 0;
    long long infeasible_row = -1;
};

// Instantiates each part's rows at K_i fresh parameter draws (independent
// substream per part derived from `seed`), appends deterministic rows once,
// and replaces any diagonal quadratic cost by a 16-cut tangent majorant.
ScenarioProgram build_scenario_program(const ProblemSpec& problem, const AllocatedPlan& plan,
                                       BoundKind bound, std::uint64_t seed);

// b = 0 only.
Solution solve_lp(const ScenarioProgram& sp);

// One continuous solve per feasible binary configuration; best objective wins,
// ties (1e-9) broken by lexicographically smallest y.
Solution solve_mixed(const ScenarioProgram& sp, const std::vector<std::vector<int>>& configs);

// Columnar JSON (schema 1), for determinism checks.
std::string scenario_program_to_json(const ScenarioProgram& sp);

}  // namespace ccpart
