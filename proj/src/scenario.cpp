#include "ccpart/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace ccpart {

ScenarioProgram build_scenario_program(const ProblemSpec& problem, const AllocatedPlan& plan,
                                       BoundKind bound, std::uint64_t seed) {
    plan.partition.validate(problem.ground());
    const std::vector<SampleSizeResult>& sizes =
        bound == BoundKind::Explicit ? plan.sizes_explicit : plan.sizes_implicit;
    if (sizes.size() != plan.partition.parts.size())
        throw std::invalid_argument("build_scenario_program: plan has no sample sizes attached");

    ScenarioProgram sp;
    sp.n_orig = problem.n;
    sp.b = problem.b;
    sp.seed = seed;

    // quadratic cost -> epigraph variables with tangent cuts
    std::vector<int> epi_col(problem.n, -1);
    std::size_t extras = 0;
    if (!problem.quad_diag.empty())
        for (std::size_t c = 0; c < problem.n; ++c)
            if (problem.quad_diag[c] > 0) epi_col[c] = static_cast<int>(problem.n + extras++);
    sp.n = problem.n + extras;

    sp.objective = problem.objective;
    sp.lower = problem.lower;
    sp.upper = problem.upper;
    sp.objective.resize(sp.n, 1.0);
    for (std::size_t c = 0; c < problem.n; ++c) {
        if (epi_col[c] < 0) continue;
        double q = problem.quad_diag[c];
        double m2 = std::max(problem.lower[c] * problem.lower[c],
                             problem.upper[c] * problem.upper[c]);
        sp.lower.push_back(-(q * m2 + 1.0));
        sp.upper.push_back(q * m2 + 1.0);
        constexpr int kCuts = 16;
        for (int t = 0; t < kCuts; ++t) {
            double p = problem.lower[c] +
                       (problem.upper[c] - problem.lower[c]) * t / double(kCuts - 1);
            // q x^2 >= 2 q p x - q p^2, epigraph z >= tangent
            ScenarioProgram::DetBlock cut;
            cut.xcoef.assign(sp.n, 0.0);
            cut.xcoef[c] = 2.0 * q * p;
            cut.xcoef[static_cast<std::size_t>(epi_col[c])] = -1.0;
            cut.rhs = q * p * p;
            sp.det.push_back(std::move(cut));
        }
    }

    // sampled blocks, one independent substream per part
    for (std::size_t i = 0; i < plan.partition.parts.size(); ++i) {
        const long long K = sizes[i].K;
        std::vector<int> ids = plan.partition.parts[i].members();
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i) + 1));
        sp.draws_per_part.push_back(K);
        for (long long j = 0; j < K; ++j) {
            std::vector<double> w = problem.sample_params(rng);
            for (int id : ids) {
                const UncertainRow& row = problem.rows.at(static_cast<std::size_t>(id));
                std::size_t base = sp.coef.size();
                sp.coef.resize(base + sp.n, 0.0);
                for (const auto& [col, expr] : row.coeffs) {
                    double v = expr.eval(w);
                    if (!std::isfinite(v))
                        throw std::runtime_error("build_scenario_program: sampler failure on row " +
                                                 std::to_string(id));
                    sp.coef[base + static_cast<std::size_t>(col)] = v;
                }
                sp.rhs.push_back(-row.offset.eval(w));
                sp.row_part.push_back(static_cast<int>(i));
                sp.row_id.push_back(id);
                sp.row_draw.push_back(static_cast<int>(j));
            }
        }
    }

    // deterministic rows appended once
    for (const DetRow& row : problem.det_rows) {
        ScenarioProgram::DetBlock blk;
        blk.xcoef.assign(sp.n, 0.0);
        for (auto [col, c] : row.coeffs) {
            if (col < static_cast<int>(problem.n))
                blk.xcoef[static_cast<std::size_t>(col)] = c;
            else
                blk.y.push_back({col - static_cast<int>(problem.n), c});
        }
        blk.rhs = -row.offset;
        sp.det.push_back(std::move(blk));
    }
    return sp;
}

namespace {

LpProblem assemble(const ScenarioProgram& sp, const std::vector<int>& y) {
    LpProblem lp;
    lp.n = sp.n;
    lp.c = sp.objective;
    lp.lower = sp.lower;
    lp.upper = sp.upper;
    lp.a = sp.coef;
    lp.rhs = sp.rhs;
    for (const auto& blk : sp.det) {
        double rhs = blk.rhs;
        for (auto [k, c] : blk.y) rhs -= c * static_cast<double>(y.at(static_cast<std::size_t>(k)));
        lp.add_row(blk.xcoef, rhs);
    }
    return lp;
}

Solution from_lp(const ScenarioProgram& sp, const LpSolution& ls, std::vector<int> y) {
    Solution s;
    s.status = ls.status;
    s.objective_value = ls.objective;
    s.max_residual = ls.max_residual;
    s.compl_residual = ls.compl_residual;
    s.infeasible_row = ls.infeasible_row;
    if (ls.status == LpStatus::Optimal)
        s.x.assign(ls.x.begin(), ls.x.begin() + static_cast<long>(sp.n_orig));
    s.y = std::move(y);
    return s;
}

}  // namespace

Solution solve_lp(const ScenarioProgram& sp) {
    if (sp.b != 0) throw std::invalid_argument("solve_lp: program has binary variables");
    return from_lp(sp, solve_lp_dense(assemble(sp, {})), {});
}

Solution solve_mixed(const ScenarioProgram& sp, const std::vector<std::vector<int>>& configs) {
    if (sp.b == 0) return solve_lp(sp);
    std::vector<std::vector<int>> order = configs;
    std::sort(order.begin(), order.end());
    Solution best;
    best.status = LpStatus::Infeasible;
    bool have = false;
    for (const std::vector<int>& y : order) {
        if (y.size() != sp.b)
            throw std::invalid_argument("solve_mixed: configuration has wrong binary dimension");
        LpSolution ls = solve_lp_dense(assemble(sp, y));
        if (ls.status == LpStatus::IterationLimit && !have) best.status = LpStatus::IterationLimit;
        if (ls.status != LpStatus::Optimal) continue;
        // lex order makes "first strict improvement" the canonical tie-break
        if (!have || ls.objective < best.objective_value - 1e-9) {
            best = from_lp(sp, ls, y);
            have = true;
        }
    }
    return best;
}

std::string scenario_program_to_json(const ScenarioProgram& sp) {
    nlohmann::json j;
    j["schema"] = 1;
    j["n"] = sp.n;
    j["n_orig"] = sp.n_orig;
    j["b"] = sp.b;
    j["seed"] = sp.seed;
    j["objective"] = sp.objective;
    j["lower"] = sp.lower;
    j["upper"] = sp.upper;
    j["draws_per_part"] = sp.draws_per_part;
    j["sampled"] = {{"part", sp.row_part},
                    {"row", sp.row_id},
                    {"draw", sp.row_draw},
                    {"rhs", sp.rhs},
                    {"coef", sp.coef}};
    nlohmann::json det = nlohmann::json::array();
    for (const auto& blk : sp.det) {
        nlohmann::json yj = nlohmann::json::array();
        for (auto [k, c] : blk.y) yj.push_back({{"bin", k}, {"coef", c}});
        det.push_back({{"xcoef", blk.xcoef}, {"y", std::move(yj)}, {"rhs", blk.rhs}});
    }
    j["det"] = std::move(det);
    return j.dump();
}

}  // namespace ccpart
