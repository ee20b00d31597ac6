#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ccpart/index_set.hpp"
#include "ccpart/rank.hpp"
#include "ccpart/rng.hpp"

namespace ccpart {

// Scalar distribution for one uncertain parameter.
struct Dist {
    enum class Type { Const, Uniform };
    Type type = Type::Const;
    double a = 0;  // Const: value; Uniform: lower endpoint
    double b = 0;  // Uniform: upper endpoint

    static Dist constant(double v) { return {Type::Const, v, v}; }
    static Dist uniform(double lo, double hi);
    double sample(Rng& rng) const;
    bool contains(double v) const;
};

// c0 + sum_k coef_k * param_k
struct AffineExpr {
    double constant = 0;
    std::vector<std::pair<int, double>> terms;  // (param index, coefficient)

    double eval(std::span<const double> params) const;
    bool is_constant() const { return terms.empty(); }
};

// Uncertain constraint row: sum_c coeff_c(w) * x_c + offset(w) <= 0.
struct UncertainRow {
    int id = 0;
    IndexSet support;  // continuous variables with a (possibly) nonzero coefficient
    long long nnz = 0;
    long long flops = 0;
    std::vector<std::pair<int, AffineExpr>> coeffs;  // (continuous column, coefficient)
    AffineExpr offset;
};

// Deterministic row over (x, y): columns >= n address binary variables.
struct DetRow {
    std::vector<std::pair<int, double>> coeffs;
    double offset = 0;  // sum coeffs * vars + offset <= 0
};

struct ProblemSpec {
    std::size_t n = 0;  // continuous dimension
    std::size_t b = 0;  // binary dimension
    std::uint64_t config_count = 1;
    double epsilon = 0.1;
    double beta = 1e-3;
    std::vector<double> objective;  // linear cost over continuous variables
    std::vector<double> quad_diag;  // optional diagonal quadratic cost (empty or size n)
    std::vector<std::string> param_names;
    std::vector<Dist> params;
    std::vector<UncertainRow> rows;
    std::vector<DetRow> det_rows;
    std::vector<double> lower, upper;  // continuous variable bounds
    std::string generator;             // provenance

    std::size_t r() const { return rows.size(); }
    GroundSet ground() const { return {rows.size()}; }
    std::vector<RowStructure> row_structures() const;

    std::vector<double> sample_params(Rng& rng) const;
    // f_j(x, y, w) for uncertain row j
    double row_value(std::size_t j, std::span<const double> x,
                     std::span<const double> params) const;

    CoefficientSampler coefficient_sampler() const;

    // binary vectors satisfying every deterministic row that touches only y
    std::vector<std::vector<int>> enumerate_feasible_configs() const;

    void validate() const;
};

// Example-1 block structure: rows 0..r-2 supported on the first m columns,
// row r-1 fully supported; all coefficients independently uniform nonzero.
ProblemSpec gen_block_example(std::size_t m, std::size_t n, std::size_t r, std::uint64_t seed);

// Production planning: `machines` uncertain capacity rows plus one worst-case
// cost epigraph row over (x1, x2, tau).
ProblemSpec gen_production(std::size_t m, std::size_t machines, std::uint64_t seed);

// Multi-agent formation planning at desk scale (agents in {2,3}, horizon <= 8):
// formation rows, input rows, Big-M assignment rows, quadratic input cost.
ProblemSpec gen_formation(std::size_t agents, std::size_t horizon, std::uint64_t seed);

std::string problem_to_json(const ProblemSpec& spec);
ProblemSpec problem_from_json(const std::string& text);
void save_problem(const ProblemSpec& spec, const std::string& path);
ProblemSpec load_problem(const std::string& path);

bool operator==(const ProblemSpec& a, const ProblemSpec& b);

}  // namespace ccpart
