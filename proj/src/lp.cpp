#include "ccpart/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ccpart {

namespace {

constexpr double kFeasTol = 1e-7;
constexpr double kPivotTol = 1e-9;
constexpr double kDegenTol = 1e-12;
constexpr std::size_t kIterCap = 100000;
constexpr std::size_t kDegenCap = 1000;

// Dense two-phase tableau simplex for min cost.x, rows a.x <= b, x >= 0.
// Small by construction: the caller only passes the working set.
struct Simplex {
    std::size_t n = 0;          // structural columns
    std::size_t ncols = 0;      // structural + slack + artificial
    std::size_t n_art = 0;
    std::vector<std::vector<double>> tab;  // one row per constraint, width ncols+1
    std::vector<double> obj;               // reduced-cost row, width ncols+1 (last = -objval)
    std::vector<int> basis;                // basic column per row
    std::vector<int> row_tag;              // caller's id per row (survives deletions)
    std::vector<int> sign;                 // +-1: row flipped during normalization
    std::vector<bool> allowed;
    std::size_t iterations = 0;
    std::size_t degenerate = 0;
    bool bland = false;

    enum class Outcome { Optimal, IterationLimit };

    void build(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
               const std::vector<int>& tags) {
        const std::size_t m = a.size();
        n_art = 0;
        for (double bi : b)
            if (bi < 0) ++n_art;
        ncols = n + m + n_art;
        tab.assign(m, std::vector<double>(ncols + 1, 0.0));
        basis.assign(m, -1);
        row_tag = tags;
        sign.assign(m, 1);
        std::size_t art = 0;
        for (std::size_t i = 0; i < m; ++i) {
            double s = b[i] < 0 ? -1.0 : 1.0;
            sign[i] = static_cast<int>(s);
            for (std::size_t j = 0; j < n; ++j) tab[i][j] = s * a[i][j];
            tab[i][n + i] = s;  // slack
            tab[i][ncols] = s * b[i];
            if (s < 0) {
                tab[i][n + m + art] = 1.0;
                basis[i] = static_cast<int>(n + m + art);
                ++art;
            } else {
                basis[i] = static_cast<int>(n + i);
            }
        }
        allowed.assign(ncols, true);
    }

    void price_out(const std::vector<double>& cost) {
        obj.assign(ncols + 1, 0.0);
        for (std::size_t j = 0; j < ncols; ++j) obj[j] = j < cost.size() ? cost[j] : 0.0;
        for (std::size_t i = 0; i < tab.size(); ++i) {
            double cb = basis[i] < static_cast<int>(cost.size()) ? cost[basis[i]] : 0.0;
            if (cb == 0.0) continue;
            for (std::size_t j = 0; j <= ncols; ++j) obj[j] -= cb * tab[i][j];
        }
    }

    void pivot(std::size_t prow, std::size_t pcol) {
        std::vector<double>& pr = tab[prow];
        const double pv = pr[pcol];
        for (double& v : pr) v /= pv;
        pr[pcol] = 1.0;
        for (std::size_t i = 0; i < tab.size(); ++i) {
            if (i == prow) continue;
            double f = tab[i][pcol];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= ncols; ++j) tab[i][j] -= f * pr[j];
            tab[i][pcol] = 0.0;
        }
        double f = obj[pcol];
        if (f != 0.0) {
            for (std::size_t j = 0; j <= ncols; ++j) obj[j] -= f * pr[j];
            obj[pcol] = 0.0;
        }
        basis[prow] = static_cast<int>(pcol);
    }

    Outcome run() {
        while (iterations < kIterCap) {
            // entering column
            long long enter = -1;
            if (bland) {
                for (std::size_t j = 0; j < ncols; ++j)
                    if (allowed[j] && obj[j] < -kPivotTol) {
                        enter = static_cast<long long>(j);
                        break;
                    }
            } else {
                double best = -kPivotTol;
                for (std::size_t j = 0; j < ncols; ++j)
                    if (allowed[j] && obj[j] < best) {
                        best = obj[j];
                        enter = static_cast<long long>(j);
                    }
            }
            if (enter < 0) return Outcome::Optimal;

            // ratio test, ties to the smallest basic index
            long long leave = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < tab.size(); ++i) {
                double aij = tab[i][static_cast<std::size_t>(enter)];
                if (aij <= kPivotTol) continue;
                double ratio = tab[i][ncols] / aij;
                if (ratio < best_ratio - kDegenTol ||
                    (ratio < best_ratio + kDegenTol &&
                     (leave < 0 || basis[i] < basis[static_cast<std::size_t>(leave)])))
                {
                    if (ratio < best_ratio) best_ratio = ratio;
                    leave = static_cast<long long>(i);
                }
            }
            if (leave < 0)
                throw std::runtime_error("solve_lp_dense: unbounded subproblem (missing bounds?)");
            if (best_ratio <= kDegenTol) {
                if (++degenerate > kDegenCap) bland = true;
            }
            pivot(static_cast<std::size_t>(leave), static_cast<std::size_t>(enter));
            ++iterations;
        }
        return Outcome::IterationLimit;
    }
};

}  // namespace

void LpProblem::add_row(const std::vector<double>& coef, double b) {
    if (coef.size() != n) throw std::invalid_argument("LpProblem::add_row: wrong row width");
    a.insert(a.end(), coef.begin(), coef.end());
    rhs.push_back(b);
}

void LpProblem::validate() const {
    if (c.size() != n || lower.size() != n || upper.size() != n)
        throw std::invalid_argument("LpProblem: vector sizes do not match n");
    if (a.size() != rhs.size() * n) throw std::invalid_argument("LpProblem: ragged row storage");
    for (std::size_t j = 0; j < n; ++j)
        if (!(std::isfinite(lower[j]) && std::isfinite(upper[j]) && lower[j] <= upper[j]))
            throw std::invalid_argument("LpProblem: needs a finite box on every variable");
}

LpSolution solve_lp_dense(const LpProblem& lp) {
    lp.validate();
    const std::size_t n = lp.n;
    const std::size_t m_all = lp.rows();

    std::vector<double> width(n);
    for (std::size_t j = 0; j < n; ++j) width[j] = lp.upper[j] - lp.lower[j];

    std::vector<double> row_norm(m_all, 0.0);
    for (std::size_t i = 0; i < m_all; ++i)
        for (std::size_t j = 0; j < n; ++j)
            row_norm[i] = std::max(row_norm[i], std::abs(lp.a[i * n + j]));

    // shifted rhs for x' = x - lower
    std::vector<double> rhs_shift(m_all);
    for (std::size_t i = 0; i < m_all; ++i) {
        double dot = 0;
        for (std::size_t j = 0; j < n; ++j) dot += lp.a[i * n + j] * lp.lower[j];
        rhs_shift[i] = lp.rhs[i] - dot;
    }

    LpSolution sol;
    sol.x.assign(n, 0.0);
    // box-only optimum as the starting point
    std::vector<double> xp(n);
    for (std::size_t j = 0; j < n; ++j) xp[j] = lp.c[j] < 0 ? width[j] : 0.0;

    std::vector<char> in_working(m_all, 0);
    std::vector<std::size_t> working;
    std::size_t total_iter = 0;
    double compl_res = 0;

    const std::size_t outer_cap = m_all + 2;
    for (std::size_t outer = 0; outer < outer_cap; ++outer) {
        // violated rows at the current point
        std::vector<std::pair<double, std::size_t>> violated;
        for (std::size_t i = 0; i < m_all; ++i) {
            if (in_working[i]) continue;
            double v = -rhs_shift[i];
            for (std::size_t j = 0; j < n; ++j) v += lp.a[i * n + j] * xp[j];
            v /= 1.0 + row_norm[i];
            if (v > kFeasTol) violated.push_back({v, i});
        }
        if (violated.empty()) {
            sol.status = LpStatus::Optimal;
            break;
        }
        std::sort(violated.begin(), violated.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        for (std::size_t k = 0; k < violated.size() && k < 8; ++k) {
            in_working[violated[k].second] = 1;
            working.push_back(violated[k].second);
        }

        // working-set subproblem: working rows + upper-bound rows
        std::vector<std::vector<double>> a_sub;
        std::vector<double> b_sub;
        std::vector<int> tags;
        for (std::size_t i : working) {
            std::vector<double> row(lp.a.begin() + static_cast<long>(i * n),
                                    lp.a.begin() + static_cast<long>((i + 1) * n));
            a_sub.push_back(std::move(row));
            b_sub.push_back(rhs_shift[i]);
            tags.push_back(static_cast<int>(i));
        }
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<double> row(n, 0.0);
            row[j] = 1.0;
            a_sub.push_back(std::move(row));
            b_sub.push_back(width[j]);
            tags.push_back(-1);  // bound row
        }
        const std::size_t m = a_sub.size();

        Simplex sx;
        sx.n = n;
        sx.build(a_sub, b_sub, tags);
        sx.iterations = total_iter;
        auto is_artificial = [&](std::size_t i) {
            return sx.basis[i] >= static_cast<int>(n + m);
        };

        if (sx.n_art > 0) {
            std::vector<double> cost1(sx.ncols, 0.0);
            for (std::size_t j = n + m; j < sx.ncols; ++j) cost1[j] = 1.0;
            sx.price_out(cost1);
            if (sx.run() == Simplex::Outcome::IterationLimit) {
                sol.status = LpStatus::IterationLimit;
                sol.iterations = sx.iterations;
                return sol;
            }
            if (-sx.obj[sx.ncols] > kFeasTol) {
                sol.status = LpStatus::Infeasible;
                sol.iterations = sx.iterations;
                // blame a row whose artificial is still positive
                for (std::size_t i = 0; i < sx.tab.size(); ++i)
                    if (is_artificial(i) && sx.tab[i][sx.ncols] > kFeasTol && sx.row_tag[i] >= 0)
                        sol.infeasible_row = sx.row_tag[i];
                if (sol.infeasible_row < 0 && !working.empty())
                    sol.infeasible_row = static_cast<long long>(working.back());
                return sol;
            }
            // drive zero-level artificials out of the basis
            for (std::size_t i = 0; i < sx.tab.size(); ++i) {
                if (!is_artificial(i)) continue;
                long long col = -1;
                for (std::size_t j = 0; j < n + m; ++j)
                    if (std::abs(sx.tab[i][j]) > kPivotTol) {
                        col = static_cast<long long>(j);
                        break;
                    }
                if (col >= 0) sx.pivot(i, static_cast<std::size_t>(col));
            }
            // rows still pinned to an artificial are redundant: delete them
            for (std::size_t i = sx.tab.size(); i-- > 0;) {
                if (!is_artificial(i)) continue;
                sx.tab.erase(sx.tab.begin() + static_cast<long>(i));
                sx.basis.erase(sx.basis.begin() + static_cast<long>(i));
                sx.row_tag.erase(sx.row_tag.begin() + static_cast<long>(i));
                sx.sign.erase(sx.sign.begin() + static_cast<long>(i));
            }
            for (std::size_t j = n + m; j < sx.ncols; ++j) sx.allowed[j] = false;
        }

        std::vector<double> cost2(sx.ncols, 0.0);
        for (std::size_t j = 0; j < n; ++j) cost2[j] = lp.c[j];
        sx.price_out(cost2);
        if (sx.run() == Simplex::Outcome::IterationLimit) {
            sol.status = LpStatus::IterationLimit;
            sol.iterations = sx.iterations;
            return sol;
        }
        total_iter = sx.iterations;

        std::fill(xp.begin(), xp.end(), 0.0);
        for (std::size_t i = 0; i < sx.tab.size(); ++i)
            if (sx.basis[i] < static_cast<int>(n))
                xp[static_cast<std::size_t>(sx.basis[i])] = sx.tab[i][sx.ncols];
        for (std::size_t j = 0; j < n; ++j) xp[j] = std::clamp(xp[j], 0.0, width[j]);

        // relative duality gap from the slack reduced costs; the slack column
        // for subproblem row k sits at n + k with coefficient sign_k
        double primal = 0;
        for (std::size_t j = 0; j < n; ++j) primal += lp.c[j] * xp[j];
        // slack column k carries coefficient sign_k and the tableau rhs is
        // sign_k * b_k, so the signs cancel in the dual objective
        double dual = 0;
        for (std::size_t k = 0; k < m; ++k) dual += -sx.obj[n + k] * b_sub[k];
        compl_res = std::abs(primal - dual) / (1.0 + std::abs(primal));
    }

    if (sol.status != LpStatus::Optimal) {
        sol.status = LpStatus::IterationLimit;  // outer cap exhausted
    }
    sol.iterations = total_iter;
    for (std::size_t j = 0; j < n; ++j) sol.x[j] = lp.lower[j] + xp[j];
    sol.objective = 0;
    for (std::size_t j = 0; j < n; ++j) sol.objective += lp.c[j] * sol.x[j];
    sol.compl_residual = compl_res;
    double max_res = 0;
    for (std::size_t i = 0; i < m_all; ++i) {
        double v = -lp.rhs[i];
        for (std::size_t j = 0; j < n; ++j) v += lp.a[i * n + j] * sol.x[j];
        max_res = std::max(max_res, v / (1.0 + row_norm[i]));
    }
    sol.max_residual = max_res;
    return sol;
}

}  // namespace ccpart
