// command-line front end: partition / table1 / validate
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ccpart/bounds.hpp"
#include "ccpart/model.hpp"
#include "ccpart/partition.hpp"
#include "ccpart/rank.hpp"
#include "ccpart/scenario.hpp"
#include "ccpart/validate.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;
using namespace ccpart;

std::string fnv_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

json make_manifest(const std::string& command, const json& params) {
    json m;
    m["command"] = command;
    m["params"] = params;
    m["version"] = kVersion;
    m["hash"] = fnv_hex(command + params.dump());
    return m;
}

// --gen family:key=val,key=val
ProblemSpec parse_gen(const std::string& spec) {
    auto colon = spec.find(':');
    std::string family = spec.substr(0, colon);
    std::map<std::string, std::uint64_t> kv;
    if (colon != std::string::npos) {
        std::stringstream rest(spec.substr(colon + 1));
        std::string item;
        while (std::getline(rest, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos)
                throw std::domain_error("generator spec: expected key=value, got '" + item + "'");
            kv[item.substr(0, eq)] = std::stoull(item.substr(eq + 1));
        }
    }
    auto take = [&](const char* key, std::uint64_t dflt) {
        auto it = kv.find(key);
        if (it == kv.end()) return dflt;
        std::uint64_t v = it->second;
        kv.erase(it);
        return v;
    };
    ProblemSpec p;
    std::uint64_t seed;
    if (family == "block") {
        std::uint64_t m = take("m", 10), n = take("n", 20), r = take("r", 10);
        seed = take("seed", 1);
        p = gen_block_example(m, n, r, seed);
    } else if (family == "production") {
        std::uint64_t m = take("m", 10), machines = take("machines", 20);
        seed = take("seed", 1);
        p = gen_production(m, machines, seed);
    } else if (family == "formation") {
        std::uint64_t agents = take("agents", 2), horizon = take("horizon", 5);
        seed = take("seed", 1);
        p = gen_formation(agents, horizon, seed);
    } else {
        throw std::domain_error("generator spec: unknown family '" + family +
                                "' (block, production, formation)");
    }
    if (!kv.empty())
        throw std::domain_error("generator spec: unknown key '" + kv.begin()->first + "'");
    return p;
}

ProblemSpec load_input(const std::string& gen, const std::string& path) {
    if (!gen.empty()) return parse_gen(gen);
    return load_problem(path);
}

CostMetric make_metric(const std::string& name, const ProblemSpec& p) {
    std::vector<long long> nnz, flops;
    for (const auto& row : p.rows) {
        nnz.push_back(row.nnz);
        flops.push_back(row.flops);
    }
    if (name == "rows") return CostMetric::rows(p.r());
    if (name == "nnz") return CostMetric::nnz(nnz);
    if (name == "flops") return CostMetric::flops(flops);
    if (name == "samples") return CostMetric::samples(p.r());
    throw std::domain_error("unknown metric '" + name + "'");
}

RankOracle make_rho(const std::string& mode, const ProblemSpec& p, std::uint64_t seed) {
    if (mode == "proxy") return RankOracle::support_proxy(p.row_structures(), p.n);
    if (mode == "sampled")
        return RankOracle::sampled_linear(p.row_structures(), p.n, p.coefficient_sampler(), 8,
                                          1e-9, seed);
    throw std::domain_error("unknown rho mode '" + mode + "'");
}

json plan_to_json(const AllocatedPlan& plan, const CostMetric& metric, const RankOracle& rho) {
    json parts = json::array();
    for (std::size_t i = 0; i < plan.partition.parts.size(); ++i) {
        const IndexSet& part = plan.partition.parts[i];
        parts.push_back({{"rows", part.members()},
                         {"rho", rho.rank(part)},
                         {"nu", metric.value(part)},
                         {"eps", plan.epsilons[i]},
                         {"beta", plan.betas[i]},
                         {"K_explicit", plan.sizes_explicit[i].K},
                         {"K_implicit", plan.sizes_implicit[i].K}});
    }
    return json{{"parts", std::move(parts)},
                {"predicted_cost_explicit", plan.predicted_cost_explicit},
                {"predicted_cost_implicit", plan.predicted_cost_implicit},
                {"continuous_objective", plan.continuous_objective},
                {"trivial_continuous_objective", plan.trivial_continuous_objective},
                {"trivial_cost_explicit", plan.trivial_cost_explicit}};
}

void print_plan(const AllocatedPlan& plan, const CostMetric& metric, const RankOracle& rho) {
    std::printf("part  rows                     rho      nu        eps_i      K_exp  K_imp\n");
    for (std::size_t i = 0; i < plan.partition.parts.size(); ++i) {
        const IndexSet& part = plan.partition.parts[i];
        std::string rows = part.to_string();
        if (rows.size() > 24) rows = rows.substr(0, 21) + "...";
        std::printf("%-5zu %-24s %-8zu %-9.0f %-10.6f %-6lld %-6lld\n", i, rows.c_str(),
                    rho.rank(part), metric.value(part), plan.epsilons[i],
                    plan.sizes_explicit[i].K, plan.sizes_implicit[i].K);
    }
    std::printf("predicted cost (explicit): %.0f\n", plan.predicted_cost_explicit);
    std::printf("predicted cost (implicit): %.0f\n", plan.predicted_cost_implicit);
    std::printf("trivial partition cost (explicit): %.0f\n", plan.trivial_cost_explicit);
}

struct CommonOpts {
    std::string gen, problem, metric = "nnz", rho_mode = "proxy";
    double eps = 0, beta = 0;  // 0 = take from problem
    std::size_t pmax = 0;      // 0 = min(r, 8)
    std::uint64_t seed = 1;
    bool as_json = false;
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool metric_required) {
    auto* g = cmd->add_option("--gen", o.gen, "generator spec family:key=value,...");
    auto* f = cmd->add_option("--problem", o.problem, "problem JSON path");
    g->excludes(f);
    f->excludes(g);
    cmd->callback([&o, cmd] {
        if (o.gen.empty() && o.problem.empty())
            throw CLI::RequiredError(cmd->get_name() + ": one of --gen/--problem");
    });
    auto* m = cmd->add_option("--metric", o.metric, "rows|nnz|flops|samples");
    if (metric_required) m->required();
    cmd->add_option("--eps", o.eps, "total violation budget (default: problem's)");
    cmd->add_option("--beta", o.beta, "confidence budget (default: problem's)");
    cmd->add_option("--pmax", o.pmax, "largest partition size tried (default min(r,8))");
    cmd->add_option("--rho", o.rho_mode, "proxy|sampled");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_flag("--json", o.as_json, "machine-readable output");
    cmd->add_option("--out", o.out, "write JSON report to file");
}

struct Prepared {
    ProblemSpec problem;
    CostMetric metric;
    RankOracle rho;
    AllocatedPlan plan;
    double eps, beta;
};

Prepared prepare(const CommonOpts& o) {
    ProblemSpec problem = load_input(o.gen, o.problem);
    CostMetric metric = make_metric(o.metric, problem);
    RankOracle rho = make_rho(o.rho_mode, problem, o.seed);
    double eps = o.eps > 0 ? o.eps : problem.epsilon;
    double beta = o.beta > 0 ? o.beta : problem.beta;
    std::size_t pmax = o.pmax > 0 ? o.pmax : std::min<std::size_t>(problem.r(), 8);
    AllocatedPlan plan = efficient_partition(problem.ground(), metric, eps, beta, pmax,
                                             rho.as_rho_fn(), problem.config_count);
    return {std::move(problem), std::move(metric), std::move(rho), std::move(plan), eps, beta};
}

void emit(const json& report, bool as_json, const std::string& out) {
    if (as_json) std::cout << report.dump(2) << "\n";
    if (!out.empty()) {
        std::ofstream f(out);
        if (!f) throw std::runtime_error("cannot open output file " + out);
        f << report.dump(2) << "\n";
    }
}

int cmd_partition(const CommonOpts& o) {
    Prepared p = prepare(o);
    json params = {{"gen", o.gen},       {"problem", o.problem}, {"metric", o.metric},
                   {"eps", p.eps},       {"beta", p.beta},       {"rho", o.rho_mode},
                   {"seed", o.seed}};
    json report = {{"plan", plan_to_json(p.plan, p.metric, p.rho)},
                   {"manifest", make_manifest("partition", params)}};
    if (!o.as_json) print_plan(p.plan, p.metric, p.rho);
    emit(report, o.as_json, o.out);
    return 0;
}

int cmd_table1(bool as_json, double eps_perturb) {
    const std::array<long long, 4> expected = {90200, 128270, 3652590, 1715090};
    std::array<long long, 4> got = block_example_reference_costs(eps_perturb);
    bool ok = got == expected;
    if (as_json) {
        json report = {{"cells", got},
                       {"expected", expected},
                       {"match", ok},
                       {"manifest", make_manifest("table1", {{"eps_perturb", eps_perturb}})}};
        std::cout << report.dump(2) << "\n";
    } else {
        const char* label[4] = {"m=r=10,n=20 trivial", "m=r=10,n=20 split", "m=10,r=n=100 trivial",
                                "m=10,r=n=100 split"};
        for (int i = 0; i < 4; ++i) {
            if (got[i] == expected[i])
                std::printf("%-22s %lld ok\n", label[i], got[i]);
            else
                std::printf("%-22s %lld MISMATCH (expected %lld)\n", label[i], got[i], expected[i]);
        }
    }
    return ok ? 0 : 1;
}

int cmd_validate(const CommonOpts& o, const std::string& bound_name, long long trials,
                 unsigned threads, const std::string& csv_path) {
    BoundKind bound = bound_name == "explicit" ? BoundKind::Explicit : BoundKind::Implicit;
    if (bound_name != "explicit" && bound_name != "implicit")
        throw std::domain_error("unknown bound '" + bound_name + "'");
    Prepared p = prepare(o);

    ScenarioProgram sp = build_scenario_program(p.problem, p.plan, bound, o.seed);
    Solution sol = p.problem.b == 0 ? solve_lp(sp)
                                    : solve_mixed(sp, p.problem.enumerate_feasible_configs());
    if (sol.status != LpStatus::Optimal) {
        std::fprintf(stderr, "scenario program not solved to optimality\n");
        return 4;
    }

    std::uint64_t val_seed = derive_seed(o.seed, 0x76616cULL);  // fresh stream
    ViolationEstimate est =
        empirical_violation(p.problem, sol.x, p.plan.partition, trials, val_seed, threads);

    std::string csv = violation_csv(est);
    if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        if (!f) throw std::runtime_error("cannot open output file " + csv_path);
        f << csv;
    }

    bool pass = est.total.rate <= p.eps;
    for (std::size_t i = 0; i < est.per_part.size(); ++i)
        if (est.per_part[i].rate > p.plan.epsilons[i]) pass = false;

    json params = {{"gen", o.gen},     {"problem", o.problem}, {"metric", o.metric},
                   {"eps", p.eps},     {"beta", p.beta},       {"bound", bound_name},
                   {"trials", trials}, {"seed", o.seed}};
    if (o.as_json || !o.out.empty()) {
        json per = json::array();
        for (const auto& e : est.per_part)
            per.push_back({{"part", e.part},
                           {"violations", e.violations},
                           {"rate", e.rate},
                           {"wilson95", e.wilson95}});
        json report = {{"objective", sol.objective_value},
                       {"per_part", std::move(per)},
                       {"total_rate", est.total.rate},
                       {"total_wilson95", est.total.wilson95},
                       {"pass", pass},
                       {"manifest", make_manifest("validate", params)}};
        emit(report, o.as_json, o.out);
    }
    if (!o.as_json) {
        std::cout << csv;
        std::printf("objective %.6f\n", sol.objective_value);
        std::printf("%s: total rate %.5f vs eps %.5f\n", pass ? "PASS" : "FAIL", est.total.rate,
                    p.eps);
    }
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"constraint partitioning + scenario sizing toolkit"};
    app.require_subcommand(1);

    CommonOpts part_opts;
    CLI::App* part = app.add_subcommand("partition", "compute a partition and risk allocation");
    add_common(part, part_opts, /*metric_required=*/true);

    bool t1_json = false;
    double t1_perturb = 0.0;
    CLI::App* t1 = app.add_subcommand("table1", "check the reference block-example costs");
    t1->add_flag("--json", t1_json, "machine-readable output");
    t1->add_option("--eps-perturb", t1_perturb, "shift eps (negative-control hook)")
        ->group("");  // hidden

    CommonOpts val_opts;
    val_opts.metric = "samples";
    std::string val_bound = "implicit", val_csv;
    long long val_trials = 100000;
    unsigned val_threads = 1;
    CLI::App* val = app.add_subcommand("validate", "solve a scenario program and estimate violation");
    add_common(val, val_opts, /*metric_required=*/false);
    val->add_option("--bound", val_bound, "explicit|implicit");
    val->add_option("--trials", val_trials, "Monte-Carlo trials")->check(CLI::Range(1LL, (1LL << 40)));
    val->add_option("--threads", val_threads, "worker threads")->envname("SCENARIO_PART_THREADS");
    val->add_option("--csv", val_csv, "write the violation CSV to file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (part->parsed()) return cmd_partition(part_opts);
        if (t1->parsed()) return cmd_table1(t1_json, t1_perturb);
        if (val->parsed()) return cmd_validate(val_opts, val_bound, val_trials, val_threads, val_csv);
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
