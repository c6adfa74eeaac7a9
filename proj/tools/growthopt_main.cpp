// SPDX-License-Identifier: Apache-2.0
//
// growthopt: growth-optimal constant-boundary rebalancing under a
// trade-frequency budget, with Merton benchmarks, discrete-trading
// baselines, efficiency curves and Monte Carlo validation.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "growthopt/baselines.hpp"
#include "growthopt/market.hpp"
#include "growthopt/optimizer.hpp"
#include "growthopt/renewal.hpp"
#include "growthopt/reports.hpp"
#include "growthopt/simulate.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitExhausted = 4;

std::string fmt10(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

// `key = value` config support. The vendored CLI11 only applies config files
// at top level with section headers, so the file is expanded into synthetic
// arguments placed before the explicit flags; TakeLast then gives flags
// precedence over the file.
std::vector<std::string> load_config_args(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("config: cannot read file " + path);
    std::vector<std::string> out;
    std::string line;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    while (std::getline(f, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (!trim(line).empty())
                throw std::invalid_argument("config: expected `key = value`, got: " + line);
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config: empty key in line: " + line);
        out.push_back("--" + key);
        std::istringstream vs(value);  // multi-token values (e.g. policy = a alpha beta b)
        std::string tok;
        while (vs >> tok) out.push_back(tok);
    }
    return out;
}

std::vector<std::string> preprocess_args(int argc, char** argv,
                                         const std::vector<std::string>& subnames) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::size_t sub_at = args.size();
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (std::find(subnames.begin(), subnames.end(), args[i]) != subnames.end()) {
            sub_at = i;
            break;
        }
    }
    if (sub_at == args.size()) return args;
    std::string path;
    for (std::size_t i = sub_at + 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) { path = args[i + 1]; break; }
        if (args[i].rfind("--config=", 0) == 0) { path = args[i].substr(9); break; }
    }
    if (path.empty()) return args;
    const std::vector<std::string> injected = load_config_args(path);
    args.insert(args.begin() + sub_at + 1, injected.begin(), injected.end());
    return args;
}

struct MertonArgs {
    double mu = 0.0, sigma = 0.0;
    std::optional<double> gamma;
    std::string format = "table";
};

int run_merton(const MertonArgs& args) {
    const growthopt::MarketParams mp{args.mu, args.sigma};
    mp.validate();
    const double ratio = growthopt::merton_fraction(mp);
    const double vm = growthopt::merton_growth(mp);

    std::optional<growthopt::CostMertonSolution> cost;
    if (args.gamma) cost = growthopt::merton_with_costs(mp, growthopt::CostRate{*args.gamma});

    if (args.format == "json") {
        json out;
        out["mu"] = args.mu;
        out["sigma"] = args.sigma;
        out["merton_ratio"] = ratio;
        out["growth_rate"] = vm;
        if (cost) {
            out["gamma"] = *args.gamma;
            out["a"] = cost->a;
            out["b"] = cost->b;
            out["growth_rate_with_costs"] = cost->growth_rate;
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "merton_ratio        " << fmt10(ratio) << "\n";
        std::cout << "growth_rate         " << fmt10(vm) << "\n";
        if (cost) {
            std::cout << "gamma               " << fmt10(*args.gamma) << "\n";
            std::cout << "no_trade_lower_a    " << fmt10(cost->a) << "\n";
            std::cout << "no_trade_upper_b    " << fmt10(cost->b) << "\n";
            std::cout << "growth_rate_costs   " << fmt10(cost->growth_rate) << "\n";
        }
    }
    return kExitOk;
}

struct SolveArgs {
    double mu = 0.0, sigma = 0.0, gamma = 0.0, h = 0.0;
};

json solve_to_json(const SolveArgs& args, const growthopt::RelaxedSolution& sol) {
    json out;
    out["mu"] = args.mu;
    out["sigma"] = args.sigma;
    out["gamma"] = args.gamma;
    out["h"] = args.h;
    out["a"] = sol.policy.a;
    out["alpha"] = sol.policy.alpha;
    out["beta"] = sol.policy.beta;
    out["b"] = sol.policy.b;
    out["growth_rate"] = sol.growth_rate;
    out["expected_cycle_time"] = sol.summary.expected_cycle_time;
    out["trade_frequency"] = sol.summary.trade_frequency;
    out["converged"] = sol.converged;
    return out;
}

int run_solve(const SolveArgs& args) {
    const growthopt::MarketParams mp{args.mu, args.sigma};
    const growthopt::RelaxedSolution sol =
        growthopt::solve_relaxed(mp, growthopt::CostRate{args.gamma}, args.h);
    std::cout << solve_to_json(args, sol).dump(2) << "\n";
    return sol.converged ? kExitOk : kExitNoConvergence;
}

struct CurveArgs {
    double mu = 0.0, sigma = 0.0, gamma = 0.0;
    double h_min = 0.02, h_max = 2.0;
    int points = 40;
    std::string out_path, svg_path;
};

int run_curve(const CurveArgs& args) {
    const growthopt::MarketParams mp{args.mu, args.sigma};
    mp.validate();
    const std::vector<double> grid =
        growthopt::log_spaced_grid(args.h_min, args.h_max, args.points);

    std::string csv;
    std::vector<std::pair<std::string, std::vector<double>>> series;
    if (args.gamma == 0.0) {
        const auto rows = growthopt::efficiency_curve(mp, grid);
        csv = growthopt::to_csv(rows);
        std::vector<double> eo, eh, el;
        for (const auto& r : rows) {
            eo.push_back(r.e_o);
            eh.push_back(r.e_h);
            el.push_back(r.e_lambda);
        }
        series = {{"E_o", eo}, {"E_h", eh}, {"E_lambda", el}};
    } else {
        const auto rows =
            growthopt::cost_efficiency_curve(mp, growthopt::CostRate{args.gamma}, grid);
        csv = growthopt::to_csv(rows);
        std::vector<double> eoc;
        for (const auto& r : rows) eoc.push_back(r.e_o_c);
        series = {{"E_o_c", eoc}};
    }

    if (args.out_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream f(args.out_path, std::ios::binary);
        if (!f) throw std::invalid_argument("curve: cannot open output file " + args.out_path);
        f << csv;
    }
    if (!args.svg_path.empty()) {
        std::ofstream f(args.svg_path, std::ios::binary);
        if (!f) throw std::invalid_argument("curve: cannot open svg file " + args.svg_path);
        f << growthopt::svg_line_plot("efficiency vs h", "h", grid, series);
    }
    return kExitOk;
}

struct SimArgs {
    std::optional<double> mu, sigma;
    double gamma = 0.0;
    bool gamma_given = false;
    std::vector<double> policy;  // a alpha beta b
    std::optional<double> h;
    std::string policy_file;
    growthopt::SimConfig cfg;
    std::string format = "table";
};

int run_simulate(SimArgs& args) {
    int sources = 0;
    sources += !args.policy.empty();
    sources += args.h.has_value();
    sources += !args.policy_file.empty();
    if (sources != 1)
        throw std::invalid_argument(
            "simulate: give exactly one of --policy, --h, --policy-file");

    growthopt::BoundaryPolicy policy;
    if (!args.policy_file.empty()) {
        std::ifstream f(args.policy_file);
        if (!f)
            throw std::invalid_argument("simulate: cannot read policy file " +
                                        args.policy_file);
        json in = json::parse(f);
        if (!args.mu) args.mu = in.at("mu").get<double>();
        if (!args.sigma) args.sigma = in.at("sigma").get<double>();
        if (!args.gamma_given && in.contains("gamma")) args.gamma = in.at("gamma").get<double>();
        policy = {in.at("a").get<double>(), in.at("alpha").get<double>(),
                  in.at("beta").get<double>(), in.at("b").get<double>()};
    }
    if (!args.mu || !args.sigma)
        throw std::invalid_argument("simulate: --mu and --sigma are required");
    const growthopt::MarketParams mp{*args.mu, *args.sigma};
    const growthopt::CostRate gamma{args.gamma};

    if (!args.policy.empty())
        policy = {args.policy[0], args.policy[1], args.policy[2], args.policy[3]};
    if (args.h) {
        const growthopt::RelaxedSolution sol = growthopt::solve_relaxed(mp, gamma, *args.h);
        if (!sol.converged) {
            std::cerr << "simulate: policy solve did not converge for h = " << *args.h
                      << "\n";
            return kExitNoConvergence;
        }
        policy = sol.policy;
    }
    policy.validate();

    const growthopt::SimResult sim = growthopt::simulate_policy(policy, mp, gamma, args.cfg);
    const growthopt::RenewalSummary ana = growthopt::policy_growth_rate(policy, mp, gamma);

    const auto z = [](double simv, double anav, double se) {
        return se > 0.0 ? (simv - anav) / se : 0.0;
    };
    const double z_growth = z(sim.growth_rate_mean, ana.growth_rate, sim.growth_rate_se);
    const double z_freq =
        z(sim.trade_frequency_mean, ana.trade_frequency, sim.trade_frequency_se);
    const double z_cycle = z(sim.exit_time_mean, ana.expected_cycle_time, sim.exit_time_se);

    if (args.format == "json") {
        json out;
        out["policy"] = {{"a", policy.a}, {"alpha", policy.alpha},
                         {"beta", policy.beta}, {"b", policy.b}};
        out["growth_rate"] = {{"simulated", sim.growth_rate_mean},
                              {"se", sim.growth_rate_se},
                              {"analytic", ana.growth_rate},
                              {"z", z_growth}};
        out["trade_frequency"] = {{"simulated", sim.trade_frequency_mean},
                                  {"se", sim.trade_frequency_se},
                                  {"analytic", ana.trade_frequency},
                                  {"z", z_freq}};
        out["cycle_time"] = {{"simulated", sim.exit_time_mean},
                             {"se", sim.exit_time_se},
                             {"analytic", ana.expected_cycle_time},
                             {"z", z_cycle}};
        out["paths_used"] = sim.paths_used;
        out["exhausted_fraction"] = sim.exhausted_fraction;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "policy              a=" << fmt10(policy.a)
                  << " alpha=" << fmt10(policy.alpha) << " beta=" << fmt10(policy.beta)
                  << " b=" << fmt10(policy.b) << "\n";
        char line[160];
        std::snprintf(line, sizeof(line), "%-18s %14s %14s %14s %8s\n", "quantity",
                      "simulated", "se", "analytic", "z");
        std::cout << line;
        const auto row = [&](const char* name, double sv, double se, double av, double zz) {
            std::snprintf(line, sizeof(line), "%-18s %14.8g %14.4g %14.8g %+8.2f\n", name,
                          sv, se, av, zz);
            std::cout << line;
        };
        row("growth_rate", sim.growth_rate_mean, sim.growth_rate_se, ana.growth_rate,
            z_growth);
        row("trade_frequency", sim.trade_frequency_mean, sim.trade_frequency_se,
            ana.trade_frequency, z_freq);
        row("cycle_time", sim.exit_time_mean, sim.exit_time_se, ana.expected_cycle_time,
            z_cycle);
        std::cout << "paths_used          " << sim.paths_used << "\n";
        std::cout << "exhausted_fraction  " << fmt10(sim.exhausted_fraction) << "\n";
    }
    return sim.flagged ? kExitExhausted : kExitOk;
}

struct BaselineArgs {
    double mu = 0.0, sigma = 0.0, h = 0.0;
    int order = 8;
    std::string format = "table";
};

int run_baselines(const BaselineArgs& args) {
    const growthopt::MarketParams mp{args.mu, args.sigma};
    const double vm = growthopt::merton_growth(mp);
    const growthopt::BaselineResult hinv = growthopt::h_investor_growth(mp, args.h);
    const growthopt::BaselineResult linv =
        growthopt::lambda_investor_growth(mp, 1.0 / args.h);
    const growthopt::PeriodValue taylor = growthopt::a_of_h_taylor(mp, args.h, args.order);

    if (args.format == "json") {
        json out;
        out["mu"] = args.mu;
        out["sigma"] = args.sigma;
        out["h"] = args.h;
        out["merton_growth"] = vm;
        out["h_investor"] = {{"growth_rate", hinv.growth_rate},
                             {"optimal_fraction", hinv.optimal_fraction},
                             {"efficiency", growthopt::efficiency(hinv.growth_rate, vm)},
                             {"taylor_growth_rate", taylor.value / args.h},
                             {"taylor_order", args.order}};
        out["lambda_investor"] = {{"lambda", linv.h_or_lambda},
                                  {"growth_rate", linv.growth_rate},
                                  {"efficiency", growthopt::efficiency(linv.growth_rate, vm)},
                                  {"method", "asymptotic approximation"}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "merton_growth         " << fmt10(vm) << "\n";
        std::cout << "h_investor_growth     " << fmt10(hinv.growth_rate) << "  (a* = "
                  << fmt10(hinv.optimal_fraction) << ")\n";
        std::cout << "h_investor_taylor     " << fmt10(taylor.value / args.h) << "  (order "
                  << args.order << ")\n";
        std::cout << "h_investor_efficiency " << fmt10(growthopt::efficiency(hinv.growth_rate, vm))
                  << "\n";
        std::cout << "lambda_investor       " << fmt10(linv.growth_rate)
                  << "  (lambda = " << fmt10(linv.h_or_lambda)
                  << ", asymptotic approximation)\n";
        std::cout << "lambda_efficiency     "
                  << fmt10(growthopt::efficiency(linv.growth_rate, vm)) << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"growth-optimal constant-boundary rebalancing with a trade budget"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help");  // keep -h free: --h is a domain flag
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    std::string config_path;  // consumed by preprocess_args; the option is for help/validation

    MertonArgs margs;
    CLI::App* merton = app.add_subcommand("merton", "Merton benchmarks (frictionless and with costs)");
    merton->add_option("--mu", margs.mu, "drift rate")->required();
    merton->add_option("--sigma", margs.sigma, "volatility")->required();
    merton->add_option("--gamma", margs.gamma, "proportional cost fraction");
    merton->add_option("--format", margs.format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));

    SolveArgs sargs;
    CLI::App* solve = app.add_subcommand("solve", "optimal policy for a frequency budget h");

    solve->add_option("--mu", sargs.mu, "drift rate")->required();
    solve->add_option("--sigma", sargs.sigma, "volatility")->required();
    solve->add_option("--gamma", sargs.gamma, "proportional cost fraction")->required();
    solve->add_option("--h", sargs.h, "average inter-trade time budget")->required();

    CurveArgs cargs;
    CLI::App* curve = app.add_subcommand("curve", "efficiency curve over an h grid (CSV)");

    curve->add_option("--mu", cargs.mu, "drift rate")->required();
    curve->add_option("--sigma", cargs.sigma, "volatility")->required();
    curve->add_option("--gamma", cargs.gamma, "proportional cost fraction");
    curve->add_option("--h-min", cargs.h_min, "grid start");
    curve->add_option("--h-max", cargs.h_max, "grid end");
    curve->add_option("--points", cargs.points, "grid size");
    curve->add_option("--out", cargs.out_path, "CSV output file (default stdout)");
    curve->add_option("--svg", cargs.svg_path, "also write an SVG plot");

    SimArgs simargs;
    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo check of a policy");

    simulate->add_option("--mu", simargs.mu, "drift rate");
    simulate->add_option("--sigma", simargs.sigma, "volatility");
    simulate->add_option("--gamma", simargs.gamma, "proportional cost fraction")
        ->each([&](const std::string&) { simargs.gamma_given = true; });
    simulate->add_option("--policy", simargs.policy, "boundaries a alpha beta b")
        ->expected(4);
    simulate->add_option("--h", simargs.h, "solve for this budget, then simulate");
    simulate->add_option("--policy-file", simargs.policy_file,
                         "JSON file as written by `solve`");
    simulate->add_option("--paths", simargs.cfg.paths, "Monte Carlo paths");
    simulate->add_option("--dt", simargs.cfg.dt, "step size");
    simulate->add_option("--horizon", simargs.cfg.horizon, "simulated time per path");
    simulate->add_option("--seed", simargs.cfg.seed, "master seed");
    simulate->add_flag("--bridge,!--no-bridge", simargs.cfg.bridge_correction,
                       "Brownian-bridge crossing correction");
    simulate->add_option("--threads", simargs.cfg.threads, "worker threads (0 = auto)");
    simulate->add_option("--format", simargs.format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));

    BaselineArgs bargs;
    CLI::App* baselines = app.add_subcommand("baselines", "h- and lambda-investor growth rates");

    baselines->add_option("--mu", bargs.mu, "drift rate")->required();
    baselines->add_option("--sigma", bargs.sigma, "volatility")->required();
    baselines->add_option("--h", bargs.h, "rebalancing period")->required();
    baselines->add_option("--order", bargs.order, "Taylor order for the moment expansion");
    baselines->add_option("--format", bargs.format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));

    for (CLI::App* sub : {merton, solve, curve, simulate, baselines}) {
        sub->set_help_flag("--help", "print help");
        sub->add_option("--config", config_path,
                        "`key = value` config file; explicit flags take precedence");
    }

    std::vector<std::string> args;
    try {
        args = preprocess_args(argc, argv,
                               {"merton", "solve", "curve", "simulate", "baselines"});
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    std::reverse(args.begin(), args.end());  // CLI11's vector overload wants reversed args

    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (merton->parsed()) return run_merton(margs);
        if (solve->parsed()) return run_solve(sargs);
        if (curve->parsed()) return run_curve(cargs);
        if (simulate->parsed()) return run_simulate(simargs);
        if (baselines->parsed()) return run_baselines(bargs);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitOk;
}
