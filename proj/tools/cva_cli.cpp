#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cva/info_design.hpp"
#include "cva/io.hpp"
#include "cva/mechanism.hpp"
#include "cva/montecarlo.hpp"
#include "cva/multi.hpp"
#include "cva/oracle.hpp"
#include "cva/robust.hpp"
#include "cva/threshold.hpp"

namespace {

using namespace cva;

int cmd_threshold(const std::string& config_path, int agent) {
    ScenarioConfig cfg = load_scenario(config_path);
    if (agent < 1 || agent > static_cast<int>(cfg.scenario.agents.size())) {
        std::cerr << "agent index out of range\n";
        return 2;
    }
    const AgentSpec& a = cfg.scenario.agents[static_cast<size_t>(agent - 1)];
    ThresholdResult tr = solve_threshold(a.prior, a.c);
    std::cout << "s_star = " << format_sig(tr.s_star) << "\n";
    std::cout << "residual = " << format_sig(tr.residual) << "\n";
    std::cout << "s_star - c = " << format_sig(tr.s_star - a.c) << "\n";
    std::cout << "R = " << format_sig(cfg.scenario.R) << "\n";
    std::cout << "mechanism = "
              << (tr.s_star - a.c >= cfg.scenario.R ? "AllocateAlways" : "CheckAboveCutoff")
              << "\n";
    return 0;
}

int cmd_design(const std::string& config_path, const std::string& mode,
               const std::string& out_dir) {
    ScenarioConfig cfg = load_scenario(config_path);
    const Scenario& sc = cfg.scenario;
    std::vector<Distribution> designed;
    if (mode == "agent-optimal") {
        if (sc.agents.size() == 1)
            designed.push_back(agent_optimal_info(sc.agents[0].prior, sc.R, sc.agents[0].c));
        else
            designed = aggregate_agent_optimal(sc);
    } else if (mode == "principal-worst") {
        for (const AgentSpec& a : sc.agents) designed.push_back(principal_worst_info(a.prior));
    } else if (mode == "principal-optimal") {
        if (sc.agents.size() == 1)
            designed.push_back(principal_optimal_info(sc.agents[0].prior));
        else
            designed = principal_optimal_info_multi(sc);
    } else {
        std::cerr << "unknown mode '" << mode << "'\n";
        return 2;
    }
    std::filesystem::create_directories(out_dir);
    std::ofstream csv(out_dir + "/design_report.csv");
    csv << "agent,s_star,principal_payoff,agent_win_prob,agent_optimal,principal_worst,"
           "principal_optimal\n";
    for (size_t i = 0; i < designed.size(); ++i) {
        DesignReport rep =
            design_report(designed[i], sc.agents[i].prior, sc.R, sc.agents[i].c);
        std::ofstream dj(out_dir + "/design_agent" + std::to_string(i + 1) + ".json");
        dj << distribution_to_json(designed[i]);
        csv << (i + 1) << "," << format_sig(rep.s_star) << ","
            << format_sig(rep.principal_payoff) << "," << format_sig(rep.agent_win_prob) << ","
            << (rep.agent_optimal ? 1 : 0) << "," << (rep.principal_worst ? 1 : 0) << ","
            << (rep.principal_optimal ? 1 : 0) << "\n";
    }
    return 0;
}

bool close_to(double a, double b, double tol) { return std::abs(a - b) <= tol; }

int cmd_example1() {
    const double R = 0.4, c = 0.08, tol = 1e-9;
    Distribution F = Distribution::uniform(0, 1);
    Distribution g1_hat = Distribution::point_mass(0.5);
    Distribution g2_hat = pool_interval(F, 0.5, 0.6);
    Distribution g1_tld = Distribution::point_mass(0.5);
    Distribution g2_tld = pool_interval(F, 0.3, 0.8);
    Scenario sc{R, {{F, c}, {F, c}}};

    double t_star = solve_threshold(F, c).s_star;
    double s1 = solve_threshold(g1_hat, c).s_star;
    double s2 = solve_threshold(g2_hat, c).s_star;
    double pay_hat = principal_payoff_multi(sc, {g1_hat, g2_hat});
    double pay_tld = principal_payoff_multi(sc, {g1_tld, g2_tld});
    double pay_null = principal_payoff_multi(
        sc, {Distribution::point_mass(0.5), Distribution::point_mass(0.5)});
    std::vector<double> w_hat = win_probabilities(sc, {g1_hat, g2_hat}, TieRule::LowestIndex);
    std::vector<double> w_tld = win_probabilities(sc, {g1_tld, g2_tld}, TieRule::LowestIndex);
    std::vector<double> w_prior = win_probabilities(sc, {F, F}, TieRule::LowestIndex);

    struct Row {
        const char* name;
        double got;
        double want;
    };
    const Row rows[] = {
        {"t_star", t_star, 0.4},
        {"s_star_delta", s1, 0.58},
        {"s_star_pooled", s2, 0.4},
        {"payoff_profile_A", pay_hat, 0.588},
        {"payoff_profile_B", pay_tld, 0.564},
        {"payoff_null", pay_null, 0.5},
        {"win_A_agent1", w_hat[1], 0.6},
        {"win_A_agent2", w_hat[2], 0.4},
        {"win_B_agent1", w_tld[1], 0.8},
        {"win_B_agent2", w_tld[2], 0.2},
        {"retention_prior", w_prior[0], 0.2304},
        {"win_prior_agent1", w_prior[1], (1.0 - 0.2304) / 2.0},
        {"win_prior_agent2", w_prior[2], (1.0 - 0.2304) / 2.0},
    };
    int bad = 0;
    std::cout << "name,value,expected,ok\n";
    for (const Row& r : rows) {
        bool ok = close_to(r.got, r.want, tol);
        if (!ok) ++bad;
        std::cout << r.name << "," << format_sig(r.got) << "," << format_sig(r.want) << ","
                  << (ok ? 1 : 0) << "\n";
    }
    return bad == 0 ? 0 : 1;
}

int cmd_simulate(const std::string& config_path, std::uint64_t samples, std::uint64_t seed,
                 const std::string& tie, int threads, const std::string& out_path) {
    ScenarioConfig cfg = load_scenario(config_path);
    TieRule rule = tie == "equal" ? TieRule::EqualSplit : TieRule::LowestIndex;
    std::vector<Distribution> profile;
    for (const AgentSpec& a : cfg.scenario.agents) profile.push_back(a.prior);
    McResult res = simulate_fam(cfg.scenario, profile, rule, samples, seed, threads);

    std::ostringstream csv;
    csv << "agent,win_prob_est,win_stderr,principal_payoff_est,payoff_stderr\n";
    for (size_t k = 0; k < res.win_prob.size(); ++k)
        csv << k << "," << format_sig(res.win_prob[k]) << "," << format_sig(res.win_se[k])
            << "," << format_sig(res.payoff_mean) << "," << format_sig(res.payoff_se) << "\n";
    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(out_path, std::ios::binary);
        out << csv.str();
    }
    return 0;
}

int cmd_oracle(const std::string& config_path, int grid_n, const std::string& objective,
               int agent, const std::string& out_path) {
    ScenarioConfig cfg = load_scenario(config_path);
    if (agent < 1 || agent > static_cast<int>(cfg.scenario.agents.size())) {
        std::cerr << "agent index out of range\n";
        return 2;
    }
    const AgentSpec& a = cfg.scenario.agents[static_cast<size_t>(agent - 1)];
    double R = cfg.scenario.R, c = a.c;
    DiscreteInstance inst = oracle_grid(a.prior, grid_n, R, c);
    double n = static_cast<double>(grid_n);

    std::string report;
    bool ok;
    if (objective == "md") {
        LpSolution sol = lp_optimal_mechanism(inst, R, c);
        double closed = principal_payoff(a.prior, R, c);
        ok = sol.status == LpSolution::Status::Optimal &&
             std::abs(sol.value - closed) <= 5.0 / n && threshold_structure(sol, inst);
        report = oracle_report(inst, "md", sol.value, sol.p);
    } else {
        DesignObjective obj;
        double target;
        if (objective == "agent-win") {
            obj = DesignObjective::AgentWin;
            target = agent_win_prob(agent_optimal_info(a.prior, R, c), R, c);
        } else if (objective == "principal-min") {
            obj = DesignObjective::PrincipalMin;
            target = principal_payoff(principal_worst_info(a.prior), R, c);
        } else if (objective == "principal-max") {
            obj = DesignObjective::PrincipalMax;
            target = principal_payoff(a.prior, R, c);
        } else {
            std::cerr << "unknown objective '" << objective << "'\n";
            return 2;
        }
        DesignResult res = lp_design(inst, R, c, obj);
        ok = res.feasible && std::abs(res.value - target) <= 2.0 / n;
        report = oracle_report(inst, objective, res.value, res.g.masses);
    }
    if (out_path.empty()) {
        std::cout << report;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        out << report;
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"allocation-with-costly-verification toolkit"};
    app.require_subcommand(1);

    std::string config_path, mode, out_path, tie = "lowest", objective = "md";
    std::uint64_t samples = 1000000, seed = 1;
    int agent = 1, grid_n = 200, threads = 0;

    CLI::App* th = app.add_subcommand("threshold", "solve the signal threshold equation");
    th->add_option("--config", config_path)->required();
    th->add_option("--agent", agent);

    CLI::App* de = app.add_subcommand("design", "construct information designs");
    de->add_option("--config", config_path)->required();
    de->add_option("--mode", mode)->required();
    de->add_option("--out", out_path)->required();

    app.add_subcommand("example1", "reproduce the built-in two-agent example table");

    CLI::App* si = app.add_subcommand("simulate", "seeded Monte Carlo of the mechanism");
    si->add_option("--config", config_path)->required();
    si->add_option("--samples", samples);
    si->add_option("--seed", seed);
    si->add_option("--tie", tie)->check(CLI::IsMember({"equal", "lowest"}));
    si->add_option("--threads", threads);
    si->add_option("--out", out_path);

    CLI::App* orc = app.add_subcommand("oracle", "LP cross-check on a discretized instance");
    orc->add_option("--config", config_path)->required();
    orc->add_option("--grid", grid_n);
    orc->add_option("--objective", objective)
        ->check(CLI::IsMember({"md", "agent-win", "principal-min", "principal-max"}));
    orc->add_option("--agent", agent);
    orc->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (th->parsed()) return cmd_threshold(config_path, agent);
        if (de->parsed()) return cmd_design(config_path, mode, out_path);
        if (app.get_subcommand("example1")->parsed()) return cmd_example1();
        if (si->parsed()) return cmd_simulate(config_path, samples, seed, tie, threads, out_path);
        if (orc->parsed()) return cmd_oracle(config_path, grid_n, objective, agent, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
