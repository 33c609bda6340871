#include "cva/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace cva {

namespace {

LpSolution::Status map_status(lp::Status st) {
    switch (st) {
        case lp::Status::Optimal: return LpSolution::Status::Optimal;
        case lp::Status::Infeasible: return LpSolution::Status::Infeasible;
        default: return LpSolution::Status::Degenerate;
    }
}

}  // namespace

LpSolution lp_optimal_mechanism(const DiscreteInstance& inst, double R, double c) {
    int n = static_cast<int>(inst.points.size());
    // Variables: p_0..p_{n-1}, q_0..q_{n-1}, phi.
    lp::Problem prob;
    prob.nvars = 2 * n + 1;
    prob.c.assign(prob.nvars, 0.0);
    prob.lb.assign(prob.nvars, 0.0);
    prob.ub.assign(prob.nvars, 1.0);
    for (int k = 0; k < n; ++k) {
        prob.c[k] = inst.masses[k] * (inst.points[k] - R);
        prob.c[n + k] = -inst.masses[k] * c;
    }
    auto add_row = [&](std::vector<double> row, char rel, double b) {
        prob.A.push_back(std::move(row));
        prob.rel.push_back(rel);
        prob.b.push_back(b);
    };
    int phi = 2 * n;
    for (int k = 0; k < n; ++k) {
        std::vector<double> r1(prob.nvars, 0.0);  // phi <= p_k
        r1[phi] = 1.0;
        r1[k] = -1.0;
        add_row(std::move(r1), 'L', 0.0);
        std::vector<double> r2(prob.nvars, 0.0);  // p_k - q_k <= phi
        r2[k] = 1.0;
        r2[n + k] = -1.0;
        r2[phi] = -1.0;
        add_row(std::move(r2), 'L', 0.0);
        std::vector<double> r3(prob.nvars, 0.0);  // q_k <= p_k
        r3[n + k] = 1.0;
        r3[k] = -1.0;
        add_row(std::move(r3), 'L', 0.0);
    }
    lp::Solution sol = lp::solve(prob);
    LpSolution out;
    out.status = map_status(sol.status);
    if (sol.status != lp::Status::Optimal) return out;
    out.value = sol.value;
    out.p.assign(sol.x.begin(), sol.x.begin() + n);
    out.q.assign(sol.x.begin() + n, sol.x.begin() + 2 * n);
    return out;
}

DiscreteInstance oracle_grid(const Distribution& f, int n, double R, double c) {
    DiscreteInstance inst = discretize(f, n);
    double cut = R + c;
    auto it = std::lower_bound(inst.points.begin(), inst.points.end(), cut);
    if (it == inst.points.end() || *it != cut) {
        size_t idx = static_cast<size_t>(it - inst.points.begin());
        inst.points.insert(inst.points.begin() + idx, cut);
        inst.masses.insert(inst.masses.begin() + idx, 0.0);
    }
    return inst;
}

DesignResult lp_design(const DiscreteInstance& inst_f, double R, double c,
                       DesignObjective objective) {
    int n = static_cast<int>(inst_f.points.size());
    const std::vector<double>& x = inst_f.points;
    double mu = inst_f.mean();
    double cut = R + c;

    lp::Problem base;
    base.nvars = n;
    base.lb.assign(n, 0.0);
    base.ub.assign(n, 1.0);
    {
        std::vector<double> ones(n, 1.0);
        base.A.push_back(ones);
        base.rel.push_back('E');
        base.b.push_back(1.0);
        base.A.push_back(x);
        base.rel.push_back('E');
        base.b.push_back(mu);
    }
    // Integrated-CDF dominance at interior grid points:
    // sum_j g_j (x_k - x_j)^+ <= sum_j f_j (x_k - x_j)^+.
    for (int k = 1; k + 1 < n; ++k) {
        std::vector<double> row(n, 0.0);
        double rhs = 0.0;
        for (int j = 0; j < n; ++j) {
            double w = std::max(0.0, x[k] - x[j]);
            row[j] = w;
            rhs += inst_f.masses[j] * w;
        }
        base.A.push_back(std::move(row));
        base.rel.push_back('L');
        base.b.push_back(rhs);
    }

    // Branch value of checking above the cutoff, linear in g.
    std::vector<double> bcoef(n, 0.0), wcoef(n, 0.0);
    for (int j = 0; j < n; ++j)
        if (x[j] >= cut - 1e-12) {
            bcoef[j] = x[j] - c - R;
            wcoef[j] = 1.0;
        }

    auto run = [&](const std::vector<double>& cobj, double scale) -> lp::Solution {
        lp::Problem p = base;
        p.c = cobj;
        if (scale < 0)
            for (double& v : p.c) v = -v;
        return lp::solve(p);
    };
    auto pack = [&](const lp::Solution& sol, double value) -> DesignResult {
        DesignResult res;
        if (sol.status != lp::Status::Optimal) return res;
        res.feasible = true;
        res.value = value;
        res.g.points = x;
        res.g.masses = sol.x;
        return res;
    };

    if (objective == DesignObjective::PrincipalMin) {
        lp::Solution sol = run(bcoef, -1.0);
        if (sol.status != lp::Status::Optimal) return {};
        return pack(sol, std::max(mu - R, -sol.value));
    }
    if (objective == DesignObjective::PrincipalMax) {
        lp::Solution sol = run(bcoef, +1.0);
        if (sol.status != lp::Status::Optimal) return {};
        return pack(sol, std::max(mu - R, sol.value));
    }
    // AgentWin: probability 1 whenever some feasible g makes always-allocating
    // weakly better than checking (ties favor the agent); otherwise the best
    // win probability under the checking branch.
    lp::Solution min_b = run(bcoef, -1.0);
    if (min_b.status != lp::Status::Optimal) return {};
    if (-min_b.value <= mu - R + 1e-12) return pack(min_b, 1.0);
    lp::Solution max_w = run(wcoef, +1.0);
    if (max_w.status != lp::Status::Optimal) return {};
    return pack(max_w, max_w.value);
}

bool threshold_structure(const LpSolution& sol, const DiscreteInstance& inst, double tol) {
    std::vector<double> p;
    for (size_t k = 0; k < inst.points.size(); ++k)
        if (inst.masses[k] > 1e-12) p.push_back(sol.p[k]);
    if (p.empty()) return true;
    double lo = *std::min_element(p.begin(), p.end());
    double hi = *std::max_element(p.begin(), p.end());
    bool seen_hi = false;
    for (double v : p) {
        if (std::abs(v - lo) > tol && std::abs(v - hi) > tol) return false;
        bool is_hi = std::abs(v - hi) <= tol && hi - lo > tol;
        if (seen_hi && !is_hi) return false;  // must be monotone: low block then high block
        if (is_hi) seen_hi = true;
    }
    return true;
}

std::string oracle_report(const DiscreteInstance& inst, const std::string& objective,
                          double value, const std::vector<double>& masses) {
    nlohmann::json j;
    j["objective"] = objective;
    j["value"] = value;
    j["points"] = inst.points;
    j["instance_masses"] = inst.masses;
    j["result_masses"] = masses;
    std::ostringstream os;
    os.precision(17);
    os << j.dump(2) << "\n";
    return os.str();
}

}  // namespace cva
