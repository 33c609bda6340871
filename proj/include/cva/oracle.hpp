#pragma once

#include <string>
#include <vector>

#include "cva/distribution.hpp"
#include "cva/mechanism.hpp"
#include "cva/simplex.hpp"

namespace cva {

struct LpSolution {
    enum class Status { Optimal, Infeasible, Degenerate };
    Status status = Status::Degenerate;
    double value = 0.0;
    std::vector<double> p, q;
};

// Solve the allocation program directly on a discrete instance: maximize
// sum_k w_k (p_k (s_k - R) - q_k c) over 0 <= q <= p <= 1 with the pairwise
// truth-telling constraints p_k >= p_j - q_j, reduced via an auxiliary
// variable phi = min_k p_k.
LpSolution lp_optimal_mechanism(const DiscreteInstance& inst, double R, double c);

enum class DesignObjective { AgentWin, PrincipalMin, PrincipalMax };

struct DesignResult {
    DiscreteInstance g;
    double value = 0.0;
    bool feasible = false;
};

// Optimize over mass vectors g on the instance grid subject to the linear
// contraction constraints (partial integrated-CDF dominance + equal mean).
// The inner mechanism value is the better of the two closed-branch values,
// each linear in g, so min/max reduce to branch LPs.
DesignResult lp_design(const DiscreteInstance& inst_f, double R, double c,
                       DesignObjective objective);

// Discretize and make sure R + c is a grid point (optimal designs place an
// atom exactly there).
DiscreteInstance oracle_grid(const Distribution& f, int n, double R, double c);

// True when the allocation vector is a two-level step over positive-mass
// points after merging degenerate (zero-mass) grid points.
bool threshold_structure(const LpSolution& sol, const DiscreteInstance& inst,
                         double tol = 1e-6);

std::string oracle_report(const DiscreteInstance& inst, const std::string& objective,
                          double value, const std::vector<double>& masses);

}  // namespace cva
