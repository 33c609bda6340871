#pragma once

#include <vector>

#include "cva/distribution.hpp"

namespace cva {

enum class MechanismKind { AllocateAlways, CheckAboveCutoff };

// Single-agent benchmark mechanism: allocate unchecked to everyone, or check
// and allocate exactly the reports at or above cutoff = R + c.
// Ties (s* - c = R, and s = cutoff) resolve in the agent's favor.
struct SingleMechanism {
    MechanismKind kind;
    double cutoff;  // meaningful for CheckAboveCutoff only
    double reserve;
    double check_cost;
};

struct Outcome {
    bool assigned;
    bool checked;
    // Net of the reserve: (s - R) * assigned - c * checked; retention gives 0.
    double principal_gain;
};

// Grid mechanism shared with the LP oracle.
struct DirectMechanism {
    std::vector<double> grid;
    std::vector<double> p;  // allocation probability
    std::vector<double> q;  // checking probability
};

SingleMechanism optimal_mechanism(const Distribution& g, double R, double c);
double principal_payoff(const Distribution& g, double R, double c);
double agent_win_prob(const Distribution& g, double R, double c);
Outcome allocate(const SingleMechanism& m, double s);

// Feasibility of (p, q): 0 <= q <= p <= 1 and p(s) >= p(s') - q(s') pairwise.
bool ic_check(const DirectMechanism& dm, double tol = 1e-9);

// The Prop.-style two-case mechanism expressed on a grid.
DirectMechanism as_direct(const SingleMechanism& m, const std::vector<double>& grid);

}  // namespace cva
