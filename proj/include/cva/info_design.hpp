#pragma once

#include "cva/distribution.hpp"

namespace cva {

struct DesignReport {
    Distribution designed;
    double s_star;
    double principal_payoff;
    double agent_win_prob;
    bool agent_optimal;
    bool principal_worst;
    bool principal_optimal;
};

// Unique x with E_F[t | t in [x, hi]] = R + c.  Requires mean(F) < R,
// positive density, and R + c < hi (throws "zero upper mass" at the boundary).
double s_dagger(const Distribution& f, double R, double c);

// Signal distribution maximizing the agent's win probability: delta(mu) when
// mu >= R, otherwise F below s-dagger with the upper tail pooled into an atom
// at R + c.
Distribution agent_optimal_info(const Distribution& f, double R, double c);
bool is_agent_optimal(const Distribution& g, const Distribution& f, double R, double c);

Distribution principal_worst_info(const Distribution& f);
bool is_principal_worst(const Distribution& g, const Distribution& f, double R, double c);

Distribution principal_optimal_info(const Distribution& f);
bool is_principal_optimal(const Distribution& g, const Distribution& f, double R, double c);

DesignReport design_report(const Distribution& g, const Distribution& f, double R, double c);

}  // namespace cva
