#pragma once

#include <random>
#include <vector>

#include "cva/distribution.hpp"
#include "cva/mechanism.hpp"

namespace cva {

struct AgentSpec {
    Distribution prior;
    double c;
};

struct Scenario {
    double R;
    std::vector<AgentSpec> agents;
    // lo(F_i) < R < hi(F_i) and R + c_i <= hi(F_i) for all i.
    bool assumptions_hold() const;
};

enum class TieRule { EqualSplit, LowestIndex };

// favored = 0 means the principal; then v_star = R.
struct FavoredAgentMechanism {
    int favored;
    double v_star;
    TieRule tie_rule;
};

struct FamResult {
    int winner;  // 0 = principal retains
    bool checked;
    double principal_value;  // gross: winner's s - c if checked, s if unchecked, R if retained
    std::vector<Outcome> outcomes;
};

// Pick the favored agent: argmax of s_i* - c_i if that max reaches R
// (ties -> lowest index), otherwise the principal.
FavoredAgentMechanism favored_agent_mechanism(const Scenario& sc,
                                              const std::vector<Distribution>& profile,
                                              TieRule tie = TieRule::LowestIndex);

// One play of the mechanism at a realized signal profile.  EqualSplit ties
// consume one draw from rng; LowestIndex ignores it.
FamResult run_fam(const FavoredAgentMechanism& m, const Scenario& sc,
                  const std::vector<double>& s_profile, std::mt19937_64* rng = nullptr);

// Exact expected gross principal payoff (tie rule is payoff-neutral).
double principal_payoff_multi(const Scenario& sc, const std::vector<Distribution>& profile);

// index 0 = principal retention probability, then one entry per agent.
// Under EqualSplit a tie among favored-agent candidates averages over them.
std::vector<double> win_probabilities(const Scenario& sc,
                                      const std::vector<Distribution>& profile,
                                      TieRule tie);

// Profile maximizing the sum of agents' win probabilities; common c required.
std::vector<Distribution> aggregate_agent_optimal(const Scenario& sc);
bool is_aggregate_agent_optimal(const Scenario& sc, const std::vector<Distribution>& profile);

// Gross principal payoff under principal-worst information: max(R, mu_1, ..., mu_I).
double y_m(const Scenario& sc);
double y_m_net(const Scenario& sc);  // same, net of the reserve R

// Best recipient by expected value alone: 0 = principal; ties -> principal,
// then lowest agent index.
int robust_mechanism_multi(const std::vector<double>& means, double R);

std::vector<Distribution> principal_optimal_info_multi(const Scenario& sc);

// Change in agent i's win probability when it deviates from profile[i] to
// g_dev; the mechanism is recomputed under the deviation.
double acquisition_deviation_gain(const Scenario& sc, const std::vector<Distribution>& profile,
                                  int i, const Distribution& g_dev, TieRule tie);

}  // namespace cva
