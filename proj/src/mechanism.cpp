#include "cva/mechanism.hpp"

#include <algorithm>
#include <stdexcept>

#include "cva/threshold.hpp"

namespace cva {

SingleMechanism optimal_mechanism(const Distribution& g, double R, double c) {
    if (c < 0.0) throw std::invalid_argument("optimal_mechanism: c < 0");
    double s_star = solve_threshold(g, c).s_star;
    if (s_star - c >= R) return {MechanismKind::AllocateAlways, 0.0, R, c};
    return {MechanismKind::CheckAboveCutoff, R + c, R, c};
}

double principal_payoff(const Distribution& g, double R, double c) {
    SingleMechanism m = optimal_mechanism(g, R, c);
    if (m.kind == MechanismKind::AllocateAlways) return g.mean() - R;
    // Atom at the cutoff is included; its integrand is zero there.
    double cut = R + c;
    double mass = g.mass_on(cut, g.hi());
    double mom = g.moment_on(cut, g.hi());
    return mom - (c + R) * mass;
}

double agent_win_prob(const Distribution& g, double R, double c) {
    SingleMechanism m = optimal_mechanism(g, R, c);
    if (m.kind == MechanismKind::AllocateAlways) return 1.0;
    return 1.0 - g.cdf_left(R + c);
}

Outcome allocate(const SingleMechanism& m, double s) {
    if (m.kind == MechanismKind::AllocateAlways)
        return {true, false, s - m.reserve};
    if (s >= m.cutoff)
        return {true, true, s - m.check_cost - m.reserve};
    return {false, false, 0.0};
}

bool ic_check(const DirectMechanism& dm, double tol) {
    size_t n = dm.grid.size();
    if (dm.p.size() != n || dm.q.size() != n)
        throw std::invalid_argument("ic_check: ragged p/q lengths");
    double max_pq = 0.0;  // max over s' of p(s') - q(s')
    for (size_t j = 0; j < n; ++j) {
        if (dm.q[j] < -tol || dm.q[j] > dm.p[j] + tol || dm.p[j] > 1.0 + tol) return false;
        max_pq = std::max(max_pq, dm.p[j] - dm.q[j]);
    }
    for (size_t k = 0; k < n; ++k)
        if (dm.p[k] < max_pq - tol) return false;
    return true;
}

DirectMechanism as_direct(const SingleMechanism& m, const std::vector<double>& grid) {
    DirectMechanism dm;
    dm.grid = grid;
    dm.p.resize(grid.size());
    dm.q.resize(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        Outcome o = allocate(m, grid[i]);
        dm.p[i] = o.assigned ? 1.0 : 0.0;
        dm.q[i] = o.checked ? 1.0 : 0.0;
    }
    return dm;
}

}  // namespace cva
