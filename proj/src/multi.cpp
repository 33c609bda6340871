#include "cva/multi.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "cva/info_design.hpp"
#include "cva/step_cdf.hpp"
#include "cva/threshold.hpp"

namespace cva {

namespace {

constexpr double kTieTol = 1e-12;

std::vector<StepCdf> net_value_cdfs(const Scenario& sc, const std::vector<Distribution>& profile) {
    std::vector<StepCdf> cdfs;
    cdfs.reserve(profile.size());
    for (size_t i = 0; i < profile.size(); ++i)
        cdfs.push_back(StepCdf::from_distribution(profile[i], -sc.agents[i].c));
    return cdfs;
}

void check_profile(const Scenario& sc, const std::vector<Distribution>& profile) {
    if (profile.size() != sc.agents.size())
        throw std::invalid_argument("profile size does not match scenario");
    for (size_t i = 0; i < profile.size(); ++i)
        if (!is_mpc(profile[i], sc.agents[i].prior))
            throw std::invalid_argument("profile component is not an MPC of its prior");
}

// Candidates for the favored slot: agents attaining max_i (s_i* - c_i),
// provided that max reaches R.
std::vector<int> favored_candidates(const Scenario& sc, const std::vector<Distribution>& profile,
                                    double* v_star_out) {
    std::vector<double> vals(profile.size());
    for (size_t i = 0; i < profile.size(); ++i)
        vals[i] = solve_threshold(profile[i], sc.agents[i].c).s_star - sc.agents[i].c;
    double best = *std::max_element(vals.begin(), vals.end());
    std::vector<int> cand;
    if (best >= sc.R) {
        for (size_t i = 0; i < vals.size(); ++i)
            if (vals[i] >= best - kTieTol) cand.push_back(static_cast<int>(i) + 1);
        *v_star_out = best;
    } else {
        *v_star_out = sc.R;
    }
    return cand;
}

// \int_{[a, inf)} phi(m) dH(m) where H is the product of the given CDFs.
double stieltjes_product(const std::vector<const StepCdf*>& set, double a,
                         const std::function<double(double)>& phi_at,
                         const std::function<Poly(double, double)>& phi_poly) {
    std::vector<StepCdf> dummy;
    std::vector<double> grid{a};
    for (const StepCdf* c : set)
        for (double x : c->breakpoints()) grid.push_back(x);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    double total = 0.0;
    for (double x0 : grid) {
        if (x0 < a) continue;
        double right = 1.0, left = 1.0;
        for (const StepCdf* c : set) {
            right *= c->eval(x0);
            left *= c->eval_left(x0);
        }
        if (right > left) total += phi_at(x0) * (right - left);
    }
    for (size_t j = 0; j + 1 < grid.size(); ++j) {
        double l = grid[j], r = grid[j + 1];
        if (l < a) continue;
        Poly H = Poly::constant(1.0);
        for (const StepCdf* c : set) H = H * c->poly_on(l, r);
        Poly integrand = phi_poly(l, r) * H.derivative();
        total += integrand.integral(l, r);
    }
    return total;
}

// Win probabilities for one fixed favored index (0 = principal).
std::vector<double> win_probs_fixed(const Scenario& sc, const std::vector<StepCdf>& cdfs,
                                    int favored, double v_star, TieRule tie) {
    size_t I = cdfs.size();
    std::vector<double> w(I + 1, 0.0);
    int f = favored - 1;  // -1 when the principal is favored

    double all_others_below = 1.0;  // P(X_j < v* for all j != f), or all j when f = -1
    for (size_t k = 0; k < I; ++k)
        if (static_cast<int>(k) != f) all_others_below *= cdfs[k].eval_left(v_star);
    if (f < 0)
        w[0] = all_others_below;
    else
        w[favored] += all_others_below;

    std::vector<double> grid{v_star};
    for (const StepCdf& c : cdfs)
        for (double x : c.breakpoints()) grid.push_back(x);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    // Continuous part of each X_i: ties have probability zero there.
    for (size_t j = 0; j + 1 < grid.size(); ++j) {
        double l = grid[j], r = grid[j + 1];
        if (l < v_star) continue;
        for (size_t i = 0; i < I; ++i) {
            Poly di = cdfs[i].poly_on(l, r).derivative();
            if (di.is_zero()) continue;
            Poly others = Poly::constant(1.0);
            for (size_t k = 0; k < I; ++k)
                if (k != i) others = others * cdfs[k].poly_on(l, r);
            if (static_cast<int>(i) == f) others = others - Poly::constant(all_others_below);
            w[i + 1] += (others * di).integral(l, r);
        }
    }

    // Atoms: resolve ties by the configured rule.
    for (double x0 : grid) {
        if (x0 < v_star) continue;
        for (size_t i = 0; i < I; ++i) {
            double mi = cdfs[i].jump_at(x0);
            if (mi <= 0.0) continue;
            if (tie == TieRule::LowestIndex) {
                double base = 1.0;
                for (size_t k = 0; k < I; ++k) {
                    if (k == i) continue;
                    base *= (k < i) ? cdfs[k].eval_left(x0) : cdfs[k].eval(x0);
                }
                if (static_cast<int>(i) == f) base -= all_others_below;
                w[i + 1] += mi * base;
            } else {
                // Distribution of the number of rivals tied exactly at x0,
                // with everyone else strictly below.
                std::vector<double> prob{1.0};
                for (size_t k = 0; k < I; ++k) {
                    if (k == i) continue;
                    double lk = cdfs[k].eval_left(x0), mk = cdfs[k].jump_at(x0);
                    std::vector<double> nxt(prob.size() + 1, 0.0);
                    for (size_t t = 0; t < prob.size(); ++t) {
                        nxt[t] += prob[t] * lk;
                        nxt[t + 1] += prob[t] * mk;
                    }
                    prob = std::move(nxt);
                }
                double share = 0.0;
                for (size_t t = 0; t < prob.size(); ++t) share += prob[t] / (t + 1.0);
                if (static_cast<int>(i) == f) share -= all_others_below;
                w[i + 1] += mi * share;
            }
        }
    }
    return w;
}

}  // namespace

bool Scenario::assumptions_hold() const {
    for (const AgentSpec& a : agents)
        if (!(a.prior.lo() < R && R < a.prior.hi() && R + a.c <= a.prior.hi())) return false;
    return true;
}

FavoredAgentMechanism favored_agent_mechanism(const Scenario& sc,
                                              const std::vector<Distribution>& profile,
                                              TieRule tie) {
    check_profile(sc, profile);
    double v_star;
    std::vector<int> cand = favored_candidates(sc, profile, &v_star);
    int favored = cand.empty() ? 0 : cand.front();
    return {favored, v_star, tie};
}

FamResult run_fam(const FavoredAgentMechanism& m, const Scenario& sc,
                  const std::vector<double>& s_profile, std::mt19937_64* rng) {
    size_t I = sc.agents.size();
    if (s_profile.size() != I) throw std::invalid_argument("run_fam: profile length mismatch");
    std::vector<double> x(I);
    for (size_t i = 0; i < I; ++i) x[i] = s_profile[i] - sc.agents[i].c;

    int f = m.favored - 1;
    bool challenged = false;
    for (size_t j = 0; j < I; ++j)
        if (static_cast<int>(j) != f && x[j] >= m.v_star) challenged = true;

    FamResult res;
    res.outcomes.assign(I, Outcome{false, false, 0.0});
    if (!challenged) {
        if (f < 0) {
            res.winner = 0;
            res.checked = false;
            res.principal_value = sc.R;
            return res;
        }
        res.winner = m.favored;
        res.checked = false;
        res.principal_value = s_profile[f];
        res.outcomes[f] = {true, false, s_profile[f]};
        return res;
    }
    double best = *std::max_element(x.begin(), x.end());
    std::vector<size_t> tied;
    for (size_t i = 0; i < I; ++i)
        if (x[i] == best) tied.push_back(i);
    size_t win;
    if (tied.size() == 1 || m.tie_rule == TieRule::LowestIndex) {
        win = tied.front();
    } else {
        if (!rng) throw std::invalid_argument("run_fam: EqualSplit tie needs a generator");
        double u = static_cast<double>((*rng)() >> 11) * 0x1.0p-53;
        win = tied[std::min(tied.size() - 1, static_cast<size_t>(u * tied.size()))];
    }
    res.winner = static_cast<int>(win) + 1;
    res.checked = true;
    res.principal_value = x[win];
    res.outcomes[win] = {true, true, x[win]};
    return res;
}

double principal_payoff_multi(const Scenario& sc, const std::vector<Distribution>& profile) {
    FavoredAgentMechanism fam = favored_agent_mechanism(sc, profile, TieRule::LowestIndex);
    std::vector<StepCdf> cdfs = net_value_cdfs(sc, profile);

    if (fam.favored == 0) {
        std::vector<const StepCdf*> all;
        for (const StepCdf& c : cdfs) all.push_back(&c);
        double retain = 1.0;
        for (const StepCdf& c : cdfs) retain *= c.eval_left(sc.R);
        double tail = stieltjes_product(
            all, sc.R, [](double x) { return x; },
            [](double, double) { return Poly({0.0, 1.0}); });
        return sc.R * retain + tail;
    }

    size_t f = static_cast<size_t>(fam.favored - 1);
    std::vector<const StepCdf*> others;
    for (size_t k = 0; k < cdfs.size(); ++k)
        if (k != f) others.push_back(&cdfs[k]);
    double below = 1.0;
    for (const StepCdf* c : others) below *= c->eval_left(fam.v_star);
    double term1 = profile[f].mean() * below;
    const StepCdf& cf = cdfs[f];
    double term2 = stieltjes_product(
        others, fam.v_star,
        [&](double x) { return cf.mean() + cf.integral(x); },
        [&](double l, double r) { return cf.emax_poly_on(l, r); });
    return term1 + term2;
}

std::vector<double> win_probabilities(const Scenario& sc, const std::vector<Distribution>& profile,
                                      TieRule tie) {
    check_profile(sc, profile);
    std::vector<StepCdf> cdfs = net_value_cdfs(sc, profile);
    double v_star;
    std::vector<int> cand = favored_candidates(sc, profile, &v_star);
    if (cand.empty()) return win_probs_fixed(sc, cdfs, 0, v_star, tie);
    if (tie == TieRule::LowestIndex || cand.size() == 1)
        return win_probs_fixed(sc, cdfs, cand.front(), v_star, tie);
    // EqualSplit: the favored slot itself is assigned uniformly among the
    // tied candidates.
    std::vector<double> avg(sc.agents.size() + 1, 0.0);
    for (int fav : cand) {
        std::vector<double> w = win_probs_fixed(sc, cdfs, fav, v_star, tie);
        for (size_t k = 0; k < w.size(); ++k) avg[k] += w[k] / cand.size();
    }
    return avg;
}

std::vector<Distribution> aggregate_agent_optimal(const Scenario& sc) {
    if (sc.agents.empty()) throw std::invalid_argument("aggregate_agent_optimal: no agents");
    double c = sc.agents.front().c;
    for (const AgentSpec& a : sc.agents)
        if (a.c != c) throw std::invalid_argument("aggregate_agent_optimal: heterogeneous c");
    bool any_high = false;
    for (const AgentSpec& a : sc.agents)
        if (a.prior.mean() >= sc.R) any_high = true;
    std::vector<Distribution> out;
    for (const AgentSpec& a : sc.agents) {
        if (any_high)
            out.push_back(Distribution::point_mass(a.prior.mean()));
        else
            out.push_back(agent_optimal_info(a.prior, sc.R, c));
    }
    return out;
}

bool is_aggregate_agent_optimal(const Scenario& sc, const std::vector<Distribution>& profile) {
    double c = sc.agents.front().c;
    for (const AgentSpec& a : sc.agents)
        if (a.c != c) throw std::invalid_argument("is_aggregate_agent_optimal: heterogeneous c");
    check_profile(sc, profile);
    bool any_high = false;
    for (const AgentSpec& a : sc.agents)
        if (a.prior.mean() >= sc.R) any_high = true;
    if (any_high) {
        for (size_t i = 0; i < profile.size(); ++i)
            if (solve_threshold(profile[i], c).s_star - c >= sc.R - 1e-9) return true;
        return false;
    }
    for (size_t i = 0; i < profile.size(); ++i)
        if (!is_agent_optimal(profile[i], sc.agents[i].prior, sc.R, c)) return false;
    return true;
}

double y_m(const Scenario& sc) {
    double v = sc.R;
    for (const AgentSpec& a : sc.agents) v = std::max(v, a.prior.mean());
    return v;
}

double y_m_net(const Scenario& sc) { return y_m(sc) - sc.R; }

int robust_mechanism_multi(const std::vector<double>& means, double R) {
    int best = 0;
    double val = R;
    for (size_t i = 0; i < means.size(); ++i)
        if (means[i] > val) {
            val = means[i];
            best = static_cast<int>(i) + 1;
        }
    return best;
}

std::vector<Distribution> principal_optimal_info_multi(const Scenario& sc) {
    std::vector<Distribution> out;
    for (const AgentSpec& a : sc.agents) out.push_back(a.prior);
    return out;
}

double acquisition_deviation_gain(const Scenario& sc, const std::vector<Distribution>& profile,
                                  int i, const Distribution& g_dev, TieRule tie) {
    if (i < 0 || static_cast<size_t>(i) >= profile.size())
        throw std::invalid_argument("acquisition_deviation_gain: bad agent index");
    if (!is_mpc(g_dev, sc.agents[i].prior))
        throw std::invalid_argument("acquisition_deviation_gain: deviation not an MPC of prior");
    std::vector<double> base = win_probabilities(sc, profile, tie);
    std::vector<Distribution> dev(profile);
    dev[static_cast<size_t>(i)] = g_dev;
    std::vector<double> after = win_probabilities(sc, dev, tie);
    return after[static_cast<size_t>(i) + 1] - base[static_cast<size_t>(i) + 1];
}

}  // namespace cva
