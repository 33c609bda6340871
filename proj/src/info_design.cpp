#include "cva/info_design.hpp"

#include <cmath>
#include <stdexcept>

#include "cva/mechanism.hpp"
#include "cva/threshold.hpp"

namespace cva {

namespace {

constexpr double kTol = 1e-9;

double atom_mass_near(const Distribution& g, double x, double tol) {
    double m = 0.0;
    for (const Atom& a : g.atoms())
        if (std::abs(a.loc - x) <= tol) m += a.mass;
    return m;
}

}  // namespace

double s_dagger(const Distribution& f, double R, double c) {
    if (f.mean() >= R) throw std::invalid_argument("s_dagger: mean(F) >= R");
    if (R + c > f.hi()) throw std::invalid_argument("s_dagger: R + c above support");
    if (R + c >= f.hi() - 1e-12) throw std::invalid_argument("s_dagger: zero upper mass");
    // x -> E[t | t >= x] is nondecreasing; bracket the root by bisection.
    double lo = f.lo(), hi = f.hi();
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        double m = 0.5 * (lo + hi);
        double h;
        if (f.mass_on(m, f.hi()) <= 1e-12)
            h = 1.0;
        else
            h = f.conditional_mean(m, f.hi()) - (R + c);
        if (h < 0.0)
            lo = m;
        else
            hi = m;
    }
    return 0.5 * (lo + hi);
}

Distribution agent_optimal_info(const Distribution& f, double R, double c) {
    double mu = f.mean();
    if (mu >= R) return Distribution::point_mass(mu);
    double sd = s_dagger(f, R, c);
    double pooled = 1.0 - f.cdf_left(sd);

    std::vector<Piece> pieces;
    for (const Piece& p : f.pieces())
        if (p.a < sd) pieces.push_back({p.a, std::min(p.b, sd), p.density});
    std::vector<Atom> atoms;
    for (const Atom& a : f.atoms())
        if (a.loc < sd) atoms.push_back(a);
    atoms.push_back({R + c, pooled});
    return Distribution(f.lo(), f.hi(), std::move(atoms), std::move(pieces));
}

bool is_agent_optimal(const Distribution& g, const Distribution& f, double R, double c) {
    if (!is_mpc(g, f)) throw std::invalid_argument("is_agent_optimal: G not an MPC of F");
    double mu = f.mean();
    if (mu >= R) return solve_threshold(g, c).s_star - c >= R - kTol;
    double sd = s_dagger(f, R, c);
    double target = 1.0 - f.cdf(sd);
    double aw = atom_mass_near(g, R + c, kTol);
    double above = (R + c + kTol < g.hi()) ? g.mass_on(R + c + kTol, g.hi()) : 0.0;
    double below = 1.0 - aw - above;
    return std::abs(aw - target) <= kTol && std::abs(below - f.cdf(sd)) <= kTol;
}

Distribution principal_worst_info(const Distribution& f) {
    return Distribution::point_mass(f.mean());
}

bool is_principal_worst(const Distribution& g, const Distribution& f, double R, double c) {
    if (!is_mpc(g, f)) throw std::invalid_argument("is_principal_worst: G not an MPC of F");
    double mu = f.mean();
    if (mu >= R) return solve_threshold(g, c).s_star - c >= R - kTol;
    return g.cdf(R + c + kTol) >= 1.0 - kTol;
}

Distribution principal_optimal_info(const Distribution& f) { return f; }

bool is_principal_optimal(const Distribution& g, const Distribution& f, double R, double c) {
    if (!is_mpc(g, f)) throw std::invalid_argument("is_principal_optimal: G not an MPC of F");
    double t_star = solve_threshold(f, c).s_star;
    if (t_star - c >= R - kTol) return true;  // every MPC attains mu - R
    double cut = R + c;
    if (g.mass_on(cut, g.hi()) <= 1e-12) return false;  // empty upper tail
    if (std::abs(g.cdf_left(cut) - f.cdf(cut)) > kTol) return false;
    if (f.mass_on(cut, f.hi()) <= 1e-12) return false;
    return std::abs(g.conditional_mean(cut, g.hi()) - f.conditional_mean(cut, f.hi())) <= kTol;
}

DesignReport design_report(const Distribution& g, const Distribution& f, double R, double c) {
    return DesignReport{
        g,
        solve_threshold(g, c).s_star,
        principal_payoff(g, R, c),
        agent_win_prob(g, R, c),
        is_agent_optimal(g, f, R, c),
        is_principal_worst(g, f, R, c),
        is_principal_optimal(g, f, R, c),
    };
}

}  // namespace cva
