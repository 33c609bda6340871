#include "cva/robust.hpp"

#include <stdexcept>

namespace cva {

RobustMechanism robust_mechanism(double mu, double R, double c) {
    if (c < 0.0) throw std::invalid_argument("robust_mechanism: c < 0");
    return {mu, R, c};
}

double robust_payoff(const Distribution& f, double R, double c) {
    double mu = f.mean();
    if (mu >= R) return mu - R;
    double cut = R + c;
    return f.moment_on(cut, f.hi()) - (c + R) * f.mass_on(cut, f.hi());
}

double payoff_gap(const Distribution& f, double R, double c) {
    return principal_payoff(f, R, c) - robust_payoff(f, R, c);
}

}  // namespace cva
