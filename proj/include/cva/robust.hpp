#pragma once

#include "cva/distribution.hpp"
#include "cva/mechanism.hpp"

namespace cva {

// Detail-free mechanism: depends on the signal distribution only through its
// mean.  Allocate unchecked when mu >= R, otherwise check above R + c.
struct RobustMechanism {
    double mu;
    double R;
    double c;
    MechanismKind kind() const {
        return mu >= R ? MechanismKind::AllocateAlways : MechanismKind::CheckAboveCutoff;
    }
    double cutoff() const { return R + c; }
};

RobustMechanism robust_mechanism(double mu, double R, double c);

// Value of the robust mechanism under a concrete distribution F.
double robust_payoff(const Distribution& f, double R, double c);

// Optimal payoff under F minus the robust payoff; nonzero only on the window
// t* - c < R <= mu.
double payoff_gap(const Distribution& f, double R, double c);

}  // namespace cva
