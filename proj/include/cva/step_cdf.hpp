#pragma once

#include <vector>

#include "cva/distribution.hpp"

namespace cva {

// Right-continuous piecewise-polynomial CDF on the real line; 0 below the
// first breakpoint, 1 at and above the last.  Used for the net-value variables
// X_i = s_i - c_i, where products of CDFs stay piecewise-polynomial.
class StepCdf {
public:
    // CDF of s + shift for s ~ d.
    static StepCdf from_distribution(const Distribution& d, double shift);

    const std::vector<double>& breakpoints() const { return bp_; }
    double mean() const { return mean_; }

    double eval(double x) const;
    double eval_left(double x) const;
    double jump_at(double x) const { return eval(x) - eval_left(x); }

    // \int_{-inf}^{x} cdf; slope 1 above the last breakpoint.
    double integral(double x) const;

    // CDF as one polynomial on (x0, x1); requires no interior breakpoint.
    Poly poly_on(double x0, double x1) const;
    // Polynomial equal to E[max(X, m)] for m in (x0, x1).
    Poly emax_poly_on(double x0, double x1) const;

private:
    std::vector<double> bp_;
    std::vector<Poly> seg_;  // seg_[j] valid on [bp_[j], bp_[j+1])
    double mean_ = 0.0;
};

// Sorted union of all breakpoints plus any extras.
std::vector<double> merged_grid(const std::vector<StepCdf>& cdfs,
                                const std::vector<double>& extra);

}  // namespace cva
