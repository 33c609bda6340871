#include "cva/threshold.hpp"

#include <cmath>
#include <stdexcept>

namespace cva {

ThresholdResult solve_threshold(const Distribution& g, double c) {
    if (c < 0.0) throw std::invalid_argument("solve_threshold: c < 0");
    if (c == 0.0) return {g.min_support(), 0.0};

    double top = g.integral_cdf(g.hi());
    if (c >= top) {
        // CDF is 1 above hi, so the remainder accrues at slope 1.
        double s = g.hi() + (c - top);
        return {s, std::abs(g.integral_cdf(s) - c)};
    }
    // integral_cdf is convex nondecreasing; bisect between support bounds.
    double lo = g.min_support(), hi = g.hi();
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
        double m = 0.5 * (lo + hi);
        if (g.integral_cdf(m) < c)
            lo = m;
        else
            hi = m;
    }
    double s = 0.5 * (lo + hi);
    return {s, std::abs(g.integral_cdf(s) - c)};
}

}  // namespace cva
