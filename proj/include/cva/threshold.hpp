#pragma once

#include "cva/distribution.hpp"

namespace cva {

struct ThresholdResult {
    double s_star;
    double residual;  // |integral_cdf(s_star) - c|
};

// Unique s* with \int_{lo}^{s*} G(s) ds = c; equivalently
// E_G(max{s, s*}) - c = E_G(s).  For c = 0 returns min supp(G).
// s* may exceed the support maximum (integral_cdf extends with slope 1).
ThresholdResult solve_threshold(const Distribution& g, double c);

}  // namespace cva
