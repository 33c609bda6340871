#pragma once

#include <cstdint>

#include "cva/multi.hpp"

namespace cva {

struct McResult {
    std::vector<double> win_prob;  // index 0 = principal retention
    std::vector<double> win_se;
    double payoff_mean;  // gross principal payoff
    double payoff_se;
    std::uint64_t samples;
};

// Seeded Monte Carlo of the favored-agent mechanism.  Samples are drawn in
// fixed-size chunks, each with its own generator derived from (seed, chunk),
// and chunk partials are reduced in chunk order, so the result is bit-identical
// for a fixed seed regardless of the worker count.
McResult simulate_fam(const Scenario& sc, const std::vector<Distribution>& profile,
                      TieRule tie, std::uint64_t n_samples, std::uint64_t seed,
                      int n_threads = 0);

// Single-threaded reference kernel; must agree bit-for-bit with simulate_fam.
McResult simulate_fam_serial(const Scenario& sc, const std::vector<Distribution>& profile,
                             TieRule tie, std::uint64_t n_samples, std::uint64_t seed);

}  // namespace cva
